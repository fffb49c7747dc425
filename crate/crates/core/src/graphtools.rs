//! Simple graphs: BFS invariants, orbits under a permutation action and the
//! automorphism group by partition refinement with individualization.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::incidence::Dist;
use crate::permgroup::{orbits_of, Perm, PermGroup};

/// Largest graph accepted by [`aut_order`].
pub const AUT_VERTEX_CAP: usize = 400;

const UNSEEN: u32 = u32::MAX;

/// Undirected graph on `0..n` without loops or multiple edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<u32>>,
}

/// Per-component diameters; `max` is the largest of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diameter {
    pub max: u32,
    pub per_component: Vec<u32>,
    pub connected: bool,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (a, b) in edges {
            if a == b || a as usize >= n || b as usize >= n {
                return Err(Error::InvalidGraph(format!("bad edge ({a}, {b}) on {n} vertices")));
            }
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        for l in &mut adj {
            l.sort_unstable();
            let before = l.len();
            l.dedup();
            if l.len() != before {
                return Err(Error::InvalidGraph("repeated edge".into()));
            }
        }
        Ok(Self { adj })
    }

    pub fn empty(n: usize) -> Self {
        Self { adj: vec![Vec::new(); n] }
    }

    pub fn cycle(n: usize) -> Self {
        Self::new(n, (0..n as u32).map(|i| (i, (i + 1) % n as u32))).expect("n >= 3")
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n as u32).map(|i| (i - 1, i))).unwrap()
    }

    pub fn complete(n: usize) -> Self {
        let n32 = n as u32;
        Self::new(n, (0..n32).flat_map(|a| (a + 1..n32).map(move |b| (a, b)))).unwrap()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        self.adj[a as usize].binary_search(&b).is_ok()
    }

    /// Edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        (0..self.adj.len() as u32)
            .flat_map(|a| self.adj[a as usize].iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
            .collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// The common degree, if every vertex has the same one.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first()?.len();
        self.adj.iter().all(|l| l.len() == d).then_some(d)
    }

    pub fn distances_from(&self, src: u32) -> Vec<u32> {
        let mut dist = vec![UNSEEN; self.adj.len()];
        let mut queue = VecDeque::from([src]);
        dist[src as usize] = 0;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u as usize] {
                if dist[v as usize] == UNSEEN {
                    dist[v as usize] = dist[u as usize] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.adj.len()];
        let mut out = Vec::new();
        for s in 0..self.adj.len() as u32 {
            if seen[s as usize] {
                continue;
            }
            seen[s as usize] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                for &v in &self.adj[comp[i] as usize] {
                    if !std::mem::replace(&mut seen[v as usize], true) {
                        comp.push(v);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn girth(&self) -> Dist {
        let n = self.adj.len();
        let mut best = UNSEEN;
        let mut dist = vec![UNSEEN; n];
        let mut parent = vec![UNSEEN; n];
        let mut queue = Vec::with_capacity(n);
        for s in 0..n as u32 {
            queue.clear();
            queue.push(s);
            dist[s as usize] = 0;
            parent[s as usize] = UNSEEN;
            let mut head = 0;
            while head < queue.len() {
                let u = queue[head];
                head += 1;
                let du = dist[u as usize];
                if 2 * du + 1 >= best {
                    break;
                }
                for &v in &self.adj[u as usize] {
                    if dist[v as usize] == UNSEEN {
                        dist[v as usize] = du + 1;
                        parent[v as usize] = u;
                        queue.push(v);
                    } else if parent[u as usize] != v {
                        best = best.min(du + dist[v as usize] + 1);
                    }
                }
            }
            for &u in &queue {
                dist[u as usize] = UNSEEN;
            }
        }
        if best == UNSEEN {
            Dist::Infinite
        } else {
            Dist::Finite(best)
        }
    }

    pub fn diameter(&self) -> Diameter {
        let comps = self.components();
        let per_component: Vec<u32> = comps
            .iter()
            .map(|c| c.iter().map(|&v| *self.distances_from(v).iter().filter(|&&d| d != UNSEEN).max().unwrap()).max().unwrap())
            .collect();
        Diameter {
            max: per_component.iter().copied().max().unwrap_or(0),
            connected: comps.len() <= 1,
            per_component,
        }
    }

    /// The graph with vertex `v` renamed `p(v)`.
    pub fn relabel(&self, p: &Perm) -> Result<SimpleGraph> {
        if p.degree() != self.adj.len() {
            return Err(Error::DegreeMismatch(self.adj.len(), p.degree()));
        }
        SimpleGraph::new(self.adj.len(), self.edges().into_iter().map(|(a, b)| (p.apply(a), p.apply(b))))
    }

    pub fn is_automorphism(&self, p: &Perm) -> bool {
        p.degree() == self.adj.len() && self.edges().iter().all(|&(a, b)| self.has_edge(p.apply(a), p.apply(b)))
    }

    pub fn has_perfect_matching(&self) -> bool {
        let mut g = petgraph::graph::UnGraph::<(), ()>::with_capacity(self.adj.len(), self.edge_count());
        let nodes: Vec<_> = (0..self.adj.len()).map(|_| g.add_node(())).collect();
        for (a, b) in self.edges() {
            g.add_edge(nodes[a as usize], nodes[b as usize], ());
        }
        petgraph::algo::maximum_matching(&g).is_perfect()
    }
}

fn check_automorphisms(g: &SimpleGraph, gens: &[Perm]) -> Result<()> {
    if gens.iter().all(|p| g.is_automorphism(p)) {
        Ok(())
    } else {
        Err(Error::NotAnAutomorphism)
    }
}

/// Vertex orbits of the group generated by `gens`.
pub fn orbits_under(g: &SimpleGraph, gens: &[Perm]) -> Result<Vec<Vec<u32>>> {
    check_automorphisms(g, gens)?;
    Ok(orbits_of(gens, g.vertex_count()))
}

/// Orbits on arcs (ordered pairs of adjacent vertices).
pub fn arc_orbits_under(g: &SimpleGraph, gens: &[Perm]) -> Result<Vec<Vec<(u32, u32)>>> {
    check_automorphisms(g, gens)?;
    let arcs: Vec<(u32, u32)> = (0..g.vertex_count() as u32)
        .flat_map(|a| g.neighbors(a).iter().map(move |&b| (a, b)))
        .collect();
    let index: HashMap<(u32, u32), u32> = arcs.iter().enumerate().map(|(i, &a)| (a, i as u32)).collect();
    let arc_perms: Vec<Perm> = gens
        .iter()
        .map(|p| Perm::new(arcs.iter().map(|&(a, b)| index[&(p.apply(a), p.apply(b))]).collect()).unwrap())
        .collect();
    Ok(orbits_of(&arc_perms, arcs.len())
        .into_iter()
        .map(|o| o.into_iter().map(|i| arcs[i as usize]).collect())
        .collect())
}

/// Ordered partition of the vertices, stored as one array split into
/// contiguous cells. A cell is named by its start position.
#[derive(Clone)]
struct Partition {
    order: Vec<u32>,
    pos: Vec<u32>,
    cell_of: Vec<u32>,
    end: Vec<u32>,
    cells: usize,
}

fn mix(h: u64, x: u64) -> u64 {
    (h ^ x).wrapping_mul(0x0000_0100_0000_01b3)
}

impl Partition {
    fn unit(n: usize) -> Self {
        let mut end = vec![0; n];
        if n > 0 {
            end[0] = n as u32;
        }
        Self {
            order: (0..n as u32).collect(),
            pos: (0..n as u32).collect(),
            cell_of: vec![0; n],
            end,
            cells: usize::from(n > 0),
        }
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.order.len()
    }

    fn cell(&self, s: u32) -> &[u32] {
        &self.order[s as usize..self.end[s as usize] as usize]
    }

    /// First cell of smallest size above one.
    fn target(&self) -> Option<u32> {
        let mut best: Option<(u32, u32)> = None;
        let mut s = 0u32;
        while (s as usize) < self.order.len() {
            let size = self.end[s as usize] - s;
            if size > 1 && best.map_or(true, |(_, b)| size < b) {
                best = Some((s, size));
            }
            s = self.end[s as usize];
        }
        best.map(|(s, _)| s)
    }

    /// Makes `v` a singleton at the front of its cell, then refines.
    fn individualize(&mut self, g: &SimpleGraph, v: u32) -> u64 {
        let s = self.cell_of[v as usize];
        let e = self.end[s as usize];
        let p = self.pos[v as usize];
        let u = self.order[s as usize];
        self.order.swap(s as usize, p as usize);
        self.pos[u as usize] = p;
        self.pos[v as usize] = s;
        self.end[s as usize] = s + 1;
        self.end[s as usize + 1] = e;
        for i in s + 1..e {
            self.cell_of[self.order[i as usize] as usize] = s + 1;
        }
        self.cells += 1;
        self.refine(g, vec![s])
    }

    /// Splits cells by neighbor counts until equitable. Returns a hash of
    /// the splitting history, which is invariant under relabeling.
    fn refine(&mut self, g: &SimpleGraph, initial: Vec<u32>) -> u64 {
        let n = self.order.len();
        let mut in_queue = vec![false; n];
        let mut queue = VecDeque::new();
        for s in initial {
            in_queue[s as usize] = true;
            queue.push_back(s);
        }
        let mut cnt = vec![0u32; n];
        let mut touched: Vec<u32> = Vec::new();
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        while let Some(w) = queue.pop_front() {
            in_queue[w as usize] = false;
            touched.clear();
            for i in w..self.end[w as usize] {
                let v = self.order[i as usize];
                for &u in g.neighbors(v) {
                    if cnt[u as usize] == 0 {
                        touched.push(u);
                    }
                    cnt[u as usize] += 1;
                }
            }
            let mut starts: Vec<u32> = touched.iter().map(|&u| self.cell_of[u as usize]).collect();
            starts.sort_unstable();
            starts.dedup();
            h = mix(h, w as u64);
            for s in starts {
                let e = self.end[s as usize];
                if e - s == 1 {
                    continue;
                }
                let mut seg: Vec<(u32, u32)> =
                    self.order[s as usize..e as usize].iter().map(|&v| (cnt[v as usize], v)).collect();
                seg.sort_by_key(|&(c, _)| c);
                if seg[0].0 == seg[seg.len() - 1].0 {
                    continue;
                }
                let mut frag = s;
                for (i, &(c, v)) in seg.iter().enumerate() {
                    let p = s + i as u32;
                    self.order[p as usize] = v;
                    self.pos[v as usize] = p;
                    if i > 0 && c != seg[i - 1].0 {
                        self.end[frag as usize] = p;
                        h = mix(mix(mix(h, frag as u64), seg[i - 1].0 as u64), (p - frag) as u64);
                        frag = p;
                        self.cells += 1;
                    }
                    self.cell_of[v as usize] = frag;
                }
                self.end[frag as usize] = e;
                h = mix(mix(mix(h, frag as u64), seg[seg.len() - 1].0 as u64), (e - frag) as u64);
                let mut f = s;
                while f < e {
                    if !in_queue[f as usize] {
                        in_queue[f as usize] = true;
                        queue.push_back(f);
                    }
                    f = self.end[f as usize];
                }
            }
            for &u in &touched {
                cnt[u as usize] = 0;
            }
        }
        mix(h, self.cells as u64)
    }
}

/// Automorphism group order and a generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutReport {
    pub order: BigUint,
    pub generators: Vec<Perm>,
}

struct Node {
    part: Partition,
    target: u32,
    base: u32,
    /// Trace of the refinement after individualizing `base`.
    child_trace: u64,
}

struct Searcher<'a> {
    g: &'a SimpleGraph,
    path: Vec<Node>,
    leaf: Vec<u32>,
}

impl Searcher<'_> {
    /// Looks for an automorphism in the subtree below `part` at depth `d`,
    /// whose refinement trace matched the first path.
    fn descend(&self, part: &Partition, d: usize) -> Option<Perm> {
        if part.is_discrete() {
            if d != self.path.len() {
                return None;
            }
            let mut img = vec![0u32; part.order.len()];
            for (i, &v) in self.leaf.iter().enumerate() {
                img[v as usize] = part.order[i];
            }
            let p = Perm::new(img).ok()?;
            return self.g.is_automorphism(&p).then_some(p);
        }
        let node = self.path.get(d)?;
        let t = part.target()?;
        if t != node.target || part.end[t as usize] != node.part.end[t as usize] {
            return None;
        }
        for &u in part.cell(t) {
            let mut next = part.clone();
            if next.individualize(self.g, u) == node.child_trace {
                if let Some(p) = self.descend(&next, d + 1) {
                    return Some(p);
                }
            }
        }
        None
    }
}

struct UnionFind(Vec<u32>, Vec<u32>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n as u32).collect(), vec![1; n])
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.0[x as usize] != x {
            let p = self.0[x as usize];
            self.0[x as usize] = self.0[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            let (big, small) = if self.1[a as usize] >= self.1[b as usize] { (a, b) } else { (b, a) };
            self.0[small as usize] = big;
            self.1[big as usize] += self.1[small as usize];
        }
    }
}

/// Order of the automorphism group, computed as the product of base-point
/// orbit lengths along the first path of the search tree. The generators
/// are re-checked and the order is confirmed with a stabilizer chain.
pub fn aut_order(g: &SimpleGraph) -> Result<AutReport> {
    let n = g.vertex_count();
    if n > AUT_VERTEX_CAP {
        return Err(Error::GraphTooLarge(n, AUT_VERTEX_CAP));
    }
    let mut part = Partition::unit(n);
    if n > 0 {
        part.refine(g, vec![0]);
    }
    let mut path = Vec::new();
    while let Some(t) = part.target() {
        let base = part.cell(t)[0];
        let mut next = part.clone();
        let child_trace = next.individualize(g, base);
        path.push(Node { part, target: t, base, child_trace });
        part = next;
    }
    let search = Searcher { g, path, leaf: part.order.clone() };
    let mut uf = UnionFind::new(n);
    let mut generators: Vec<Perm> = Vec::new();
    let mut order = BigUint::one();
    for d in (0..search.path.len()).rev() {
        let node = &search.path[d];
        for &w in node.part.cell(node.target) {
            if uf.find(w) == uf.find(node.base) {
                continue;
            }
            let mut next = node.part.clone();
            if next.individualize(g, w) != node.child_trace {
                continue;
            }
            if let Some(p) = search.descend(&next, d + 1) {
                for x in 0..n as u32 {
                    uf.union(x, p.apply(x));
                }
                generators.push(p);
            }
        }
        let root = uf.find(node.base);
        order *= BigUint::from(uf.1[root as usize]);
    }
    check_automorphisms(g, &generators)?;
    let chain = PermGroup::new(n, generators.clone())?;
    if chain.order() != order {
        return Err(Error::PropertyViolation(format!(
            "automorphism search found order {order}, generators give {}",
            chain.order()
        )));
    }
    Ok(AutReport { order, generators })
}
