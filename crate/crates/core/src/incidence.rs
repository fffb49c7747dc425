//! Typed incidence systems: flags, residues, correlations, absolute
//! geometries and the `(d_P, g, d_L)` parameters of rank-2 systems.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphtools::SimpleGraph;

const UNSEEN: u32 = u32::MAX;

/// Elements `0..n`, each with a type in `0..rank`, and a symmetric incidence
/// relation between elements of distinct types. Adjacency is stored in CSR
/// form with sorted neighbor lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceSystem {
    rank: usize,
    types: Vec<u8>,
    offsets: Vec<u32>,
    nbrs: Vec<u32>,
}

impl IncidenceSystem {
    pub fn new(rank: usize, types: Vec<u8>, pairs: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let n = types.len();
        if types.iter().any(|&t| t as usize >= rank) {
            return Err(Error::InvalidCorrelation("type label out of range".into()));
        }
        let mut lists: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (a, b) in pairs {
            let (ua, ub) = (a as usize, b as usize);
            if ua >= n || ub >= n {
                return Err(Error::ModelCorruption(format!("incidence ({a}, {b}) out of range")));
            }
            if types[ua] == types[ub] {
                return Err(Error::ModelCorruption(format!(
                    "incident elements {a} and {b} share type {}",
                    types[ua]
                )));
            }
            lists[ua].push(b);
            lists[ub].push(a);
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut nbrs = Vec::new();
        offsets.push(0);
        for mut l in lists {
            l.sort_unstable();
            l.dedup();
            nbrs.extend_from_slice(&l);
            offsets.push(nbrs.len() as u32);
        }
        Ok(Self { rank, types, offsets, nbrs })
    }

    /// Rank-2 system: points `0..n_points` (type 0) followed by one line
    /// (type 1) per entry of `lines`, incident with the listed points.
    pub fn from_rank2(n_points: usize, lines: &[Vec<u32>]) -> Result<Self> {
        let mut types = vec![0u8; n_points];
        types.extend(std::iter::repeat(1u8).take(lines.len()));
        let pairs = lines.iter().enumerate().flat_map(|(i, pts)| {
            let l = (n_points + i) as u32;
            pts.iter().map(move |&p| (p, l))
        });
        Self::new(2, types, pairs)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    #[inline]
    pub fn type_of(&self, x: u32) -> u8 {
        self.types[x as usize]
    }

    pub fn types(&self) -> &[u8] {
        &self.types
    }

    #[inline]
    pub fn neighbors(&self, x: u32) -> &[u32] {
        let x = x as usize;
        &self.nbrs[self.offsets[x] as usize..self.offsets[x + 1] as usize]
    }

    #[inline]
    pub fn incident(&self, a: u32, b: u32) -> bool {
        self.neighbors(a).binary_search(&b).is_ok()
    }

    pub fn elements_of_type(&self, t: u8) -> impl Iterator<Item = u32> + '_ {
        (0..self.len() as u32).filter(move |&x| self.types[x as usize] == t)
    }

    pub fn count_of_type(&self, t: u8) -> usize {
        self.types.iter().filter(|&&x| x == t).count()
    }

    /// Incidence pairs `(a, b)` with `a < b`, sorted.
    pub fn pairs(&self) -> Vec<(u32, u32)> {
        (0..self.len() as u32)
            .flat_map(|a| self.neighbors(a).iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
            .collect()
    }

    /// BFS distances in the incidence graph; `u32::MAX` marks unreachable.
    pub fn distances_from(&self, src: u32) -> Vec<u32> {
        let mut dist = vec![UNSEEN; self.len()];
        let mut queue = VecDeque::new();
        dist[src as usize] = 0;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            for &v in self.neighbors(u) {
                if dist[v as usize] == UNSEEN {
                    dist[v as usize] = du + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn distance(&self, a: u32, b: u32) -> Dist {
        Dist::from_raw(self.distances_from(a)[b as usize])
    }

    /// Elements incident with every element of `set` (and not in it).
    pub fn common_neighbors(&self, set: &[u32]) -> Vec<u32> {
        let Some((&first, rest)) = set.split_first() else {
            return (0..self.len() as u32).collect();
        };
        let mut common: Vec<u32> = self.neighbors(first).to_vec();
        for &y in rest {
            common.retain(|&z| self.incident(y, z));
        }
        common
    }

    /// Connected components of the incidence graph, each sorted, ordered by
    /// smallest element.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let mut comp = vec![UNSEEN; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() as u32 {
            if comp[s as usize] != UNSEEN {
                continue;
            }
            let id = out.len() as u32;
            let mut members = vec![s];
            comp[s as usize] = id;
            let mut i = 0;
            while i < members.len() {
                let u = members[i];
                for &v in self.neighbors(u) {
                    if comp[v as usize] == UNSEEN {
                        comp[v as usize] = id;
                        members.push(v);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }
}

/// A set of pairwise incident elements, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flag(Vec<u32>);

impl Flag {
    pub fn new(s: &IncidenceSystem, mut elems: Vec<u32>) -> Result<Self> {
        elems.sort_unstable();
        elems.dedup();
        if elems.iter().any(|&x| x as usize >= s.len()) {
            return Err(Error::NotAFlag);
        }
        for (i, &a) in elems.iter().enumerate() {
            for &b in &elems[i + 1..] {
                if !s.incident(a, b) {
                    return Err(Error::NotAFlag);
                }
            }
        }
        Ok(Self(elems))
    }

    pub fn elements(&self) -> &[u32] {
        &self.0
    }

    pub fn type_set(&self, s: &IncidenceSystem) -> Vec<u8> {
        let mut t: Vec<u8> = self.0.iter().map(|&x| s.type_of(x)).collect();
        t.sort_unstable();
        t
    }

    pub fn is_chamber(&self, s: &IncidenceSystem) -> bool {
        self.0.len() == s.rank()
    }
}

/// Walks every nonempty flag once (elements added in increasing order) and
/// reports whether every maximal flag is a chamber.
pub fn is_geometry(s: &IncidenceSystem) -> bool {
    fn walk(s: &IncidenceSystem, flag: &mut Vec<u32>, common: &[u32]) -> bool {
        if common.is_empty() {
            return flag.len() == s.rank();
        }
        let last = *flag.last().unwrap();
        for &y in common.iter().filter(|&&y| y > last) {
            let next: Vec<u32> = common.iter().copied().filter(|&z| s.incident(y, z)).collect();
            flag.push(y);
            let ok = walk(s, flag, &next);
            flag.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    (0..s.len() as u32).all(|x| {
        let mut flag = vec![x];
        walk(s, &mut flag, s.neighbors(x))
    })
}

/// The residue of a flag, with the map from residue elements back to
/// elements of `s`. Remaining types are relabeled in increasing order.
pub fn residue(s: &IncidenceSystem, flag: &Flag) -> Result<(IncidenceSystem, Vec<u32>)> {
    let f = Flag::new(s, flag.elements().to_vec())?;
    let used = f.type_set(s);
    let remaining: Vec<u8> = (0..s.rank() as u8).filter(|t| !used.contains(t)).collect();
    let members = s.common_neighbors(f.elements());
    let local: std::collections::HashMap<u32, u32> =
        members.iter().enumerate().map(|(i, &x)| (x, i as u32)).collect();
    let types = members
        .iter()
        .map(|&x| remaining.iter().position(|&t| t == s.type_of(x)).unwrap() as u8)
        .collect();
    let mut pairs = Vec::new();
    for (i, &x) in members.iter().enumerate() {
        for &y in s.neighbors(x) {
            if let Some(&j) = local.get(&y) {
                if (i as u32) < j {
                    pairs.push((i as u32, j));
                }
            }
        }
    }
    Ok((IncidenceSystem::new(remaining.len(), types, pairs)?, members))
}

/// A distance or diameter that may be infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Dist {
    Finite(u32),
    Infinite,
}

impl Dist {
    fn from_raw(d: u32) -> Self {
        if d == UNSEEN {
            Dist::Infinite
        } else {
            Dist::Finite(d)
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Dist::Finite(d) => Some(d),
            Dist::Infinite => None,
        }
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dist::Finite(d) => write!(f, "{d}"),
            Dist::Infinite => write!(f, "inf"),
        }
    }
}

/// Point-diameter, gonality and line-diameter of a rank-2 geometry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rank2Params {
    pub d_p: Dist,
    pub g: Dist,
    pub d_l: Dist,
}

impl Rank2Params {
    pub fn finite(d_p: u32, g: u32, d_l: u32) -> Self {
        Self { d_p: Dist::Finite(d_p), g: Dist::Finite(g), d_l: Dist::Finite(d_l) }
    }
}

impl fmt::Display for Rank2Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.d_p, self.g, self.d_l)
    }
}

/// Parameters of a rank-2 system. A disconnected system reports infinite
/// diameters overall, the smallest gonality over its components, and the
/// parameters of every component (components ordered by smallest element).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank2Report {
    pub params: Rank2Params,
    pub connected: bool,
    pub components: Vec<Rank2Params>,
}

/// Eccentricity of `src` and the length of the shortest cycle seen by a BFS
/// rooted at `src` (`UNSEEN` when none). The minimum of the latter over all
/// sources is the girth.
fn bfs_ecc_cycle(s: &IncidenceSystem, src: u32, dist: &mut [u32], parent: &mut [u32], queue: &mut Vec<u32>) -> (u32, u32) {
    queue.clear();
    queue.push(src);
    dist[src as usize] = 0;
    parent[src as usize] = UNSEEN;
    let mut best = UNSEEN;
    let mut ecc = 0;
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        let du = dist[u as usize];
        ecc = du;
        for &v in s.neighbors(u) {
            let dv = dist[v as usize];
            if dv == UNSEEN {
                dist[v as usize] = du + 1;
                parent[v as usize] = u;
                queue.push(v);
            } else if parent[u as usize] != v {
                best = best.min(du + dv + 1);
            }
        }
    }
    for &u in queue.iter() {
        dist[u as usize] = UNSEEN;
    }
    (ecc, best)
}

pub fn rank2_params(s: &IncidenceSystem) -> Result<Rank2Report> {
    if s.rank() != 2 {
        return Err(Error::WrongRank { expected: 2, got: s.rank() });
    }
    let n = s.len();
    let mut dist = vec![UNSEEN; n];
    let mut parent = vec![UNSEEN; n];
    let mut queue = Vec::with_capacity(n);
    let mut components = Vec::new();
    for comp in s.components() {
        let (mut d_p, mut d_l, mut girth) = (0, 0, UNSEEN);
        for &x in &comp {
            let (ecc, cyc) = bfs_ecc_cycle(s, x, &mut dist, &mut parent, &mut queue);
            girth = girth.min(cyc);
            if s.type_of(x) == 0 {
                d_p = d_p.max(ecc);
            } else {
                d_l = d_l.max(ecc);
            }
        }
        let g = if girth == UNSEEN { Dist::Infinite } else { Dist::Finite(girth / 2) };
        components.push(Rank2Params { d_p: Dist::Finite(d_p), g, d_l: Dist::Finite(d_l) });
    }
    let connected = components.len() <= 1;
    let params = if connected {
        components.first().copied().unwrap_or(Rank2Params {
            d_p: Dist::Finite(0),
            g: Dist::Infinite,
            d_l: Dist::Finite(0),
        })
    } else {
        Rank2Params {
            d_p: Dist::Infinite,
            g: components.iter().map(|c| c.g).min().unwrap(),
            d_l: Dist::Infinite,
        }
    };
    Ok(Rank2Report { params, connected, components })
}

/// Points are the vertices, lines are the edges.
pub fn graph_to_rank2(g: &SimpleGraph) -> IncidenceSystem {
    let edges = g.edges();
    let lines: Vec<Vec<u32>> = edges.iter().map(|&(a, b)| vec![a, b]).collect();
    IncidenceSystem::from_rank2(g.vertex_count(), &lines).expect("graph edges join distinct vertices")
}

/// An incidence-preserving permutation of the elements together with the
/// permutation it induces on types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correlation {
    perm: Vec<u32>,
    type_perm: Vec<u8>,
}

impl Correlation {
    pub fn new(s: &IncidenceSystem, perm: Vec<u32>) -> Result<Self> {
        let n = s.len();
        if perm.len() != n {
            return Err(Error::InvalidCorrelation(format!("length {} for {} elements", perm.len(), n)));
        }
        let mut seen = vec![false; n];
        for &x in &perm {
            if x as usize >= n || std::mem::replace(&mut seen[x as usize], true) {
                return Err(Error::InvalidCorrelation("not a bijection".into()));
            }
        }
        let mut type_perm = vec![u8::MAX; s.rank()];
        for x in 0..n {
            let (t, u) = (s.types[x], s.types[perm[x] as usize]);
            let slot = &mut type_perm[t as usize];
            if *slot == u8::MAX {
                *slot = u;
            } else if *slot != u {
                return Err(Error::InvalidCorrelation("does not respect types".into()));
            }
        }
        // unused types map to themselves
        for (t, slot) in type_perm.iter_mut().enumerate() {
            if *slot == u8::MAX {
                *slot = t as u8;
            }
        }
        let mut tseen = vec![false; s.rank()];
        for &u in &type_perm {
            if std::mem::replace(&mut tseen[u as usize], true) {
                return Err(Error::InvalidCorrelation("type map is not a bijection".into()));
            }
        }
        for (a, b) in s.pairs() {
            if !s.incident(perm[a as usize], perm[b as usize]) {
                return Err(Error::InvalidCorrelation(format!("pair ({a}, {b}) not preserved")));
            }
        }
        // a bijection sending incident pairs to incident pairs in a finite
        // system also reflects incidence: the pair counts agree
        Ok(Self { perm, type_perm })
    }

    pub fn identity(s: &IncidenceSystem) -> Self {
        Self {
            perm: (0..s.len() as u32).collect(),
            type_perm: (0..s.rank() as u8).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.perm[x as usize]
    }

    pub fn type_perm(&self) -> &[u8] {
        &self.type_perm
    }

    /// `self` applied after `other`.
    pub fn compose(&self, other: &Correlation) -> Correlation {
        Correlation {
            perm: other.perm.iter().map(|&x| self.perm[x as usize]).collect(),
            type_perm: other.type_perm.iter().map(|&t| self.type_perm[t as usize]).collect(),
        }
    }
}

fn orbits_of(perm: impl Fn(usize) -> usize, n: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut orbit = vec![s];
        seen[s] = true;
        let mut x = perm(s);
        while x != s {
            seen[x] = true;
            orbit.push(x);
            x = perm(x);
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// The absolute geometry: elements are the minimal nonempty invariant flags,
/// typed by the type-orbit they cover.
#[derive(Clone, Debug)]
pub struct AbsoluteGeometry {
    pub system: IncidenceSystem,
    /// Flag of the original system behind each element.
    pub flags: Vec<Vec<u32>>,
    /// The realized type-orbits, indexed by the new type labels.
    pub type_orbits: Vec<Vec<u8>>,
}

/// Computes the absolute geometry of `s` with respect to `phi`.
///
/// A minimal invariant flag covers exactly one orbit `K` of `phi` on types
/// and holds one element per type of `K`, so it is a single orbit of `phi`
/// on elements of size `|K|` that happens to be a flag. Only element orbits
/// are scanned; general flags are never enumerated.
pub fn absolute_geometry(s: &IncidenceSystem, phi: &Correlation) -> Result<AbsoluteGeometry> {
    if phi.perm.len() != s.len() {
        return Err(Error::InvalidCorrelation("correlation belongs to another system".into()));
    }
    let type_orbits = orbits_of(|t| phi.type_perm[t] as usize, s.rank());
    let type_orbit_of: Vec<usize> = {
        let mut v = vec![0; s.rank()];
        for (i, o) in type_orbits.iter().enumerate() {
            for &t in o {
                v[t] = i;
            }
        }
        v
    };
    let mut flags = Vec::new();
    let mut flag_type = Vec::new();
    for orbit in orbits_of(|x| phi.perm[x] as usize, s.len()) {
        let k = type_orbit_of[s.types[orbit[0]] as usize];
        if orbit.len() != type_orbits[k].len() {
            continue;
        }
        let elems: Vec<u32> = orbit.iter().map(|&x| x as u32).collect();
        if Flag::new(s, elems.clone()).is_ok() {
            flags.push(elems);
            flag_type.push(k);
        }
    }
    let realized: Vec<usize> = {
        let mut r: Vec<usize> = flag_type.clone();
        r.sort_unstable();
        r.dedup();
        r
    };
    let types: Vec<u8> = flag_type
        .iter()
        .map(|k| realized.iter().position(|r| r == k).unwrap() as u8)
        .collect();
    let mut owner = vec![UNSEEN; s.len()];
    for (i, f) in flags.iter().enumerate() {
        for &x in f {
            owner[x as usize] = i as u32;
        }
    }
    let mut pairs = Vec::new();
    for (i, f) in flags.iter().enumerate() {
        let mut cands: Vec<u32> = s
            .neighbors(f[0])
            .iter()
            .map(|&y| owner[y as usize])
            .filter(|&o| o != UNSEEN && o as usize > i)
            .collect();
        cands.sort_unstable();
        cands.dedup();
        for j in cands {
            let g = &flags[j as usize];
            if flag_type[i] != flag_type[j as usize] && f.iter().all(|&a| g.iter().all(|&b| s.incident(a, b))) {
                pairs.push((i as u32, j));
            }
        }
    }
    let system = IncidenceSystem::new(realized.len(), types, pairs)?;
    let type_orbits = realized
        .iter()
        .map(|&k| type_orbits[k].iter().map(|&t| t as u8).collect())
        .collect();
    Ok(AbsoluteGeometry { system, flags, type_orbits })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete_bipartite(m: usize, n: usize) -> IncidenceSystem {
        let lines: Vec<Vec<u32>> = (0..n).map(|_| (0..m as u32).collect()).collect();
        IncidenceSystem::from_rank2(m, &lines).unwrap()
    }

    fn triangle() -> IncidenceSystem {
        IncidenceSystem::from_rank2(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    #[test]
    fn rejects_same_type_incidence() {
        assert!(IncidenceSystem::new(2, vec![0, 0], [(0, 1)]).is_err());
    }

    #[test]
    fn geometry_examples() {
        assert!(is_geometry(&complete_bipartite(2, 3)));
        let isolated = IncidenceSystem::from_rank2(3, &[vec![0, 1]]).unwrap();
        assert!(!is_geometry(&isolated));
        assert!(is_geometry(&triangle()));
    }

    #[test]
    fn residue_examples() {
        let s = complete_bipartite(2, 3);
        let chamber = Flag::new(&s, vec![0, 2]).unwrap();
        let (r, _) = residue(&s, &chamber).unwrap();
        assert!(r.is_empty());
        let (r, map) = residue(&s, &Flag::new(&s, vec![0]).unwrap()).unwrap();
        assert_eq!(r.rank(), 1);
        assert_eq!(r.len(), 3);
        assert_eq!(map, vec![2, 3, 4]);
        assert_eq!(Flag::new(&s, vec![0, 1]), Err(Error::NotAFlag));
    }

    #[test]
    fn rank2_examples() {
        let r = rank2_params(&complete_bipartite(3, 4)).unwrap();
        assert_eq!(r.params, Rank2Params::finite(2, 2, 2));
        let r = rank2_params(&triangle()).unwrap();
        assert_eq!(r.params, Rank2Params::finite(3, 3, 3));
        let rank3 = IncidenceSystem::new(3, vec![0, 1, 2], [(0, 1)]).unwrap();
        assert_eq!(rank2_params(&rank3).unwrap_err(), Error::WrongRank { expected: 2, got: 3 });
    }

    #[test]
    fn rank2_of_forest_and_disconnected() {
        let path = IncidenceSystem::from_rank2(3, &[vec![0, 1], vec![1, 2]]).unwrap();
        let r = rank2_params(&path).unwrap();
        assert_eq!(r.params.g, Dist::Infinite);
        assert!(r.connected);
        let two = IncidenceSystem::from_rank2(6, &[vec![0, 1], vec![1, 2], vec![0, 2], vec![3, 4], vec![4, 5], vec![3, 5]]).unwrap();
        let r = rank2_params(&two).unwrap();
        assert!(!r.connected);
        assert_eq!(r.components.len(), 2);
        assert_eq!(r.params.d_p, Dist::Infinite);
        assert_eq!(r.params.g, Dist::Finite(3));
    }

    #[test]
    fn swapping_roles_swaps_diameters() {
        // a path with a pendant: points/lines roles exchanged by transposing
        let lines = vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3], vec![3, 4]];
        let s = IncidenceSystem::from_rank2(5, &lines).unwrap();
        let mut dual_lines: Vec<Vec<u32>> = vec![Vec::new(); 5];
        for (l, pts) in lines.iter().enumerate() {
            for &p in pts {
                dual_lines[p as usize].push(l as u32);
            }
        }
        let d = IncidenceSystem::from_rank2(lines.len(), &dual_lines).unwrap();
        let (a, b) = (rank2_params(&s).unwrap().params, rank2_params(&d).unwrap().params);
        assert_eq!((a.d_p, a.g, a.d_l), (b.d_l, b.g, b.d_p));
    }

    #[test]
    fn graph_to_rank2_examples() {
        let c5 = SimpleGraph::cycle(5);
        assert_eq!(rank2_params(&graph_to_rank2(&c5)).unwrap().params, Rank2Params::finite(5, 5, 5));
        let k4 = SimpleGraph::complete(4);
        assert_eq!(rank2_params(&graph_to_rank2(&k4)).unwrap().params.g, Dist::Finite(3));
    }

    #[test]
    fn absolute_geometry_of_identity_is_original() {
        let s = complete_bipartite(2, 3);
        let a = absolute_geometry(&s, &Correlation::identity(&s)).unwrap();
        assert_eq!(a.system, s);
        assert_eq!(a.type_orbits, vec![vec![0], vec![1]]);
    }

    #[test]
    fn cycled_chamber_is_one_absolute_element() {
        let s = IncidenceSystem::new(3, vec![0, 1, 2], [(0, 1), (1, 2), (0, 2)]).unwrap();
        let phi = Correlation::new(&s, vec![1, 2, 0]).unwrap();
        let a = absolute_geometry(&s, &phi).unwrap();
        assert_eq!(a.system.len(), 1);
        assert_eq!(a.type_orbits, vec![vec![0, 1, 2]]);
        let phi2 = phi.compose(&phi);
        let b = absolute_geometry(&s, &phi2).unwrap();
        assert_eq!(a.flags, b.flags);
    }

    #[test]
    fn correlation_validation() {
        let s = complete_bipartite(2, 2);
        // swaps the two points only
        assert!(Correlation::new(&s, vec![1, 0, 2, 3]).is_ok());
        assert!(Correlation::new(&s, vec![0, 0, 2, 3]).is_err());
        // mixes types inconsistently
        assert!(Correlation::new(&s, vec![2, 1, 0, 3]).is_err());
        let p = IncidenceSystem::from_rank2(3, &[vec![0, 1], vec![1, 2]]).unwrap();
        // swaps points 0 and 1 without moving lines: breaks incidence
        assert!(Correlation::new(&p, vec![1, 0, 2, 3, 4]).is_err());
    }

    #[test]
    fn residues_of_geometry_are_geometries() {
        let s = triangle();
        for x in 0..s.len() as u32 {
            let (r, _) = residue(&s, &Flag::new(&s, vec![x]).unwrap()).unwrap();
            assert!(is_geometry(&r));
        }
    }
}
