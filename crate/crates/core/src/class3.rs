//! Class III maps on PSL(2,q^3): admissible involution triples, the
//! four-type coset geometry they define, and its classical and moving
//! absolute geometries under the Frobenius triality `x -> x^q`.

use std::cell::OnceCell;
use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finfield::{prime_power, Fe};
use crate::graphtools::{aut_order, arc_orbits_under, orbits_under, AutReport, SimpleGraph, AUT_VERTEX_CAP};
use crate::incidence::{Correlation, IncidenceSystem};
use crate::permgroup::{
    frobenius_auto, generate, transporter, FrobeniusAuto, Group, Mat2, Perm, PermGroup, Psl2, Semilinear,
};

/// `x -> x^q` lifts `0 -> 2 -> 3 -> 0` on the coset types and fixes type 1.
pub const ALPHA_TYPE: [usize; 4] = [2, 1, 3, 0];

/// PSL(2,q^3) with the Frobenius automorphism `x -> x^q` and its fixed
/// subgroup PSL(2,q).
pub struct Class3Group {
    q: u32,
    g: Psl2,
    alpha: FrobeniusAuto,
    sigma: Vec<Fe>,
    fixed: Vec<Mat2>,
}

impl Class3Group {
    pub fn new(q: u32) -> Result<Self> {
        let Some(cube) = q.checked_pow(3) else {
            return Err(Error::UnsupportedOrder(q));
        };
        if prime_power(q).is_none() || cube > 729 {
            return Err(Error::UnsupportedOrder(q));
        }
        let g = Psl2::new(cube)?;
        let alpha = frobenius_auto(&g, q)?;
        let sigma = g.field().frobenius_table(alpha.exponent);
        let fixed = subfield_subgroup(&g, q);
        Ok(Self { q, g, alpha, sigma, fixed })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn group(&self) -> &Psl2 {
        &self.g
    }

    pub fn alpha(&self) -> &FrobeniusAuto {
        &self.alpha
    }

    /// Streams the group; it is never stored.
    pub fn elements(&self) -> impl Iterator<Item = Mat2> + '_ {
        self.g.iter()
    }

    /// Elements commuting with the triality, sorted.
    pub fn fixed_subgroup(&self) -> &[Mat2] {
        &self.fixed
    }

    #[inline]
    pub fn sigma(&self, m: Mat2) -> Mat2 {
        self.g.normalize(Mat2(m.0.map(|x| self.sigma[x.index()])))
    }

    /// The centralizer of the triality inside PGammaL(2,q^3): matrices over
    /// GF(q) up to scalars, combined with every field automorphism.
    pub fn alpha_centralizer(&self) -> Vec<Semilinear> {
        let f = self.g.field();
        let sub: Vec<Fe> = f.fixed_field(self.q).expect("q divides the field order");
        let mut mats = Vec::new();
        for &b in &sub {
            for &c in &sub {
                for &d in &sub {
                    for a in [Fe::ZERO, Fe::ONE] {
                        if a.is_zero() && b != Fe::ONE {
                            continue;
                        }
                        let m = Mat2([a, b, c, d]);
                        if !self.g.det(m).is_zero() {
                            mats.push(m);
                        }
                    }
                }
            }
        }
        let mut out = Vec::with_capacity(mats.len() * f.n() as usize);
        for e in 0..f.n() {
            out.extend(mats.iter().map(|&m| Semilinear { m, e }));
        }
        out
    }
}

/// Determinant-1 matrices over the subfield GF(q), normalized and sorted.
fn subfield_subgroup(g: &Psl2, q: u32) -> Vec<Mat2> {
    let f = g.field();
    let sub = f.fixed_field(q).expect("q divides the field order");
    let mut out = Vec::new();
    for &a in &sub {
        for &b in &sub {
            for &c in &sub {
                for &d in &sub {
                    let m = Mat2([a, b, c, d]);
                    if g.det(m) == Fe::ONE {
                        out.push(g.normalize(m));
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmissibleTriple {
    pub rho0: Mat2,
    pub rho1: Mat2,
    pub rho2: Mat2,
}

/// Outcome of the triple search, with how many candidate classes failed
/// each of the last two conditions.
#[derive(Clone, Debug)]
pub struct TripleSearch {
    pub triples: Vec<AdmissibleTriple>,
    pub rho0_candidates: usize,
    pub rho1_candidates: usize,
    pub candidate_classes: usize,
    pub not_generating: usize,
    pub has_duality: usize,
}

/// Verifies all five conditions for a triple.
pub fn check_triple(cg: &Class3Group, t: &AdmissibleTriple) -> Result<()> {
    let g = &cg.g;
    let fail = |what: &str| Err(Error::PropertyViolation(format!("triple {t:?}: {what}")));
    for (m, name) in [(t.rho0, "rho0"), (t.rho1, "rho1"), (t.rho2, "rho2")] {
        if !g.is_involution(m) {
            return Err(Error::NotAnInvolution(name));
        }
    }
    let r02 = g.mul(t.rho0, t.rho2);
    if cg.sigma(t.rho0) != t.rho2 || cg.sigma(t.rho2) != r02 || cg.sigma(r02) != t.rho0 {
        return fail("triality does not cycle rho0, rho2, rho0 rho2");
    }
    if cg.sigma(t.rho1) != t.rho1 {
        return fail("triality moves rho1");
    }
    if r02 != g.mul(t.rho2, t.rho0) {
        return fail("rho0 and rho2 do not commute");
    }
    if !generates(cg, t) {
        return fail("does not generate the group");
    }
    if transporter(g, t.rho0, t.rho2, t.rho1)?.is_some() {
        return fail("some automorphism swaps rho0 and rho2 fixing rho1");
    }
    Ok(())
}

fn generates(cg: &Class3Group, t: &AdmissibleTriple) -> bool {
    let g = &cg.g;
    let gens = [t.rho0, t.rho1, t.rho2].iter().map(|&m| g.to_perm(m)).collect();
    let grp = PermGroup::new(g.q() as usize + 1, gens).expect("same degree");
    grp.order() == BigUint::from(g.order())
}

/// All admissible triples for the Frobenius triality, one per class under
/// simultaneous conjugation by [`Class3Group::alpha_centralizer`]. Each class
/// is represented by its lexicographically smallest `(rho0, rho1)`; classes
/// come out in that order.
pub fn find_triples(cg: &Class3Group) -> Result<TripleSearch> {
    let g = &cg.g;
    let inv = g.involutions();
    let rho0s: Vec<Mat2> = inv
        .iter()
        .copied()
        .filter(|&r0| {
            let r2 = cg.sigma(r0);
            r2 != r0 && g.mul(r0, r2) == g.mul(r2, r0) && cg.sigma(r2) == g.mul(r0, r2)
        })
        .collect();
    let rho1s: Vec<Mat2> = inv.iter().copied().filter(|&r| cg.sigma(r) == r).collect();
    let cent = cg.alpha_centralizer();
    let mut classes: BTreeSet<(Mat2, Mat2)> = BTreeSet::new();
    let mut done: HashSet<(Mat2, Mat2)> = HashSet::new();
    for &r0 in &rho0s {
        for &r1 in &rho1s {
            if done.contains(&(r0, r1)) {
                continue;
            }
            let orbit: Vec<(Mat2, Mat2)> = cent.iter().map(|c| (c.conj(g, r0), c.conj(g, r1))).collect();
            classes.insert(*orbit.iter().min().unwrap());
            done.extend(orbit);
        }
    }
    let mut search = TripleSearch {
        triples: Vec::new(),
        rho0_candidates: rho0s.len(),
        rho1_candidates: rho1s.len(),
        candidate_classes: classes.len(),
        not_generating: 0,
        has_duality: 0,
    };
    for (rho0, rho1) in classes {
        let t = AdmissibleTriple { rho0, rho1, rho2: cg.sigma(rho0) };
        if !generates(cg, &t) {
            search.not_generating += 1;
        } else if transporter(g, t.rho0, t.rho2, t.rho1)?.is_some() {
            search.has_duality += 1;
        } else {
            search.triples.push(t);
        }
    }
    Ok(search)
}

/// The coset geometry on the four subgroups `G0 = <r0,r1>`,
/// `G1 = <r0,r2>`, `G2 = <r1,r2>`, `G3 = <r1,r0 r2>`. Cosets are right
/// cosets `Gi x`, keyed by their smallest element.
pub struct DeltaGeometry<'a> {
    cg: &'a Class3Group,
    triple: AdmissibleTriple,
    parabolics: [Vec<Mat2>; 4],
    /// Sorted product sets `Gi Gj`.
    products: HashMap<(usize, usize), Vec<Mat2>>,
    scan: OnceCell<Scan>,
}

/// Results of one pass over the group.
struct Scan {
    absolute: [Vec<Mat2>; 4],
    fixed_edges: Vec<Mat2>,
}

impl<'a> DeltaGeometry<'a> {
    pub fn new(cg: &'a Class3Group, triple: AdmissibleTriple) -> Result<Self> {
        let g = &cg.g;
        let AdmissibleTriple { rho0, rho1, rho2 } = triple;
        let parabolics = [
            generate(g, &[rho0, rho1]),
            generate(g, &[rho0, rho2]),
            generate(g, &[rho1, rho2]),
            generate(g, &[rho1, g.mul(rho0, rho2)]),
        ];
        if parabolics[1].len() != 4 {
            return Err(Error::PropertyViolation(format!("G1 has order {}", parabolics[1].len())));
        }
        let mut products = HashMap::new();
        for i in 0..4 {
            for j in 0..4 {
                let mut set: Vec<Mat2> = parabolics[i]
                    .iter()
                    .flat_map(|&a| parabolics[j].iter().map(move |&b| g.mul(a, b)))
                    .collect();
                set.sort_unstable();
                set.dedup();
                products.insert((i, j), set);
            }
        }
        Ok(Self { cg, triple, parabolics, products, scan: OnceCell::new() })
    }

    pub fn group(&self) -> &Class3Group {
        self.cg
    }

    pub fn triple(&self) -> &AdmissibleTriple {
        &self.triple
    }

    pub fn parabolic(&self, t: usize) -> &[Mat2] {
        &self.parabolics[t]
    }

    pub fn coset_counts(&self) -> [u64; 4] {
        let n = self.cg.g.order();
        [0, 1, 2, 3].map(|t| n / self.parabolics[t].len() as u64)
    }

    pub fn rep(&self, t: usize, x: Mat2) -> Mat2 {
        let g = &self.cg.g;
        self.parabolics[t].iter().map(|&h| g.mul(h, x)).min().unwrap()
    }

    /// `Gi x` and `Gj y` meet iff `x y^-1` lies in `Gi Gj`.
    pub fn incident(&self, i: usize, x: Mat2, j: usize, y: Mat2) -> bool {
        let g = &self.cg.g;
        i != j && self.products[&(i, j)].binary_search(&g.mul(x, g.inv(y))).is_ok()
    }

    /// The image of `Gt x` under the triality.
    pub fn alpha(&self, t: usize, x: Mat2) -> (usize, Mat2) {
        (ALPHA_TYPE[t], self.rep(ALPHA_TYPE[t], self.cg.sigma(x)))
    }

    /// Whether `Gt x` (t in {0,2,3}) is incident with its image.
    pub fn is_absolute(&self, t: usize, x: Mat2) -> bool {
        let g = &self.cg.g;
        let y = g.mul(x, g.inv(self.cg.sigma(x)));
        self.products[&(t, ALPHA_TYPE[t])].binary_search(&y).is_ok()
    }

    pub fn edge_is_fixed(&self, x: Mat2) -> bool {
        let g = &self.cg.g;
        self.parabolics[1].binary_search(&g.mul(self.cg.sigma(x), g.inv(x))).is_ok()
    }

    /// Representatives of the cosets of type `t` incident with `G1 x`.
    pub fn edge_ends(&self, t: usize, x: Mat2) -> Vec<Mat2> {
        let g = &self.cg.g;
        let mut v: Vec<Mat2> = self.parabolics[1].iter().map(|&h| self.rep(t, g.mul(h, x))).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    fn scan(&self) -> &Scan {
        self.scan.get_or_init(|| {
            let mut absolute: [Vec<Mat2>; 4] = Default::default();
            let mut fixed_edges = Vec::new();
            for x in self.cg.elements() {
                for t in [0, 2, 3] {
                    if self.is_absolute(t, x) {
                        absolute[t].push(self.rep(t, x));
                    }
                }
                if self.edge_is_fixed(x) {
                    fixed_edges.push(self.rep(1, x));
                }
            }
            for v in absolute.iter_mut().chain(std::iter::once(&mut fixed_edges)) {
                v.sort_unstable();
                v.dedup();
            }
            Scan { absolute, fixed_edges }
        })
    }

    /// Representatives of all absolute cosets of type `t` (0, 2 or 3),
    /// sorted.
    pub fn absolute_reps(&self, t: usize) -> &[Mat2] {
        &self.scan().absolute[t]
    }

    /// Representatives of the edge cosets fixed by the triality, sorted.
    pub fn fixed_edge_reps(&self) -> &[Mat2] {
        &self.scan().fixed_edges
    }

    /// The full coset geometry as an incidence system (element order: type
    /// by type, representatives ascending) together with the triality as a
    /// correlation. Only for groups of order at most `max_order`.
    pub fn incidence_system(&self, max_order: u64) -> Result<(IncidenceSystem, Correlation, Vec<(usize, Mat2)>)> {
        let g = &self.cg.g;
        if g.order() > max_order {
            return Err(Error::UnsupportedOrder(g.q()));
        }
        let mut elems: Vec<(usize, Mat2)> = Vec::new();
        for t in 0..4 {
            let mut reps: Vec<Mat2> = self.cg.elements().map(|x| self.rep(t, x)).collect();
            reps.sort_unstable();
            reps.dedup();
            elems.extend(reps.into_iter().map(|r| (t, r)));
        }
        let index: HashMap<(usize, Mat2), u32> = elems.iter().enumerate().map(|(i, &e)| (e, i as u32)).collect();
        let mut pairs = Vec::new();
        for (i, &(t, r)) in elems.iter().enumerate() {
            for u in t + 1..4 {
                let mut others: Vec<u32> =
                    self.parabolics[t].iter().map(|&h| index[&(u, self.rep(u, g.mul(h, r)))]).collect();
                others.sort_unstable();
                others.dedup();
                pairs.extend(others.into_iter().map(|j| (i as u32, j)));
            }
        }
        let types = elems.iter().map(|&(t, _)| t as u8).collect();
        let sys = IncidenceSystem::new(4, types, pairs)?;
        let perm = elems.iter().map(|&(t, r)| index[&self.alpha(t, r)]).collect();
        let phi = Correlation::new(&sys, perm)?;
        Ok((sys, phi, elems))
    }
}

/// Absolute vertices and fixed edges, as a graph on the absolute vertices.
#[derive(Clone, Debug)]
pub struct AbsoluteDelta {
    pub vertices: Vec<Mat2>,
    pub fixed_edges: Vec<Mat2>,
    pub graph: SimpleGraph,
    /// Number of components, when every one is a path with two edges.
    pub paths_of_length_two: Option<usize>,
}

pub fn absolute_delta(d: &DeltaGeometry) -> Result<AbsoluteDelta> {
    let vertices = d.absolute_reps(0).to_vec();
    let index: HashMap<Mat2, u32> = vertices.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
    let fixed_edges = d.fixed_edge_reps().to_vec();
    let mut edges = Vec::with_capacity(fixed_edges.len());
    for &e in &fixed_edges {
        let ends = d.edge_ends(0, e);
        let ids: Vec<u32> = ends
            .iter()
            .map(|v| {
                index.get(v).copied().ok_or_else(|| {
                    Error::PropertyViolation(format!("fixed edge {e:?} has a non-absolute endpoint"))
                })
            })
            .collect::<Result<_>>()?;
        if ids.len() != 2 {
            return Err(Error::ModelCorruption(format!("edge {e:?} has {} vertices", ids.len())));
        }
        edges.push((ids[0].min(ids[1]), ids[0].max(ids[1])));
    }
    let graph = SimpleGraph::new(vertices.len(), edges)?;
    let comps = graph.components();
    let paths_of_length_two = comps
        .iter()
        .all(|c| {
            let mut deg: Vec<usize> = c.iter().map(|&v| graph.neighbors(v).len()).collect();
            deg.sort_unstable();
            deg == [1, 1, 2]
        })
        .then_some(comps.len());
    Ok(AbsoluteDelta { vertices, fixed_edges, graph, paths_of_length_two })
}

/// Absolute cosets of one vertex type joined by moving edges; isolated
/// vertices removed.
#[derive(Clone, Debug)]
pub struct MovingGraph {
    pub vertex_type: usize,
    pub vertices: Vec<Mat2>,
    pub edges: Vec<Mat2>,
    pub graph: SimpleGraph,
}

pub fn moving_absolute_delta(d: &DeltaGeometry, vertex_type: usize) -> Result<MovingGraph> {
    if vertex_type == 1 || vertex_type > 3 {
        return Err(Error::PropertyViolation(format!("type {vertex_type} is not a vertex type")));
    }
    let g = &d.cg.g;
    let absolute: HashSet<Mat2> = d.absolute_reps(vertex_type).iter().copied().collect();
    let mut edge_set: BTreeSet<(Mat2, [Mat2; 2])> = BTreeSet::new();
    for &v in &absolute {
        for &h in d.parabolic(vertex_type) {
            let x = g.mul(h, v);
            if d.edge_is_fixed(x) {
                continue;
            }
            let ends = d.edge_ends(vertex_type, x);
            if ends.len() == 2 && ends.iter().all(|e| absolute.contains(e)) {
                edge_set.insert((d.rep(1, x), [ends[0], ends[1]]));
            }
        }
    }
    let used: BTreeSet<Mat2> = edge_set.iter().flat_map(|(_, e)| e.iter().copied()).collect();
    let vertices: Vec<Mat2> = used.into_iter().collect();
    let index: HashMap<Mat2, u32> = vertices.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
    let pairs: Vec<(u32, u32)> = edge_set.iter().map(|(_, [a, b])| (index[a], index[b])).collect();
    let edges = edge_set.into_iter().map(|(r, _)| r).collect();
    let graph = SimpleGraph::new(vertices.len(), pairs)?;
    Ok(MovingGraph { vertex_type, vertices, edges, graph })
}

/// The map `Gt x -> G(alpha t) sigma(x)` between the vertex sets of two
/// moving graphs, when it is a graph isomorphism.
pub fn alpha_isomorphism(d: &DeltaGeometry, from: &MovingGraph, to: &MovingGraph) -> Option<Perm> {
    if ALPHA_TYPE[from.vertex_type] != to.vertex_type || from.vertices.len() != to.vertices.len() {
        return None;
    }
    let index: HashMap<Mat2, u32> = to.vertices.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
    let img: Vec<u32> = from
        .vertices
        .iter()
        .map(|&v| index.get(&d.alpha(from.vertex_type, v).1).copied())
        .collect::<Option<_>>()?;
    let p = Perm::new(img).ok()?;
    let mapped = from.graph.relabel(&p).ok()?;
    (mapped == to.graph).then_some(p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitivityReport {
    /// Order of the triality-fixed subgroup acting by right multiplication.
    pub fixed_order: usize,
    pub fixed_vertex_orbits: usize,
    pub fixed_arc_orbits: usize,
    /// Present when the graph is small enough for the automorphism search.
    pub aut_order: Option<String>,
    pub aut_vertex_orbits: Option<usize>,
    pub aut_arc_orbits: Option<usize>,
}

impl TransitivityReport {
    pub fn vertex_transitive(&self) -> bool {
        self.fixed_vertex_orbits == 1 || self.aut_vertex_orbits == Some(1)
    }

    pub fn arc_transitive(&self) -> bool {
        self.fixed_arc_orbits == 1 || self.aut_arc_orbits == Some(1)
    }
}

/// Permutations of the moving graph's vertices induced by right
/// multiplication with the triality-fixed subgroup.
pub fn fixed_subgroup_action(d: &DeltaGeometry, mg: &MovingGraph) -> Result<Vec<Perm>> {
    let g = &d.cg.g;
    let index: HashMap<Mat2, u32> = mg.vertices.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
    d.cg
        .fixed
        .iter()
        .map(|&h| {
            let img = mg
                .vertices
                .iter()
                .map(|&v| {
                    index.get(&d.rep(mg.vertex_type, g.mul(v, h))).copied().ok_or_else(|| {
                        Error::PropertyViolation("fixed subgroup does not preserve the moving graph".into())
                    })
                })
                .collect::<Result<Vec<u32>>>()?;
            Perm::new(img)
        })
        .collect()
}

pub fn transitivity_report(d: &DeltaGeometry, mg: &MovingGraph) -> Result<(TransitivityReport, Option<AutReport>)> {
    let action = fixed_subgroup_action(d, mg)?;
    let fixed_vertex_orbits = orbits_under(&mg.graph, &action)?.len();
    let fixed_arc_orbits = arc_orbits_under(&mg.graph, &action)?.len();
    let aut = if mg.graph.vertex_count() <= AUT_VERTEX_CAP { Some(aut_order(&mg.graph)?) } else { None };
    let (aut_vertex_orbits, aut_arc_orbits) = match &aut {
        Some(a) => (
            Some(orbits_under(&mg.graph, &a.generators)?.len()),
            Some(arc_orbits_under(&mg.graph, &a.generators)?.len()),
        ),
        None => (None, None),
    };
    let report = TransitivityReport {
        fixed_order: action.len(),
        fixed_vertex_orbits,
        fixed_arc_orbits,
        aut_order: aut.as_ref().map(|a| a.order.to_string()),
        aut_vertex_orbits,
        aut_arc_orbits,
    };
    Ok((report, aut))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphtools::aut_order;
    use crate::incidence::Dist;

    #[test]
    fn q2_pipeline() {
        let cg = Class3Group::new(2).unwrap();
        assert_eq!(cg.fixed_subgroup().len(), 6);
        assert_eq!(cg.alpha_centralizer().len(), 18);
        let s = find_triples(&cg).unwrap();
        assert_eq!(s.triples.len(), 1);
        let t = s.triples[0];
        check_triple(&cg, &t).unwrap();
        let d = DeltaGeometry::new(&cg, t).unwrap();
        assert_eq!(d.coset_counts()[1], 126);
        let a = absolute_delta(&d).unwrap();
        assert_eq!(a.paths_of_length_two, Some(3));
        assert_eq!(a.fixed_edges.len(), 6);
        let mg = moving_absolute_delta(&d, 0).unwrap();
        assert_eq!((mg.graph.vertex_count(), mg.graph.edge_count()), (6, 9));
        assert_eq!(mg.graph.regular_degree(), Some(3));
        assert_eq!(mg.graph.girth(), Dist::Finite(3));
        assert_eq!(aut_order(&mg.graph).unwrap().order, BigUint::from(12u32));
    }

    #[test]
    fn fixed_subgroup_matches_filter() {
        for q in [2u32, 3, 4] {
            let cg = Class3Group::new(q).unwrap();
            let filtered: Vec<Mat2> = cg.group().elements().into_iter().filter(|&m| cg.sigma(m) == m).collect();
            assert_eq!(cg.fixed_subgroup(), &filtered[..]);
        }
    }

    #[test]
    fn q3_moving_geometry_is_empty() {
        let cg = Class3Group::new(3).unwrap();
        let s = find_triples(&cg).unwrap();
        assert_eq!(s.triples.len(), 1);
        let d = DeltaGeometry::new(&cg, s.triples[0]).unwrap();
        assert_eq!(absolute_delta(&d).unwrap().paths_of_length_two, Some(6));
        assert_eq!(moving_absolute_delta(&d, 0).unwrap().graph.vertex_count(), 0);
    }
}
