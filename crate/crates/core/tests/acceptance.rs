//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! nonzero when a gating criterion (1 to 11) fails. Criterion 12 is a
//! non-gating stretch run, enabled with `TRIALITY_ALLOW_LARGE=1`.

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use triality_core::class3::{
    absolute_delta, find_triples, moving_absolute_delta, transitivity_report, Class3Group, DeltaGeometry,
};
use triality_core::finfield::{prime_power, FieldSpec};
use triality_core::graphtools::{aut_order, SimpleGraph};
use triality_core::hexagon::{
    apartments, check_opposite_vertices, closed_form_counts, counting_bound_check, planes_per_moving_line,
    special_planes, HexModel,
};
use triality_core::incidence::{
    absolute_geometry, graph_to_rank2, rank2_params, Correlation, Dist, IncidenceSystem, Rank2Params,
};
use triality_core::permgroup::{Group, Mat2};
use triality_core::projgeom::{line_points, line_through, parabolic_lines, parabolic_points, parabolic_polar};
use triality_core::serialize::Document;

/// Result of one criterion: detail lines plus warnings that do not fail it.
#[derive(Default)]
struct Report {
    lines: Vec<String>,
    warnings: Vec<String>,
    failures: Vec<String>,
}

impl Report {
    fn note(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn warn(&mut self, s: impl Into<String>) {
        self.warnings.push(s.into());
    }

    /// Records `what` as a failure unless `ok`.
    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }
}

struct Gate {
    gating_failed: bool,
}

impl Gate {
    fn run(&mut self, n: u32, title: &str, limit: Option<Duration>, gating: bool, f: impl FnOnce(&mut Report)) {
        let mut r = Report::default();
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| f(&mut r)));
        let elapsed = start.elapsed();
        if let Err(p) = outcome {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            r.failures.push(format!("panicked: {msg}"));
        }
        if let Some(l) = limit {
            r.require(elapsed <= l, format!("runtime {elapsed:.2?} over {l:?}"));
        }
        let pass = r.failures.is_empty();
        let budget = limit.map_or(String::new(), |l| format!(" (limit {l:?})"));
        let tag = if gating { "" } else { " [stretch, non-gating]" };
        println!(
            "criterion {n:>2}: {} {title}{tag} in {elapsed:.2?}{budget}",
            if pass { "PASS" } else { "FAIL" }
        );
        for l in &r.lines {
            println!("    {l}");
        }
        for w in &r.warnings {
            println!("    warning: {w}");
        }
        for x in &r.failures {
            println!("    failed: {x}");
        }
        if !pass && gating {
            self.gating_failed = true;
        }
    }
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn c1_counts(r: &mut Report) {
    let m = HexModel::build(2).unwrap();
    let sys = m.moving_absolute();
    let n = m.points().len();
    let per_line: HashSet<usize> = sys.elements_of_type(1).map(|l| sys.neighbors(l).len()).collect();
    let per_point: HashSet<usize> = sys.elements_of_type(0).map(|p| sys.neighbors(p).len()).collect();
    r.note(format!(
        "{n} points, {} moving lines, points/line {per_line:?}, lines/point {per_point:?}",
        m.moving_ids().len()
    ));
    r.require(n == 63, "63 points");
    r.require(m.moving_ids().len() == 252, "252 moving lines");
    r.require(per_line == HashSet::from([3]), "3 points per line");
    r.require(per_point == HashSet::from([12]), "12 lines per point");
}

fn c2_diagrams(r: &mut Report) {
    for q in [2, 3] {
        let m = HexModel::build(q).unwrap();
        let mv = rank2_params(&m.moving_absolute()).unwrap().params;
        let cl = rank2_params(&m.classical_absolute()).unwrap().params;
        r.note(format!("q={q}: moving {mv}, classical {cl}"));
        r.require(mv == Rank2Params::finite(5, 3, 6), format!("q={q} moving (5,3,6)"));
        r.require(cl == Rank2Params::finite(6, 6, 6), format!("q={q} classical (6,6,6)"));
    }
}

fn c3_distance_six(r: &mut Report) {
    let m = HexModel::build(2).unwrap();
    let a = m.unit_line(4, 5).expect("e5e6 is a quadric line");
    let b = m.unit_line(0, 1).expect("e1e2 is a quadric line");
    let (ea, eb) = (m.moving_element(a).expect("e5e6 moving"), m.moving_element(b).expect("e1e2 moving"));
    let d = m.moving_absolute().distance(ea, eb);
    r.note(format!("d(e5e6, e1e2) = {d}"));
    r.require(d == Dist::Finite(6), "distance 6");
}

fn c4_special_planes(r: &mut Report) {
    for q in [2u32, 3] {
        let m = HexModel::build(q).unwrap();
        let planes = special_planes(&m).unwrap();
        let per_line = planes_per_moving_line(&m, &planes);
        let once = per_line.iter().all(|p| p.len() == 1);
        let sizes: HashSet<usize> = planes.iter().map(|p| p.moving_lines.len()).collect();
        r.note(format!("q={q}: {} planes, moving lines per plane {sizes:?}, each line in one plane: {once}", planes.len()));
        r.require(once, format!("q={q}: every moving line in exactly one special plane"));
        r.require(sizes == HashSet::from([(q * q) as usize]), format!("q={q}: {} moving lines per plane", q * q));
    }
}

fn c5_opposite(r: &mut Report) {
    let m = HexModel::build(2).unwrap();
    let hexes = apartments(&m, None);
    match check_opposite_vertices(&m, &hexes) {
        Ok(rep) => r.note(format!(
            "{} hexagons, {} opposite chords off the quadric, {} distance-2 chords on moving lines",
            rep.hexagons, rep.opposite_chords, rep.distance2_chords
        )),
        Err(e) => r.require(false, e.to_string()),
    }
    r.require(!hexes.is_empty(), "some hexagon found");
}

fn c6_counting(r: &mut Report) {
    let m = HexModel::build(2).unwrap();
    match counting_bound_check(&m, None) {
        Ok(rep) => {
            r.note(format!("{} lines checked, max within distance 4 = {}, bound {}", rep.lines_checked, rep.max_within_4, rep.bound));
            r.require(rep.bound == 760 && rep.lines_checked == 252, "bound 760 over all 252 lines");
        }
        Err(e) => r.require(false, e.to_string()),
    }
}

fn c7_closed_forms(r: &mut Report) {
    let c = closed_form_counts(2, 8).unwrap();
    r.note(format!("closed_form_counts(2,8) = {c:?}"));
    r.require(c == (2457, 157248, 3, 192), "(2457, 157248, 3, 192)");
}

/// Per-class data for the class III criteria.
struct ClassData {
    paths: Option<usize>,
    fixed_edges: usize,
    fixed_order: usize,
    graph: SimpleGraph,
    rank2: Rank2Params,
    fixed_arc_orbits: usize,
    aut_order: Option<String>,
    aut_vertex_orbits: Option<usize>,
    aut_arc_orbits: Option<usize>,
}

fn class_data(q: u32, r: &mut Report) -> Vec<ClassData> {
    let cg = Class3Group::new(q).unwrap();
    let search = find_triples(&cg).unwrap();
    r.note(format!("q={q}: {} admissible triple classes", search.triples.len()));
    search
        .triples
        .iter()
        .map(|&t| {
            let d = DeltaGeometry::new(&cg, t).unwrap();
            let abs = absolute_delta(&d).unwrap();
            let mg = moving_absolute_delta(&d, 0).unwrap();
            let (rep, _) = transitivity_report(&d, &mg).unwrap();
            let rank2 = rank2_params(&graph_to_rank2(&mg.graph)).unwrap().params;
            ClassData {
                paths: abs.paths_of_length_two,
                fixed_edges: abs.fixed_edges.len(),
                fixed_order: rep.fixed_order,
                graph: mg.graph,
                rank2,
                fixed_arc_orbits: rep.fixed_arc_orbits,
                aut_order: rep.aut_order,
                aut_vertex_orbits: rep.aut_vertex_orbits,
                aut_arc_orbits: rep.aut_arc_orbits,
            }
        })
        .collect()
}

fn describe(c: &ClassData) -> String {
    let g = &c.graph;
    let mut degs = g.degrees();
    degs.sort_unstable();
    degs.dedup();
    format!(
        "{}v {}e degrees {degs:?} girth {} diam {} components {} rank2 {} aut {}",
        g.vertex_count(),
        g.edge_count(),
        g.girth(),
        g.diameter().max,
        g.components().len(),
        c.rank2,
        c.aut_order.as_deref().unwrap_or("-")
    )
}

fn check_paths(r: &mut Report, classes: &[ClassData], expected_l: usize) {
    for (i, c) in classes.iter().enumerate() {
        r.note(format!("class {i}: {:?} paths, {} fixed edges | {}", c.paths, c.fixed_edges, describe(c)));
        r.require(c.fixed_order == expected_l, format!("class {i}: fixed subgroup of order {expected_l}"));
        r.require(
            c.paths == Some(expected_l / 2) && c.fixed_edges == expected_l,
            format!("class {i}: {} paths of length 2 and {expected_l} fixed edges", expected_l / 2),
        );
    }
}

fn aut_compare(r: &mut Report, c: &ClassData, published: u64) {
    match c.aut_order.as_deref() {
        Some(a) if a == published.to_string() => r.note(format!("aut order {a} matches published {published}")),
        other => r.warn(format!("aut order {} differs from published {published}", other.unwrap_or("not computed"))),
    }
}

fn c8_q2(r: &mut Report) {
    let classes = class_data(2, r);
    r.require(classes.len() == 1, "exactly one triple class");
    check_paths(r, &classes, 6);
    if let Some(c) = classes.first() {
        let g = &c.graph;
        r.require(c.paths == Some(3) && c.fixed_edges == 6, "3 paths, 6 fixed edges");
        r.require(g.vertex_count() == 6 && g.edge_count() == 9, "6 vertices, 9 edges");
        r.require(g.regular_degree() == Some(3), "3-regular");
        r.require(g.girth() == Dist::Finite(3), "girth 3");
        r.require(g.diameter().max == 2 && g.diameter().connected, "diameter 2");
        r.require(c.aut_order.as_deref() == Some("12"), "aut order 12");
        let prism = SimpleGraph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]).unwrap();
        r.require(aut_order(&prism).unwrap().order.to_string() == "12", "prism oracle aut 12");
    }
}

fn c9_q4(r: &mut Report) {
    let classes = class_data(4, r);
    check_paths(r, &classes, 60);
    let hit = classes.iter().find(|c| c.graph.vertex_count() == 90 && c.graph.edge_count() == 75);
    r.require(hit.is_some(), "a class with 90 vertices and 75 edges");
    if let Some(c) = hit {
        let g = &c.graph;
        let mut sizes: Vec<(usize, usize)> =
            g.components().iter().map(|comp| (comp.len(), comp.iter().map(|&v| g.neighbors(v).len()).sum::<usize>() / 2)).collect();
        sizes.sort_unstable();
        let edges = sizes.iter().filter(|&&s| s == (2, 1)).count();
        let pentagons = sizes.iter().filter(|&&s| s == (5, 5)).count();
        r.note(format!("components: {edges} single edges, {pentagons} pentagons, {} other", sizes.len() - edges - pentagons));
        if g.regular_degree() != Some(3) {
            let mut degs = g.degrees();
            degs.sort_unstable();
            degs.dedup();
            r.warn(format!("published degree 3, computed degrees {degs:?}"));
        }
        let d = g.diameter();
        if d.max != 7 {
            r.warn(format!("published diameter 7, computed max component diameter {}", d.max));
        }
        if g.girth() != Dist::Finite(5) {
            r.warn(format!("published girth 5, computed {}", g.girth()));
        }
        aut_compare(r, c, 120);
    }
}

fn c10_q5(r: &mut Report) {
    let classes = class_data(5, r);
    check_paths(r, &classes, 60);
    let a = classes.iter().find(|c| {
        let g = &c.graph;
        g.vertex_count() == 30 && g.edge_count() == 60 && g.regular_degree() == Some(4) && c.rank2 == Rank2Params::finite(7, 5, 8)
    });
    r.require(a.is_some(), "a class with 30 vertices, 60 edges, 4-regular, rank2 (7,5,8)");
    if let Some(c) = a {
        let arcs = 2 * c.graph.edge_count();
        r.note(format!(
            "30-vertex graph: fixed L2(5) of order {} has {} orbits on {arcs} arcs; full aut has {:?} arc orbits",
            c.fixed_order, c.fixed_arc_orbits, c.aut_arc_orbits
        ));
        r.require(
            c.fixed_arc_orbits == 1,
            format!(
                "arc-transitive under the fixed L2(5) action (impossible: {arcs} arcs exceed the group order {})",
                c.fixed_order
            ),
        );
        aut_compare(r, c, 240);
    }
    let b = classes.iter().find(|c| {
        let g = &c.graph;
        g.vertex_count() == 60 && g.girth() == Dist::Finite(3) && g.diameter().max == 8 && g.diameter().connected
    });
    r.require(b.is_some(), "a class with 60 vertices, girth 3, diameter 8");
    if let Some(c) = b {
        r.require(c.aut_vertex_orbits == Some(1), "60-vertex graph vertex-transitive");
        aut_compare(r, c, 120);
    }
}

fn field_axioms(r: &mut Report) {
    let mut checked = 0;
    for q in 2..=64u32 {
        if prime_power(q).is_none() {
            continue;
        }
        let f = FieldSpec::of_order(q).unwrap();
        let els: Vec<_> = f.elements().collect();
        let (zero, one) = (f.from_int(0), f.from_int(1));
        for &a in &els {
            assert_eq!(f.add(a, zero), a);
            assert_eq!(f.mul(a, one), a);
            assert_eq!(f.add(a, f.neg(a)), zero);
            if a != zero {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), one);
            }
            assert_eq!(f.pow(a, q as u64), a);
            for &b in &els {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for &c in &els {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
        checked += 1;
    }
    r.note(format!("field axioms exhaustive on {checked} fields of order <= 64"));
}

fn pluecker_and_all_or_one(r: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for q in [2u32, 3] {
        let f = FieldSpec::of_order(q).unwrap();
        let pts = parabolic_points(&f);
        let lines = parabolic_lines(&f, &pts);
        let sample: Vec<usize> = if q == 2 { (0..lines.len()).collect() } else { (0..300).map(|_| rng.gen_range(0..lines.len())).collect() };
        for &i in &sample {
            let l = &lines[i].0;
            let members = line_points(&f, l);
            for a in &members {
                for b in &members {
                    if a != b {
                        assert_eq!(line_through(&f, a, b).unwrap().gr(), l.gr(), "Pluecker table of line {i}");
                    }
                }
            }
        }
        let mut cases = 0;
        let pairs: Box<dyn Iterator<Item = (usize, usize)>> = if q == 2 {
            Box::new((0..lines.len()).flat_map(|l| (0..pts.len()).map(move |p| (l, p))))
        } else {
            Box::new((0..2000).map(|_| (rng.gen_range(0..lines.len()), rng.gen_range(0..pts.len()))).collect::<Vec<_>>().into_iter())
        };
        for (li, pi) in pairs {
            let members = &lines[li].1;
            if members.contains(&(pi as u32)) {
                continue;
            }
            let meeting = members
                .iter()
                .filter(|&&m| parabolic_polar(&f, pts[pi].coords(), pts[m as usize].coords()).is_zero())
                .count();
            assert!(meeting == 1 || meeting == q as usize + 1, "all-or-one: {meeting} at q={q}");
            cases += 1;
        }
        r.note(format!("q={q}: Pluecker tables consistent on {} lines, all-or-one on {cases} point-line pairs", sample.len()));
    }
}

fn coset_soundness(r: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for q in [2u32, 4, 5] {
        let cg = Class3Group::new(q).unwrap();
        let t = find_triples(&cg).unwrap().triples[0];
        let d = DeltaGeometry::new(&cg, t).unwrap();
        let g = cg.group();
        let elems: Vec<Mat2> = if q == 2 { cg.elements().collect() } else { Vec::new() };
        let pick = |rng: &mut ChaCha8Rng| {
            if q == 2 {
                elems[rng.gen_range(0..elems.len())]
            } else {
                let gens = g.generators();
                (0..40).fold(g.identity(), |acc, _| g.mul(acc, gens[rng.gen_range(0..gens.len())]))
            }
        };
        let mut checked = 0;
        for t in 0..4 {
            let h: HashSet<Mat2> = d.parabolic(t).iter().copied().collect();
            let pairs: Vec<(Mat2, Mat2)> = if q == 2 {
                elems.iter().flat_map(|&x| elems.iter().map(move |&y| (x, y))).step_by(7).collect()
            } else {
                (0..2500).map(|_| (pick(&mut rng), pick(&mut rng))).collect()
            };
            for (x, y) in pairs {
                let rx = d.rep(t, x);
                assert_eq!(d.rep(t, rx), rx, "rep idempotent");
                assert!(h.contains(&g.mul(rx, g.inv(x))), "rep in the coset");
                let same = h.contains(&g.mul(x, g.inv(y)));
                assert_eq!(rx == d.rep(t, y), same, "rep equality matches coset equality");
                checked += 1;
            }
            // equal cosets from a coset neighbour
            let x = pick(&mut rng);
            for &hh in d.parabolic(t) {
                assert_eq!(d.rep(t, g.mul(hh, x)), d.rep(t, x));
            }
        }
        r.note(format!("q={q}: {checked} coset representative pairs checked"));
    }
}

fn absolute_geometry_props(r: &mut Report) {
    // identity on K_{2,3}: the absolute geometry is the original system
    let k23 = IncidenceSystem::from_rank2(2, &[vec![0, 1], vec![0, 1], vec![0, 1]]).unwrap();
    let ag = absolute_geometry(&k23, &Correlation::identity(&k23)).unwrap();
    let flags = ag.flags.len();
    assert_eq!(flags, 5, "identity: one absolute element per element");
    assert!(ag.flags.iter().all(|f| f.len() == 1));
    assert_eq!(ag.system.pairs().len(), k23.pairs().len());
    let mut orbits = ag.type_orbits.clone();
    orbits.sort();
    assert_eq!(orbits, vec![vec![0], vec![1]]);

    let cg = Class3Group::new(2).unwrap();
    let t = find_triples(&cg).unwrap().triples[0];
    let d = DeltaGeometry::new(&cg, t).unwrap();
    let (sys, phi, _) = d.incidence_system(1 << 20).unwrap();
    let phi2 = phi.compose(&phi);
    let a1 = absolute_geometry(&sys, &phi).unwrap();
    let a2 = absolute_geometry(&sys, &phi2).unwrap();
    let mut f1 = a1.flags.clone();
    let mut f2 = a2.flags.clone();
    f1.sort();
    f2.sort();
    assert_eq!(f1, f2, "phi and phi^2 give the same absolute flags");
    r.note(format!(
        "identity on K2,3 gives {flags} absolute flags; triality on the q=2 coset geometry ({} elements) gives {} absolute flags for both phi and phi^2",
        sys.len(),
        f1.len()
    ));
}

fn serialization(r: &mut Report) {
    let m = HexModel::build(2).unwrap();
    let hex = Document::from_rank2("hexagon-moving", 2, &m.moving_absolute()).unwrap().with_metric("diagram", "(5,3,6)");
    let prism = Document::from_graph("prism", 2, &SimpleGraph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]).unwrap());
    let empty = Document::from_graph("empty", 2, &SimpleGraph::empty(0));
    for d in [&hex, &prism, &empty] {
        let text = d.to_json();
        assert_eq!(&Document::from_json(&text).unwrap(), d, "JSON round trip of {}", d.kind);
        assert_eq!(text, d.to_json(), "JSON determinism of {}", d.kind);
        assert_eq!(d.to_dot(), d.to_dot());
    }
    let back = Document::from_rank2("hexagon-moving", 2, &hex.to_rank2().unwrap()).unwrap();
    assert_eq!(back.edges, hex.edges);
    assert_eq!(prism.to_graph().unwrap().edge_count(), 9);
    r.note("JSON and DOT round trips and determinism on hexagon, prism and empty documents");
}

fn c11_properties(r: &mut Report) {
    field_axioms(r);
    pluecker_and_all_or_one(r);
    coset_soundness(r);
    absolute_geometry_props(r);
    serialization(r);
}

fn c12_stretch(r: &mut Report) {
    let classes = class_data(7, r);
    check_paths(r, &classes, 168);
    let small = classes.iter().any(|c| c.graph.vertex_count() == 84 && c.graph.regular_degree() == Some(4) && c.graph.has_perfect_matching());
    let large = classes.iter().find(|c| {
        let g = &c.graph;
        g.vertex_count() == 168 && g.regular_degree() == Some(4) && g.girth() == Dist::Finite(3) && g.diameter().max == 9
    });
    r.note(format!("q=7: 84-vertex 4-regular graph with perfect matching: {small}; 168-vertex graph with girth 3, diam 9: {}", large.is_some()));
    r.require(small || large.is_some(), "q=7: 84v 4-regular with perfect matching, or 168v girth 3 diam 9");
    if let Some(c) = large {
        aut_compare(r, c, 168);
    }

    let classes = class_data(9, r);
    check_paths(r, &classes, 360);
    let hit = classes.iter().any(|c| {
        let g = &c.graph;
        g.vertex_count() == 180 && g.edge_count() == 360 && g.regular_degree() == Some(4) && c.rank2 == Rank2Params::finite(13, 5, 13)
    });
    r.require(hit, "q=9: 180v, 360e, 4-regular, rank2 (13,5,13)");
}

fn main() -> ExitCode {
    // panics are reported on the criterion line
    std::panic::set_hook(Box::new(|_| {}));
    let mut gate = Gate { gating_failed: false };
    gate.run(1, "hexagon counts, q=2", secs(5), true, c1_counts);
    gate.run(2, "hexagon diagrams, q=2 and q=3", secs(60), true, c2_diagrams);
    gate.run(3, "distance-6 witness, q=2", None, true, c3_distance_six);
    gate.run(4, "special planes, q=2 and q=3", None, true, c4_special_planes);
    gate.run(5, "opposite vertices of apartments, q=2", None, true, c5_opposite);
    gate.run(6, "counting bound, q=2", None, true, c6_counting);
    gate.run(7, "closed forms, twisted case", None, true, c7_closed_forms);
    gate.run(8, "class III, q=2", secs(5), true, c8_q2);
    gate.run(9, "class III, q=4", secs(180), true, c9_q4);
    gate.run(10, "class III, q=5", secs(600), true, c10_q5);
    gate.run(11, "property suites", None, true, c11_properties);
    let large = std::env::var("TRIALITY_ALLOW_LARGE").is_ok_and(|v| !v.is_empty() && v != "0");
    if large {
        gate.run(12, "class III, q=7 and q=9", None, false, c12_stretch);
    } else {
        println!("criterion 12: SKIP class III, q=7 and q=9 [stretch, non-gating] (set TRIALITY_ALLOW_LARGE=1)");
    }
    if gate.gating_failed {
        println!("acceptance: gating criteria failed");
        ExitCode::FAILURE
    } else {
        println!("acceptance: all gating criteria passed");
        ExitCode::SUCCESS
    }
}
