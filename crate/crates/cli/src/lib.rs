//! Pipelines behind the `triality` binary: build a geometry, run the
//! published checks against it and render the result.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{json, Value};

use triality_core::class3::{
    absolute_delta, find_triples, moving_absolute_delta, transitivity_report, Class3Group, DeltaGeometry,
};
use triality_core::finfield::prime_power;
use triality_core::graphtools::SimpleGraph;
use triality_core::hexagon::{
    apartments, check_incident_vertices, check_opposite_vertices, closed_form_counts, counting_bound_check,
    planes_per_moving_line, special_planes, triangle_through, HexModel,
};
use triality_core::incidence::{graph_to_rank2, rank2_params, Dist, IncidenceSystem, Rank2Params};
use triality_core::permgroup::Mat2;
use triality_core::serialize::{render_value, Document};

/// Environment variable that unlocks the large-q runs, like `--allow-large`.
pub const ALLOW_LARGE_ENV: &str = "TRIALITY_ALLOW_LARGE";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Summary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Absolute,
    Moving,
}

/// Rejected before any computation; maps to exit code 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Expected versus computed, shown on failure.
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.to_string(), passed, detail: detail.into() }
    }

    fn status(&self) -> String {
        if self.passed {
            "pass".to_string()
        } else {
            format!("FAIL ({})", self.detail)
        }
    }
}

/// A rendered artifact with the checks and warnings that went into it.
#[derive(Clone, Debug)]
pub struct Run {
    pub artifact: String,
    pub checks: Vec<Check>,
    pub warnings: Vec<String>,
}

impl Run {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }
}

pub fn validate_hexagon(q: u32, allow_large: bool) -> Result<(), UsageError> {
    match q {
        2..=4 => Ok(()),
        5 if allow_large => Ok(()),
        5 => Err(UsageError(format!("hexagon --q 5 needs --allow-large or {ALLOW_LARGE_ENV}=1"))),
        _ => Err(UsageError(format!("hexagon supports q in 2..=4 (5 with --allow-large), got {q}"))),
    }
}

pub fn validate_class3(q: u32, allow_large: bool) -> Result<(), UsageError> {
    if prime_power(q).is_none() || q.pow(3) > 729 {
        return Err(UsageError(format!("class3 supports prime powers q with q^3 <= 729, got {q}")));
    }
    if q > 5 && !allow_large {
        return Err(UsageError(format!("class3 --q {q} needs --allow-large or {ALLOW_LARGE_ENV}=1")));
    }
    Ok(())
}

fn params_string(p: &Rank2Params) -> String {
    p.to_string()
}

fn degree_range(sys: &IncidenceSystem, t: u8) -> (usize, usize) {
    let degs = sys.elements_of_type(t).map(|x| sys.neighbors(x).len());
    degs.fold((usize::MAX, 0), |(lo, hi), d| (lo.min(d), hi.max(d)))
}

fn range_string((lo, hi): (usize, usize)) -> String {
    if lo == hi {
        lo.to_string()
    } else {
        format!("{lo}..{hi}")
    }
}

pub fn hexagon(q: u32, mode: Mode, format: Format) -> anyhow::Result<Run> {
    let m = HexModel::build(q)?;
    let sys = match mode {
        Mode::Moving => m.moving_absolute(),
        Mode::Absolute => m.classical_absolute(),
    };
    let report = rank2_params(&sys)?;
    let (n_points, n_lines) = (sys.count_of_type(0), sys.count_of_type(1));
    let (ppl, lpp) = (degree_range(&sys, 1), degree_range(&sys, 0));
    let qq = q as u64;
    let expected = match mode {
        Mode::Moving => closed_form_counts(qq, qq)?,
        Mode::Absolute => {
            let n = (qq.pow(6) - 1) / (qq - 1);
            (n, n, qq + 1, qq + 1)
        }
    };
    let got = (n_points as u64, n_lines as u64, ppl.0 as u64, lpp.0 as u64);
    let uniform = ppl.0 == ppl.1 && lpp.0 == lpp.1;
    let want_params = match mode {
        Mode::Moving => Rank2Params::finite(5, 3, 6),
        Mode::Absolute => Rank2Params::finite(6, 6, 6),
    };

    let mut checks = vec![
        Check::new("counts", got == expected && uniform, format!("expected {expected:?}, got {got:?}")),
        Check::new(
            "diagram",
            report.params == want_params,
            format!("expected {want_params}, got {}", report.params),
        ),
    ];
    checks.extend(hexagon_lemmas(&m)?);

    let name = match mode {
        Mode::Moving => "hexagon-moving",
        Mode::Absolute => "hexagon-absolute",
    };
    let mut doc = Document::from_rank2(name, q, &sys)?
        .with_metric("headline", format!("{n_points} points, {n_lines} lines, {}", params_string(&report.params)))
        .with_metric("points", n_points)
        .with_metric("lines", n_lines)
        .with_metric("points_per_line", range_string(ppl))
        .with_metric("lines_per_point", range_string(lpp))
        .with_metric("diagram", params_string(&report.params))
        .with_metric("connected", report.connected);
    for c in &checks {
        doc = doc.with_metric(&format!("check.{}", c.name), c.status());
    }
    let artifact = render(&doc, format);
    Ok(Run { artifact, checks, warnings: Vec::new() })
}

/// The lemma table: special planes, a distance-6 witness, opposite points
/// in apartments, the counting bound, incident vertices and triangles.
fn hexagon_lemmas(m: &HexModel) -> anyhow::Result<Vec<Check>> {
    let q = m.q();
    let mut out = Vec::new();

    let planes = special_planes(m)?;
    let per_line = planes_per_moving_line(m, &planes);
    let bad_lines = per_line.iter().filter(|p| p.len() != 1).count();
    let bad_planes = planes.iter().filter(|p| p.moving_lines.len() != (q * q) as usize).count();
    out.push(Check::new(
        "special_planes",
        bad_lines == 0 && bad_planes == 0,
        format!("{bad_lines} moving lines not in exactly one plane, {bad_planes} planes without {} moving lines", q * q),
    ));

    let witness = m
        .unit_line(4, 5)
        .zip(m.unit_line(0, 1))
        .and_then(|(a, b)| Some((m.moving_element(a)?, m.moving_element(b)?)))
        .map(|(a, b)| m.moving_absolute().distance(a, b));
    out.push(Check::new(
        "distance_six",
        witness == Some(Dist::Finite(6)),
        format!("expected distance 6 between e5e6 and e1e2, got {witness:?}"),
    ));

    let limit = if q == 2 { None } else { Some(200) };
    let hexes = apartments(m, limit);
    let opposite = check_opposite_vertices(m, &hexes);
    out.push(Check::new(
        "opposite_vertices",
        opposite.is_ok() && !hexes.is_empty(),
        match &opposite {
            Ok(r) => format!("{} hexagons", r.hexagons),
            Err(e) => e.to_string(),
        },
    ));

    let sample = if q == 2 { None } else { Some(20) };
    let counting = counting_bound_check(m, sample);
    out.push(Check::new(
        "counting_bound",
        counting.is_ok(),
        counting.map(|r| format!("max {} <= {}", r.max_within_4, r.bound)).unwrap_or_else(|e| e.to_string()),
    ));

    let incident = check_incident_vertices(m);
    out.push(Check::new("incident_vertices", incident.is_ok(), incident.err().map(|e| e.to_string()).unwrap_or_default()));

    let missing = (0..m.points().len() as u32).filter(|&p| triangle_through(m, p).is_none()).count();
    out.push(Check::new("triangles", missing == 0, format!("{missing} points on no moving triangle")));
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TripleSel {
    All,
    Index(usize),
}

impl std::str::FromStr for TripleSel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            return Ok(TripleSel::All);
        }
        s.parse().map(TripleSel::Index).map_err(|_| format!("expected `all` or an index, got `{s}`"))
    }
}

/// Invariants of one moving graph.
#[derive(Clone, Debug)]
pub struct GraphStats {
    pub vertices: usize,
    pub edges: usize,
    pub degrees: Vec<usize>,
    pub girth: Dist,
    pub diameter: u32,
    pub component_diameters: Vec<u32>,
    pub components: usize,
    pub rank2: Rank2Params,
    pub perfect_matching: bool,
}

impl GraphStats {
    pub fn of(g: &SimpleGraph) -> Self {
        let mut degrees = g.degrees();
        degrees.sort_unstable();
        degrees.dedup();
        let dia = g.diameter();
        let rank2 = rank2_params(&graph_to_rank2(g)).expect("rank 2").params;
        Self {
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            degrees,
            girth: g.girth(),
            diameter: dia.max,
            component_diameters: dia.per_component,
            components: g.components().len(),
            rank2,
            perfect_matching: g.has_perfect_matching(),
        }
    }

    pub fn regular(&self) -> Option<usize> {
        match self.degrees[..] {
            [k] => Some(k),
            _ => None,
        }
    }

    /// Short description, like `30v, 60e, 4-regular, girth 5, diam 3`.
    pub fn describe(&self) -> String {
        if self.vertices == 0 {
            return "empty".to_string();
        }
        let mut s = format!("{}v, {}e", self.vertices, self.edges);
        if let Some(k) = self.regular() {
            write!(s, ", {k}-regular").unwrap();
        }
        write!(s, ", girth {}, diam {}", self.girth, self.diameter).unwrap();
        if self.components > 1 {
            write!(s, ", {} components", self.components).unwrap();
        }
        if self.vertices == 6 && self.regular() == Some(3) && self.girth == Dist::Finite(3) {
            // the only cubic graph on six vertices with a triangle
            s = format!("prism ({}v, {}e)", self.vertices, self.edges);
        }
        s
    }
}

/// One admissible triple class with its two derived graphs.
#[derive(Clone, Debug)]
pub struct ClassResult {
    pub index: usize,
    pub triple: [Mat2; 3],
    pub parabolic_orders: [usize; 4],
    pub absolute_vertices: usize,
    pub fixed_edges: usize,
    pub paths: Option<usize>,
    pub absolute_graph: SimpleGraph,
    pub moving: GraphStats,
    pub moving_graph: SimpleGraph,
    pub fixed_order: usize,
    pub fixed_vertex_orbits: usize,
    pub fixed_arc_orbits: usize,
    pub aut_order: Option<String>,
    pub aut_vertex_orbits: Option<usize>,
    pub aut_arc_orbits: Option<usize>,
}

impl ClassResult {
    pub fn vertex_transitive(&self) -> bool {
        self.fixed_vertex_orbits == 1 || self.aut_vertex_orbits == Some(1)
    }

    pub fn arc_transitive(&self) -> bool {
        self.fixed_arc_orbits == 1 || self.aut_arc_orbits == Some(1)
    }
}

/// Runs the search and the per-class pipeline. Fails with a usage error
/// when `sel` names a class that does not exist.
pub fn class3_results(q: u32, sel: TripleSel) -> anyhow::Result<(Vec<ClassResult>, usize)> {
    let cg = Class3Group::new(q)?;
    let search = find_triples(&cg)?;
    let total = search.triples.len();
    let chosen: Vec<usize> = match sel {
        TripleSel::All => (0..total).collect(),
        TripleSel::Index(i) if i < total => vec![i],
        TripleSel::Index(i) if total == 0 && i == 0 => Vec::new(),
        TripleSel::Index(i) => {
            return Err(UsageError(format!("triple index {i} out of range ({total} classes)")).into());
        }
    };
    let mut out = Vec::new();
    for index in chosen {
        let t = search.triples[index];
        let d = DeltaGeometry::new(&cg, t)?;
        let abs = absolute_delta(&d)?;
        let mg = moving_absolute_delta(&d, 0)?;
        let (rep, _) = transitivity_report(&d, &mg)?;
        out.push(ClassResult {
            index,
            triple: [t.rho0, t.rho1, t.rho2],
            parabolic_orders: [0, 1, 2, 3].map(|i| d.parabolic(i).len()),
            absolute_vertices: abs.vertices.len(),
            fixed_edges: abs.fixed_edges.len(),
            paths: abs.paths_of_length_two,
            absolute_graph: abs.graph,
            moving: GraphStats::of(&mg.graph),
            moving_graph: mg.graph,
            fixed_order: rep.fixed_order,
            fixed_vertex_orbits: rep.fixed_vertex_orbits,
            fixed_arc_orbits: rep.fixed_arc_orbits,
            aut_order: rep.aut_order,
            aut_vertex_orbits: rep.aut_vertex_orbits,
            aut_arc_orbits: rep.aut_arc_orbits,
        });
    }
    Ok((out, total))
}

/// Published values for the moving graphs, checked when all classes are
/// computed. Aut orders and the q = 4 structure only produce warnings.
pub fn class3_checks(q: u32, classes: &[ClassResult], all: bool) -> (Vec<Check>, Vec<String>) {
    let mut checks = Vec::new();
    let mut warnings = Vec::new();
    for c in classes {
        let half = c.fixed_order / 2;
        checks.push(Check::new(
            &format!("class{}.absolute_paths", c.index),
            c.paths == Some(half) && c.fixed_edges == c.fixed_order,
            format!(
                "expected {half} paths and {} fixed edges, got {:?} and {}",
                c.fixed_order, c.paths, c.fixed_edges
            ),
        ));
    }
    if !all {
        return (checks, warnings);
    }
    let find = |f: &dyn Fn(&ClassResult) -> bool| classes.iter().find(|c| f(c));
    let aut_warn = |warnings: &mut Vec<String>, c: &ClassResult, want: u64| {
        if c.aut_order.as_deref() != Some(want.to_string().as_str()) {
            warnings.push(format!(
                "class {}: aut order {} differs from published {want}",
                c.index,
                c.aut_order.as_deref().unwrap_or("not computed")
            ));
        }
    };
    match q {
        2 => {
            checks.push(Check::new("classes", classes.len() == 1, format!("expected 1 class, got {}", classes.len())));
            let prism = find(&|c| {
                let m = &c.moving;
                m.vertices == 6
                    && m.edges == 9
                    && m.regular() == Some(3)
                    && m.girth == Dist::Finite(3)
                    && m.diameter == 2
                    && c.aut_order.as_deref() == Some("12")
            });
            checks.push(Check::new(
                "prism",
                prism.is_some() && classes.iter().all(|c| c.paths == Some(3) && c.fixed_edges == 6),
                "expected 3 paths and a prism with 6v, 9e, girth 3, diam 2, aut 12",
            ));
        }
        4 => {
            let hit = find(&|c| c.moving.vertices == 90 && c.moving.edges == 75);
            checks.push(Check::new("90v_75e", hit.is_some(), "expected a class with 90v, 75e"));
            if let Some(c) = hit {
                let m = &c.moving;
                if m.regular() != Some(3) {
                    warnings.push(format!("class {}: published degree 3, computed degrees {:?}", c.index, m.degrees));
                }
                if m.diameter != 7 {
                    warnings.push(format!(
                        "class {}: published diameter 7, computed {} over {} components",
                        c.index, m.diameter, m.components
                    ));
                }
                aut_warn(&mut warnings, c, 120);
            }
        }
        5 => {
            let a = find(&|c| {
                let m = &c.moving;
                m.vertices == 30 && m.edges == 60 && m.regular() == Some(4) && m.rank2 == Rank2Params::finite(7, 5, 8)
            });
            checks.push(Check::new("30v_60e", a.is_some(), "expected a class with 30v, 60e, 4-regular, (7,5,8)"));
            if let Some(c) = a {
                aut_warn(&mut warnings, c, 240);
                if !c.arc_transitive() {
                    warnings.push(format!("class {}: not arc-transitive", c.index));
                }
                if c.fixed_arc_orbits != 1 {
                    warnings.push(format!(
                        "class {}: fixed subgroup of order {} has {} arc orbits",
                        c.index, c.fixed_order, c.fixed_arc_orbits
                    ));
                }
            }
            let b = find(&|c| {
                let m = &c.moving;
                m.vertices == 60 && m.girth == Dist::Finite(3) && m.diameter == 8 && m.components == 1
            });
            checks.push(Check::new("60v_girth3_diam8", b.is_some(), "expected a class with 60v, girth 3, diam 8"));
            if let Some(c) = b {
                aut_warn(&mut warnings, c, 120);
                if !c.vertex_transitive() {
                    warnings.push(format!("class {}: not vertex-transitive", c.index));
                }
            }
        }
        7 => {
            let small = find(&|c| c.moving.vertices == 84 && c.moving.regular() == Some(4) && c.moving.perfect_matching);
            let large = find(&|c| {
                let m = &c.moving;
                m.vertices == 168 && m.girth == Dist::Finite(3) && m.diameter == 9
            });
            checks.push(Check::new(
                "84v_or_168v",
                small.is_some() || large.is_some(),
                "expected 84v 4-regular with a perfect matching, or 168v girth 3 diam 9",
            ));
            if let Some(c) = large {
                aut_warn(&mut warnings, c, 168);
            }
        }
        9 => {
            let hit = find(&|c| {
                let m = &c.moving;
                m.vertices == 180 && m.edges == 360 && m.regular() == Some(4) && m.rank2 == Rank2Params::finite(13, 5, 13)
            });
            checks.push(Check::new("180v_360e", hit.is_some(), "expected 180v, 360e, 4-regular, (13,5,13)"));
        }
        _ => {}
    }
    (checks, warnings)
}

fn mat_json(m: &Mat2) -> Value {
    json!(m.0.iter().map(|e| e.0).collect::<Vec<_>>())
}

fn class_metrics(c: &ClassResult) -> BTreeMap<String, Value> {
    let m = &c.moving;
    let mut out = BTreeMap::new();
    let mut put = |k: &str, v: Value| {
        out.insert(k.to_string(), v);
    };
    put("description", json!(m.describe()));
    put("degrees", json!(m.degrees));
    put("girth", json!(m.girth.to_string()));
    put("diameter", json!(m.diameter));
    put("component_diameters", json!(m.component_diameters));
    put("components", json!(m.components));
    put("rank2", json!(m.rank2.to_string()));
    put("perfect_matching", json!(m.perfect_matching));
    put("aut_order", c.aut_order.as_ref().map_or(Value::Null, |a| json!(a)));
    put("fixed_order", json!(c.fixed_order));
    put("fixed_vertex_orbits", json!(c.fixed_vertex_orbits));
    put("fixed_arc_orbits", json!(c.fixed_arc_orbits));
    put("aut_vertex_orbits", json!(c.aut_vertex_orbits));
    put("aut_arc_orbits", json!(c.aut_arc_orbits));
    put("vertex_transitive", json!(c.vertex_transitive()));
    put("arc_transitive", json!(c.arc_transitive()));
    out
}

pub fn class3_headline(classes: &[ClassResult], total: usize) -> String {
    if total == 0 {
        return "none found".to_string();
    }
    let noun = if total == 1 { "class" } else { "classes" };
    let parts: Vec<String> = classes
        .iter()
        .map(|c| {
            let paths = c.paths.map_or("not paths".to_string(), |p| format!("{p} paths"));
            if classes.len() == 1 {
                format!("absolute: {paths}; moving: {}", c.moving.describe())
            } else {
                format!("class {}: absolute: {paths}; moving: {}", c.index, c.moving.describe())
            }
        })
        .collect();
    let mut s = format!("{total} triple {noun}");
    for p in parts {
        write!(s, "; {p}").unwrap();
    }
    s
}

pub fn class3(q: u32, sel: TripleSel, format: Format) -> anyhow::Result<Run> {
    let (classes, total) = class3_results(q, sel)?;
    let (checks, warnings) = class3_checks(q, &classes, sel == TripleSel::All);
    let headline = class3_headline(&classes, total);
    let docs: Vec<(Document, Document)> = classes
        .iter()
        .map(|c| {
            let abs = Document::from_graph("class3-absolute", q, &c.absolute_graph)
                .with_metric("class", c.index)
                .with_metric("paths", c.paths.map_or(Value::Null, |p| json!(p)))
                .with_metric("fixed_edges", c.fixed_edges);
            let mut mov = Document::from_graph("class3-moving", q, &c.moving_graph).with_metric("class", c.index);
            mov.metrics.extend(class_metrics(c));
            (abs, mov)
        })
        .collect();

    let artifact = match format {
        Format::Json => {
            let entries: Vec<Value> = classes
                .iter()
                .zip(&docs)
                .map(|(c, (abs, mov))| {
                    json!({
                        "index": c.index,
                        "triple": {"rho0": mat_json(&c.triple[0]), "rho1": mat_json(&c.triple[1]), "rho2": mat_json(&c.triple[2])},
                        "parabolic_orders": c.parabolic_orders,
                        "absolute": abs,
                        "moving": mov,
                    })
                })
                .collect();
            let check_map: BTreeMap<String, String> = checks.iter().map(|c| (c.name.clone(), c.status())).collect();
            let v = json!({
                "type": "class3",
                "q": q,
                "headline": headline,
                "triple_classes": total,
                "classes": entries,
                "checks": check_map,
                "warnings": warnings,
            });
            let mut s = serde_json::to_string_pretty(&v)?;
            s.push('\n');
            s
        }
        Format::Dot => {
            let mut s = format!("// {headline}\n");
            for c in &checks {
                writeln!(s, "// check.{}: {}", c.name, c.status()).unwrap();
            }
            for w in &warnings {
                writeln!(s, "// warning: {w}").unwrap();
            }
            for (c, (abs, mov)) in classes.iter().zip(&docs) {
                s.push_str(&abs.to_dot().replacen("_q", &format!("_c{}_q", c.index), 1));
                s.push_str(&mov.to_dot().replacen("_q", &format!("_c{}_q", c.index), 1));
            }
            s
        }
        Format::Summary => {
            let mut s = String::new();
            writeln!(s, "type: class3").unwrap();
            writeln!(s, "q: {q}").unwrap();
            writeln!(s, "headline: {headline}").unwrap();
            writeln!(s, "triple_classes: {total}").unwrap();
            for (c, (_, mov)) in classes.iter().zip(&docs) {
                let i = c.index;
                let [r0, r1, r2] = c.triple;
                writeln!(s, "class.{i}.triple: rho0={} rho1={} rho2={}", mat_json(&r0), mat_json(&r1), mat_json(&r2)).unwrap();
                writeln!(s, "class.{i}.parabolic_orders: {}", json!(c.parabolic_orders)).unwrap();
                writeln!(s, "class.{i}.absolute.vertices: {}", c.absolute_vertices).unwrap();
                writeln!(s, "class.{i}.absolute.fixed_edges: {}", c.fixed_edges).unwrap();
                writeln!(s, "class.{i}.absolute.paths: {}", c.paths.map_or("none".to_string(), |p| p.to_string())).unwrap();
                writeln!(s, "class.{i}.moving.vertices: {}", c.moving.vertices).unwrap();
                writeln!(s, "class.{i}.moving.edges: {}", c.moving.edges).unwrap();
                for (k, v) in &mov.metrics {
                    if k != "class" {
                        writeln!(s, "class.{i}.moving.{k}: {}", render_value(v)).unwrap();
                    }
                }
            }
            for c in &checks {
                writeln!(s, "check.{}: {}", c.name, c.status()).unwrap();
            }
            for w in &warnings {
                writeln!(s, "warning: {w}").unwrap();
            }
            s
        }
    };
    Ok(Run { artifact, checks, warnings })
}

fn render(doc: &Document, format: Format) -> String {
    match format {
        Format::Json => doc.to_json(),
        Format::Dot => doc.to_dot(),
        Format::Summary => doc.to_summary(),
    }
}
