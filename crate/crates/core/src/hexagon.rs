//! The split Cayley hexagon on the parabolic quadric of PG(6,q) and the
//! moving geometry formed by the remaining lines of the quadric.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finfield::{Fe, FieldSpec};
use crate::incidence::IncidenceSystem;
use crate::projgeom::{
    line_through, parabolic_lines, parabolic_points, parabolic_polar, plane_span, satisfies_absolute_relations,
    PlueckerLine, ProjPoint,
};

/// A line of the quadric with the indices of its points.
#[derive(Clone, Debug)]
pub struct HexLine {
    pub line: PlueckerLine,
    pub points: Vec<u32>,
    pub absolute: bool,
}

/// Points and lines of the parabolic quadric over GF(q), with every line
/// marked absolute (a hexagon line) or moving.
#[derive(Clone, Debug)]
pub struct HexModel {
    field: FieldSpec,
    points: Vec<ProjPoint>,
    lines: Vec<HexLine>,
    point_index: Vec<u32>,
    line_index: HashMap<Vec<Fe>, u32>,
    lines_at: Vec<Vec<u32>>,
    absolute_ids: Vec<u32>,
    moving_ids: Vec<u32>,
}

impl HexModel {
    /// Supported for q in {2, 3, 4, 5}.
    pub fn build(q: u32) -> Result<Self> {
        if !(2..=5).contains(&q) {
            return Err(Error::UnsupportedOrder(q));
        }
        let field = FieldSpec::of_order(q)?;
        let points = parabolic_points(&field);
        let mut point_index = vec![u32::MAX; (q as usize).pow(7)];
        for (i, p) in points.iter().enumerate() {
            point_index[p.code(q as usize)] = i as u32;
        }
        let mut lines = Vec::new();
        let mut line_index = HashMap::new();
        let mut lines_at = vec![Vec::new(); points.len()];
        let (mut absolute_ids, mut moving_ids) = (Vec::new(), Vec::new());
        for (line, pts) in parabolic_lines(&field, &points) {
            let id = lines.len() as u32;
            let absolute = satisfies_absolute_relations(&field, &line);
            for &p in &pts {
                lines_at[p as usize].push(id);
            }
            if absolute {
                absolute_ids.push(id);
            } else {
                moving_ids.push(id);
            }
            line_index.insert(line.gr().to_vec(), id);
            lines.push(HexLine { line, points: pts, absolute });
        }
        Ok(Self { field, points, lines, point_index, line_index, lines_at, absolute_ids, moving_ids })
    }

    pub fn q(&self) -> u32 {
        self.field.order() as u32
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn lines(&self) -> &[HexLine] {
        &self.lines
    }

    /// Line ids of the hexagon lines, ascending.
    pub fn absolute_ids(&self) -> &[u32] {
        &self.absolute_ids
    }

    /// Line ids of the moving lines, ascending.
    pub fn moving_ids(&self) -> &[u32] {
        &self.moving_ids
    }

    pub fn lines_at(&self, p: u32) -> &[u32] {
        &self.lines_at[p as usize]
    }

    pub fn point_id(&self, p: &ProjPoint) -> Option<u32> {
        if p.len() != 7 {
            return None;
        }
        let i = self.point_index[p.code(self.q() as usize)];
        (i != u32::MAX).then_some(i)
    }

    pub fn line_id(&self, l: &PlueckerLine) -> Option<u32> {
        self.line_index.get(l.gr()).copied()
    }

    /// The quadric line through two points, if there is one.
    pub fn line_joining(&self, a: u32, b: u32) -> Option<u32> {
        if a == b {
            return None;
        }
        let (pa, pb) = (&self.points[a as usize], &self.points[b as usize]);
        if !parabolic_polar(&self.field, pa.coords(), pb.coords()).is_zero() {
            return None;
        }
        self.line_id(&line_through(&self.field, pa, pb).ok()?)
    }

    /// The quadric line through unit points `e_i` and `e_j` (0-based), if
    /// both lie on the quadric and are collinear on it.
    pub fn unit_line(&self, i: usize, j: usize) -> Option<u32> {
        let a = self.point_id(&ProjPoint::unit(7, i))?;
        let b = self.point_id(&ProjPoint::unit(7, j))?;
        self.line_joining(a, b)
    }

    /// Element id of a moving line in [`Self::moving_absolute`].
    pub fn moving_element(&self, line: u32) -> Option<u32> {
        let i = self.moving_ids.binary_search(&line).ok()?;
        Some((self.points.len() + i) as u32)
    }

    fn rank2(&self, ids: &[u32]) -> IncidenceSystem {
        let lines: Vec<Vec<u32>> = ids.iter().map(|&i| self.lines[i as usize].points.clone()).collect();
        IncidenceSystem::from_rank2(self.points.len(), &lines).expect("points of a line are distinct")
    }

    /// Points and hexagon lines. Element `n_points + i` is line
    /// `absolute_ids()[i]`.
    pub fn classical_absolute(&self) -> IncidenceSystem {
        self.rank2(&self.absolute_ids)
    }

    /// Points and moving lines. Element `n_points + i` is line
    /// `moving_ids()[i]`.
    pub fn moving_absolute(&self) -> IncidenceSystem {
        self.rank2(&self.moving_ids)
    }

    /// Points joined to `p` by a moving line, sorted.
    pub fn moving_neighbors(&self, p: u32) -> Vec<u32> {
        let mut out: Vec<u32> = self.lines_at[p as usize]
            .iter()
            .filter(|&&l| !self.lines[l as usize].absolute)
            .flat_map(|&l| self.lines[l as usize].points.iter().copied())
            .filter(|&x| x != p)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// `((k²f²+kf+1)(f+1), (k²f²+kf+1)(f+1)f², k+1, (k+1)f²)`: points, lines,
/// points per line and lines per point of the moving geometry.
pub fn closed_form_counts(k: u64, f: u64) -> Result<(u64, u64, u64, u64)> {
    if k == 0 || (f != k && Some(f) != k.checked_pow(3)) {
        return Err(Error::InvalidFieldPair { k, f });
    }
    let points = (k * k * f * f + k * f + 1) * (f + 1);
    Ok((points, points * f * f, k + 1, (k + 1) * f * f))
}

/// The plane spanned by the hexagon lines through `apex`.
#[derive(Clone, Debug)]
pub struct SpecialPlane {
    pub apex: u32,
    pub points: Vec<u32>,
    pub absolute_lines: Vec<u32>,
    pub moving_lines: Vec<u32>,
}

/// One special plane per point, with the moving lines contained in it.
pub fn special_planes(m: &HexModel) -> Result<Vec<SpecialPlane>> {
    let f = &m.field;
    let mut out = Vec::with_capacity(m.points.len());
    for apex in 0..m.points.len() as u32 {
        let abs: Vec<u32> = m.lines_at(apex).iter().copied().filter(|&l| m.lines[l as usize].absolute).collect();
        if abs.len() < 2 {
            return Err(Error::ModelCorruption(format!("point {apex} is on {} hexagon lines", abs.len())));
        }
        let other = |l: u32| *m.lines[l as usize].points.iter().find(|&&x| x != apex).unwrap();
        let span = plane_span(
            f,
            &m.points[apex as usize],
            &m.points[other(abs[0]) as usize],
            &m.points[other(abs[1]) as usize],
        )
        .map_err(|e| Error::ModelCorruption(format!("special plane at {apex}: {e}")))?;
        let mut points = Vec::with_capacity(span.points.len());
        for p in &span.points {
            points.push(m.point_id(p).ok_or_else(|| {
                Error::ModelCorruption(format!("special plane at {apex} leaves the quadric"))
            })?);
        }
        points.sort_unstable();
        let inside: HashSet<u32> = points.iter().copied().collect();
        let mut lines: Vec<u32> = points
            .iter()
            .flat_map(|&p| m.lines_at(p).iter().copied())
            .filter(|&l| m.lines[l as usize].points.iter().all(|p| inside.contains(p)))
            .collect();
        lines.sort_unstable();
        lines.dedup();
        let (absolute_lines, moving_lines) = lines.into_iter().partition(|&l| m.lines[l as usize].absolute);
        out.push(SpecialPlane { apex, points, absolute_lines, moving_lines });
    }
    Ok(out)
}

/// For each moving line (in `moving_ids()` order), the apexes of the special
/// planes containing it.
pub fn planes_per_moving_line(m: &HexModel, planes: &[SpecialPlane]) -> Vec<Vec<u32>> {
    let pos: HashMap<u32, usize> = m.moving_ids.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let mut out = vec![Vec::new(); m.moving_ids.len()];
    for sp in planes {
        for l in &sp.moving_lines {
            out[pos[l]].push(sp.apex);
        }
    }
    out
}

/// Ordinary hexagons (apartments) of the hexagon geometry, as cyclic
/// sequences of six points with consecutive points on a hexagon line.
/// Enumerated from opposite point pairs in ascending order and deduplicated,
/// stopping after `limit` when given.
pub fn apartments(m: &HexModel, limit: Option<usize>) -> Vec<[u32; 6]> {
    let sys = m.classical_absolute();
    let n = m.points.len() as u32;
    let mut seen: HashSet<[u32; 6]> = HashSet::new();
    let mut out = Vec::new();
    for y in 0..n {
        let dy = sys.distances_from(y);
        for x in 0..y {
            if dy[x as usize] != 6 {
                continue;
            }
            // one geodesic x - a - b - y per line through x
            let geodesics: Vec<[u32; 2]> = sys
                .neighbors(x)
                .iter()
                .map(|&l| {
                    let mut cur = l;
                    let mut pts = Vec::new();
                    while cur != y {
                        cur = *sys.neighbors(cur).iter().find(|&&z| dy[z as usize] + 1 == dy[cur as usize]).unwrap();
                        if cur < n && cur != y {
                            pts.push(cur);
                        }
                    }
                    [pts[0], pts[1]]
                })
                .collect();
            for (i, g1) in geodesics.iter().enumerate() {
                for g2 in &geodesics[i + 1..] {
                    let cyc = [x, g1[0], g1[1], y, g2[1], g2[0]];
                    let mut key = cyc;
                    key.sort_unstable();
                    if seen.insert(key) {
                        out.push(cyc);
                        if limit.is_some_and(|l| out.len() >= l) {
                            return out;
                        }
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OppositeReport {
    pub hexagons: usize,
    pub opposite_chords: usize,
    pub distance2_chords: usize,
}

/// In every listed hexagon, opposite points must not be joined by a quadric
/// line and points two apart must be joined by a moving line.
pub fn check_opposite_vertices(m: &HexModel, hexagons: &[[u32; 6]]) -> Result<OppositeReport> {
    let f = &m.field;
    for h in hexagons {
        for i in 0..6 {
            let (a, b) = (&m.points[h[i] as usize], &m.points[h[(i + 3) % 6] as usize]);
            if parabolic_polar(f, a.coords(), b.coords()).is_zero() {
                return Err(Error::PropertyViolation(format!("opposite points of hexagon {h:?} are collinear on the quadric")));
            }
            match m.line_joining(h[i], h[(i + 2) % 6]) {
                Some(l) if !m.lines[l as usize].absolute => {}
                _ => {
                    return Err(Error::PropertyViolation(format!(
                        "points {} and {} of hexagon {h:?} are not on a moving line",
                        h[i],
                        h[(i + 2) % 6]
                    )))
                }
            }
        }
    }
    Ok(OppositeReport { hexagons: hexagons.len(), opposite_chords: 3 * hexagons.len(), distance2_chords: 6 * hexagons.len() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountingReport {
    pub bound: u64,
    pub lines_checked: usize,
    pub max_within_4: u64,
}

/// `1 + (k+1)(C-1) + k(k+1)(C-1)²` with `C = (k+1)f²`, here `k = f = q`.
pub fn counting_bound(q: u64) -> u64 {
    let c = (q + 1) * q * q;
    1 + (q + 1) * (c - 1) + q * (q + 1) * (c - 1) * (c - 1)
}

/// Counts moving lines within distance 4 of each of the first `sample`
/// moving lines (all when `None`) and compares with [`counting_bound`].
pub fn counting_bound_check(m: &HexModel, sample: Option<usize>) -> Result<CountingReport> {
    let sys = m.moving_absolute();
    let n = m.points.len();
    let bound = counting_bound(m.q() as u64);
    let take = sample.unwrap_or(m.moving_ids.len()).min(m.moving_ids.len());
    let mut max_within_4 = 0;
    for i in 0..take {
        let d = sys.distances_from((n + i) as u32);
        let count = d[n..].iter().filter(|&&x| x <= 4).count() as u64;
        if count > bound {
            return Err(Error::PropertyViolation(format!("line {i} has {count} lines within distance 4 > {bound}")));
        }
        max_within_4 = max_within_4.max(count);
    }
    Ok(CountingReport { bound, lines_checked: take, max_within_4 })
}

/// Number of elements at each distance from `x` in the incidence graph.
pub fn distance_profile(sys: &IncidenceSystem, x: u32) -> Vec<usize> {
    let mut prof = Vec::new();
    for d in sys.distances_from(x) {
        if d == u32::MAX {
            continue;
        }
        if prof.len() <= d as usize {
            prof.resize(d as usize + 1, 0);
        }
        prof[d as usize] += 1;
    }
    prof
}

/// Some triangle of moving lines through `p`: points `p, a, b` pairwise on
/// distinct moving lines.
pub fn triangle_through(m: &HexModel, p: u32) -> Option<(u32, u32)> {
    let nb = m.moving_neighbors(p);
    for (i, &a) in nb.iter().enumerate() {
        let la = m.line_joining(p, a)?;
        for &b in &nb[i + 1..] {
            if m.lines[la as usize].points.contains(&b) {
                continue;
            }
            if let Some(l) = m.line_joining(a, b) {
                if !m.lines[l as usize].absolute {
                    return Some((a, b));
                }
            }
        }
    }
    None
}

/// Every pair of points on a hexagon line has a common neighbor through
/// moving lines.
pub fn check_incident_vertices(m: &HexModel) -> Result<usize> {
    let mut pairs = 0;
    for &l in &m.absolute_ids {
        let pts = &m.lines[l as usize].points;
        for (i, &a) in pts.iter().enumerate() {
            let na = m.moving_neighbors(a);
            for &b in &pts[i + 1..] {
                let nb = m.moving_neighbors(b);
                if !na.iter().any(|x| nb.binary_search(x).is_ok()) {
                    return Err(Error::PropertyViolation(format!(
                        "points {a}, {b} of hexagon line {l} have no common moving neighbor"
                    )));
                }
                pairs += 1;
            }
        }
    }
    Ok(pairs)
}
