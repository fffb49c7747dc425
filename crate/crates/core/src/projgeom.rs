//! Points, lines and planes of PG(6,q) and PG(7,q), the hyperbolic quadric
//! `X0X4 + X1X5 + X2X6 + X3X7 = 0`, its parabolic section, Plücker
//! coordinates, the trilinear form and the Grassmann test for absolute lines.
//!
//! Grassmann coordinates use `X_ij = x_i y_j - x_j y_i`; only `i < j` is
//! stored and `X_ji = -X_ij` is resolved on read. In odd characteristic this
//! sign convention decides which lines pass [`grassmann_absolute`].

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::finfield::{Fe, FieldSpec};

pub const MAX_DIM: usize = 8;

/// Normalized homogeneous coordinates: the first nonzero entry is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    len: u8,
    coords: [Fe; MAX_DIM],
}

impl ProjPoint {
    pub fn new(f: &FieldSpec, coords: &[Fe]) -> Result<Self> {
        if coords.is_empty() || coords.len() > MAX_DIM {
            return Err(Error::WrongDimension { expected: MAX_DIM, got: coords.len() });
        }
        let lead = coords.iter().copied().find(|c| !c.is_zero()).ok_or(Error::ZeroVector)?;
        let s = f.inv_nz(lead);
        let mut out = [Fe::ZERO; MAX_DIM];
        for (o, &c) in out.iter_mut().zip(coords) {
            *o = f.mul(c, s);
        }
        Ok(Self { len: coords.len() as u8, coords: out })
    }

    /// Like [`ProjPoint::new`] for a vector known to be nonzero.
    fn normalized(f: &FieldSpec, coords: &[Fe]) -> Self {
        Self::new(f, coords).expect("nonzero vector")
    }

    /// Basis point `e_i` of a `len`-dimensional coordinate space.
    pub fn unit(len: usize, i: usize) -> Self {
        assert!(i < len && len <= MAX_DIM);
        let mut coords = [Fe::ZERO; MAX_DIM];
        coords[i] = Fe::ONE;
        Self { len: len as u8, coords }
    }

    #[inline]
    pub fn coords(&self) -> &[Fe] {
        &self.coords[..self.len as usize]
    }

    /// Number of homogeneous coordinates (projective dimension + 1).
    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Integer code `Σ c_i q^i`, unique per normalized point.
    pub fn code(&self, q: usize) -> usize {
        self.coords().iter().rev().fold(0, |acc, c| acc * q + c.index())
    }
}

fn expect_len(p: &ProjPoint, n: usize) -> Result<()> {
    if p.len() == n {
        Ok(())
    } else {
        Err(Error::WrongDimension { expected: n, got: p.len() })
    }
}

/// All points of the projective space with `len` homogeneous coordinates,
/// sorted.
pub fn all_points(f: &FieldSpec, len: usize) -> Vec<ProjPoint> {
    let q = f.order();
    let mut out = Vec::new();
    let mut buf = vec![Fe::ZERO; len];
    for lead in 0..len {
        let free = len - lead - 1;
        let count = q.pow(free as u32);
        for idx in 0..count {
            buf.iter_mut().for_each(|c| *c = Fe::ZERO);
            buf[lead] = Fe::ONE;
            let mut v = idx;
            for c in buf[lead + 1..].iter_mut() {
                *c = Fe((v % q) as u16);
                v /= q;
            }
            out.push(ProjPoint::normalized(f, &buf));
        }
    }
    out.sort();
    out
}

/// `X0X4 + X1X5 + X2X6 + X3X7` on PG(7,q).
pub fn quadric_value(f: &FieldSpec, p: &ProjPoint) -> Result<Fe> {
    expect_len(p, 8)?;
    let x = p.coords();
    Ok(f.dot(&x[0..4], &x[4..8]))
}

/// `X0X4 + X1X5 + X2X6 - X3²` on PG(6,q).
pub fn parabolic_value(f: &FieldSpec, p: &ProjPoint) -> Result<Fe> {
    expect_len(p, 7)?;
    let x = p.coords();
    Ok(parabolic_form(f, x))
}

#[inline]
fn parabolic_form(f: &FieldSpec, x: &[Fe]) -> Fe {
    let s = f.dot(&x[0..3], &x[4..7]);
    f.sub(s, f.mul(x[3], x[3]))
}

/// Polar form of the parabolic quadric:
/// `x0y4 + x4y0 + x1y5 + x5y1 + x2y6 + x6y2 - 2x3y3`.
///
/// Two distinct points of Q′ span a line of Q′ iff this vanishes.
#[inline]
pub fn parabolic_polar(f: &FieldSpec, x: &[Fe], y: &[Fe]) -> Fe {
    let a = f.add(f.dot(&x[0..3], &y[4..7]), f.dot(&x[4..7], &y[0..3]));
    let two = f.from_int(2);
    f.sub(a, f.mul(two, f.mul(x[3], y[3])))
}

fn det3(f: &FieldSpec, r: [[Fe; 3]; 3]) -> Fe {
    let m = |a, b| f.mul(a, b);
    let t0 = m(r[0][0], f.sub(m(r[1][1], r[2][2]), m(r[1][2], r[2][1])));
    let t1 = m(r[0][1], f.sub(m(r[1][0], r[2][2]), m(r[1][2], r[2][0])));
    let t2 = m(r[0][2], f.sub(m(r[1][0], r[2][1]), m(r[1][1], r[2][0])));
    f.add(f.sub(t0, t1), t2)
}

/// The trilinear form on PG(7,q) whose vanishing in `Z` encodes incidence
/// between points and one family of solids.
///
/// The second determinant is taken over columns 4, 5, 6 of `X`, `Y`, `Z`.
pub fn trilinear(f: &FieldSpec, x: &ProjPoint, y: &ProjPoint, z: &ProjPoint) -> Result<Fe> {
    for p in [x, y, z] {
        expect_len(p, 8)?;
    }
    let (x, y, z) = (x.coords(), y.coords(), z.coords());
    let rows = |lo: usize| {
        [
            [x[lo], x[lo + 1], x[lo + 2]],
            [y[lo], y[lo + 1], y[lo + 2]],
            [z[lo], z[lo + 1], z[lo + 2]],
        ]
    };
    let mut t = f.add(det3(f, rows(0)), det3(f, rows(4)));
    let pairs = |a: &[Fe], b: &[Fe]| f.dot(&a[0..3], &b[4..7]);
    // X3(Z·Y) + X7(Y·Z) + Y3(X·Z) + Y7(Z·X) + Z3(Y·X) + Z7(X·Y), where
    // (A·B) = A0B4 + A1B5 + A2B6
    t = f.add(t, f.mul(x[3], pairs(z, y)));
    t = f.add(t, f.mul(x[7], pairs(y, z)));
    t = f.add(t, f.mul(y[3], pairs(x, z)));
    t = f.add(t, f.mul(y[7], pairs(z, x)));
    t = f.add(t, f.mul(z[3], pairs(y, x)));
    t = f.add(t, f.mul(z[7], pairs(x, y)));
    t = f.sub(t, f.mul(x[3], f.mul(y[3], z[3])));
    t = f.sub(t, f.mul(x[7], f.mul(y[7], z[7])));
    Ok(t)
}

/// Coefficients `c` with `trilinear(X, Y, Z) = Σ c_i Z_i`.
pub fn trilinear_coeffs(f: &FieldSpec, x: &ProjPoint, y: &ProjPoint) -> Result<[Fe; 8]> {
    expect_len(x, 8)?;
    expect_len(y, 8)?;
    let (x, y) = (x.coords(), y.coords());
    let m = |a, b| f.mul(a, b);
    let minor = |i: usize, j: usize| f.sub(m(x[i], y[j]), m(x[j], y[i]));
    let sum3 = |a: Fe, b: Fe, c: Fe| f.add(f.add(a, b), c);
    Ok([
        sum3(minor(1, 2), m(x[3], y[4]), m(y[7], x[4])),
        sum3(f.neg(minor(0, 2)), m(x[3], y[5]), m(y[7], x[5])),
        sum3(minor(0, 1), m(x[3], y[6]), m(y[7], x[6])),
        f.sub(f.dot(&y[0..3], &x[4..7]), m(x[3], y[3])),
        sum3(minor(5, 6), m(x[7], y[0]), m(y[3], x[0])),
        sum3(f.neg(minor(4, 6)), m(x[7], y[1]), m(y[3], x[1])),
        sum3(minor(4, 5), m(x[7], y[2]), m(y[3], x[2])),
        f.sub(f.dot(&x[0..3], &y[4..7]), m(x[7], y[7])),
    ])
}

/// True iff `trilinear(X, Y, ·)` is the zero form.
pub fn trilinear_vanishes(f: &FieldSpec, x: &ProjPoint, y: &ProjPoint) -> Result<bool> {
    Ok(trilinear_coeffs(f, x, y)?.iter().all(|c| c.is_zero()))
}

#[inline]
fn gr_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// A line given by two spanning points and its canonical Grassmann table.
///
/// Equality and hashing look at the Grassmann table only.
#[derive(Clone, Debug)]
pub struct PlueckerLine {
    basis: (ProjPoint, ProjPoint),
    gr: Vec<Fe>,
}

impl PartialEq for PlueckerLine {
    fn eq(&self, other: &Self) -> bool {
        self.gr == other.gr
    }
}

impl Eq for PlueckerLine {}

impl std::hash::Hash for PlueckerLine {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.gr.hash(state)
    }
}

impl PlueckerLine {
    pub fn basis(&self) -> (ProjPoint, ProjPoint) {
        self.basis
    }

    /// Canonical table, entries `X_ij` for `i < j` in lexicographic order.
    pub fn gr(&self) -> &[Fe] {
        &self.gr
    }

    pub fn dim(&self) -> usize {
        self.basis.0.len()
    }

    /// `X_ij` with `X_ji = -X_ij` and `X_ii = 0`.
    pub fn gr_at(&self, f: &FieldSpec, i: usize, j: usize) -> Fe {
        let n = self.dim();
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.gr[gr_index(n, i, j)],
            std::cmp::Ordering::Greater => f.neg(self.gr[gr_index(n, j, i)]),
            std::cmp::Ordering::Equal => Fe::ZERO,
        }
    }
}

/// Raw (unscaled) Grassmann table of two coordinate vectors.
pub fn grassmann_raw(f: &FieldSpec, x: &[Fe], y: &[Fe]) -> Vec<Fe> {
    let n = x.len();
    let mut gr = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            gr.push(f.sub(f.mul(x[i], y[j]), f.mul(x[j], y[i])));
        }
    }
    gr
}

fn canonical_gr(f: &FieldSpec, mut gr: Vec<Fe>) -> Vec<Fe> {
    if let Some(lead) = gr.iter().copied().find(|c| !c.is_zero()) {
        let s = f.inv_nz(lead);
        gr.iter_mut().for_each(|c| *c = f.mul(*c, s));
    }
    gr
}

pub fn line_through(f: &FieldSpec, p: &ProjPoint, q: &ProjPoint) -> Result<PlueckerLine> {
    expect_len(q, p.len())?;
    if p == q {
        return Err(Error::SamePoints);
    }
    let gr = canonical_gr(f, grassmann_raw(f, p.coords(), q.coords()));
    Ok(PlueckerLine { basis: (*p, *q), gr })
}

/// The `q + 1` points of a line, sorted.
pub fn line_points(f: &FieldSpec, l: &PlueckerLine) -> Vec<ProjPoint> {
    let (a, b) = l.basis;
    let n = a.len();
    let mut out = Vec::with_capacity(f.order() + 1);
    out.push(a);
    let mut buf = [Fe::ZERO; MAX_DIM];
    for lam in f.elements() {
        for i in 0..n {
            buf[i] = f.add(b.coords()[i], f.mul(lam, a.coords()[i]));
        }
        out.push(ProjPoint::normalized(f, &buf[..n]));
    }
    out.sort();
    out
}

/// True iff every point of `l` lies on the parabolic quadric.
pub fn line_on_parabolic(f: &FieldSpec, l: &PlueckerLine) -> Result<bool> {
    if l.dim() != 7 {
        return Err(Error::WrongDimension { expected: 7, got: l.dim() });
    }
    Ok(line_points(f, l)
        .iter()
        .all(|p| parabolic_form(f, p.coords()).is_zero()))
}

/// Pairs `(a, b)` encoding the six relations `X_a = X_b` on Grassmann
/// coordinates that single out absolute lines on Q′.
pub const ABSOLUTE_RELATIONS: [((usize, usize), (usize, usize)); 6] = [
    ((1, 2), (3, 4)),
    ((5, 4), (3, 2)),
    ((2, 0), (3, 5)),
    ((6, 5), (3, 0)),
    ((0, 1), (3, 6)),
    ((4, 6), (3, 1)),
];

/// Evaluates the six relations without checking that the line lies on Q′.
pub fn satisfies_absolute_relations(f: &FieldSpec, l: &PlueckerLine) -> bool {
    ABSOLUTE_RELATIONS
        .iter()
        .all(|&((a, b), (c, d))| l.gr_at(f, a, b) == l.gr_at(f, c, d))
}

/// Absolute-line test for a line of Q′.
pub fn grassmann_absolute(f: &FieldSpec, l: &PlueckerLine) -> Result<bool> {
    if !line_on_parabolic(f, l)? {
        return Err(Error::LineNotOnQuadric);
    }
    Ok(satisfies_absolute_relations(f, l))
}

/// A plane with its full list of `q² + q + 1` points.
#[derive(Clone, Debug)]
pub struct PlaneSpan {
    pub spanning: [ProjPoint; 3],
    pub points: Vec<ProjPoint>,
}

pub fn plane_span(f: &FieldSpec, a: &ProjPoint, b: &ProjPoint, c: &ProjPoint) -> Result<PlaneSpan> {
    expect_len(b, a.len())?;
    expect_len(c, a.len())?;
    let n = a.len();
    let mut pts = std::collections::BTreeSet::new();
    let mut buf = [Fe::ZERO; MAX_DIM];
    for x in f.elements() {
        for y in f.elements() {
            for z in f.elements() {
                if x.is_zero() && y.is_zero() && z.is_zero() {
                    continue;
                }
                for i in 0..n {
                    buf[i] = f.add(
                        f.add(f.mul(x, a.coords()[i]), f.mul(y, b.coords()[i])),
                        f.mul(z, c.coords()[i]),
                    );
                }
                // a vanishing nontrivial combination means the points are dependent
                let p = ProjPoint::new(f, &buf[..n]).map_err(|_| Error::Collinear)?;
                pts.insert(p);
            }
        }
    }
    let q = f.order();
    if pts.len() != q * q + q + 1 {
        return Err(Error::Collinear);
    }
    Ok(PlaneSpan { spanning: [*a, *b, *c], points: pts.into_iter().collect() })
}

/// Sorted points of Q′ in PG(6,q).
pub fn parabolic_points(f: &FieldSpec) -> Vec<ProjPoint> {
    all_points(f, 7)
        .into_iter()
        .filter(|p| parabolic_form(f, p.coords()).is_zero())
        .collect()
}

/// All lines of Q′, deduplicated by canonical Grassmann table, in
/// first-discovery order over the sorted point list. Each entry carries the
/// line and the sorted indices of its points in `points`.
pub fn parabolic_lines(f: &FieldSpec, points: &[ProjPoint]) -> Vec<(PlueckerLine, Vec<u32>)> {
    let q = f.order();
    let mut index = vec![u32::MAX; q.pow(7)];
    for (i, p) in points.iter().enumerate() {
        index[p.code(q)] = i as u32;
    }
    let mut seen: HashMap<Vec<Fe>, usize> = HashMap::new();
    let mut out: Vec<(PlueckerLine, Vec<u32>)> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        for r in points.iter().skip(i + 1) {
            if !parabolic_polar(f, p.coords(), r.coords()).is_zero() {
                continue;
            }
            let gr = canonical_gr(f, grassmann_raw(f, p.coords(), r.coords()));
            if seen.contains_key(&gr) {
                continue;
            }
            let line = PlueckerLine { basis: (*p, *r), gr: gr.clone() };
            let mut members: Vec<u32> = line_points(f, &line)
                .iter()
                .map(|x| index[x.code(q)])
                .collect();
            members.sort_unstable();
            debug_assert!(members.iter().all(|&m| m != u32::MAX));
            debug_assert_eq!(members[0] as usize, i);
            seen.insert(gr, out.len());
            out.push((line, members));
        }
    }
    out
}
