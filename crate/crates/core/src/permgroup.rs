//! Permutations, stabilizer chains, PSL(2,Q) as 2x2 matrices and as
//! Moebius permutations of the projective line, coset representatives and
//! the semilinear automorphisms of PSL(2,Q).

use std::collections::HashSet;
use std::fmt;
use std::hash::Hash;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::finfield::{prime_power, Fe, FieldSpec};

/// A permutation of `0..n`. Products compose as functions:
/// `a.mul(&b)` applies `b` first, then `a`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.0)
    }
}

impl Perm {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x as usize >= n || std::mem::replace(&mut seen[x as usize], true) {
                return Err(Error::NotAPermutation);
            }
        }
        Ok(Self(images))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n as u32).collect())
    }

    /// Cycle notation on `0..n`.
    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut img: Vec<u32> = (0..n as u32).collect();
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                let y = c[(i + 1) % c.len()];
                if x as usize >= n || y as usize >= n {
                    return Err(Error::NotAPermutation);
                }
                img[x as usize] = y;
            }
        }
        Self::new(img)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.0[x as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inv(&self) -> Perm {
        let mut out = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[x as usize] = i as u32;
        }
        Perm(out)
    }

    pub fn pow(&self, mut e: u64) -> Perm {
        let mut base = self.clone();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `self * g * self^-1`.
    pub fn conj(&self, g: &Perm) -> Perm {
        self.mul(g).mul(&self.inv())
    }

    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.0.len()];
        let mut l: u64 = 1;
        for s in 0..self.0.len() {
            if seen[s] {
                continue;
            }
            let mut len = 0u64;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            l = num_integer_lcm(l, len);
        }
        l
    }

    fn first_moved(&self) -> Option<u32> {
        self.0.iter().enumerate().find(|&(i, &x)| i as u32 != x).map(|(i, _)| i as u32)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn num_integer_lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

struct Level {
    base: u32,
    gens: Vec<Perm>,
    orbit: Vec<u32>,
    /// `transversal[x]` maps the base point to `x`, for `x` in the orbit.
    /// Entries are never replaced, so Schreier generators already checked
    /// stay valid.
    transversal: Vec<Option<Perm>>,
    /// (orbit index, generator index) pairs whose Schreier generator has
    /// been sifted.
    checked: HashSet<(u32, u32)>,
}

impl Level {
    fn new(base: u32, n: usize) -> Self {
        let mut transversal = vec![None; n];
        transversal[base as usize] = Some(Perm::identity(n));
        Self { base, gens: Vec::new(), orbit: vec![base], transversal, checked: HashSet::new() }
    }

    fn visit(&mut self, x: u32, s: usize) {
        let y = self.gens[s].apply(x);
        if self.transversal[y as usize].is_none() {
            let uy = self.gens[s].mul(self.transversal[x as usize].as_ref().unwrap());
            self.transversal[y as usize] = Some(uy);
            self.orbit.push(y);
        }
    }

    fn add_gen(&mut self, g: Perm) {
        self.gens.push(g);
        let last = self.gens.len() - 1;
        let old = self.orbit.len();
        for k in 0..old {
            self.visit(self.orbit[k], last);
        }
        let mut k = old;
        while k < self.orbit.len() {
            for s in 0..self.gens.len() {
                self.visit(self.orbit[k], s);
            }
            k += 1;
        }
    }
}

/// A permutation group with a deterministic Schreier-Sims stabilizer chain.
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    levels: Vec<Level>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("gens", &self.gens.len())
            .field("base", &self.base())
            .finish()
    }
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
        let mut grp = Self { degree, gens: Vec::new(), levels: Vec::new() };
        for g in gens {
            let (h, j) = grp.sift(&g, 0);
            if !h.is_identity() {
                grp.extend(j, h);
            }
            grp.gens.push(g);
        }
        Ok(grp)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.sift(g, 0).0.is_identity()
    }

    /// Strips `g` through levels `from..`; returns the residue and the level
    /// where stripping stopped.
    fn sift(&self, g: &Perm, from: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for (i, l) in self.levels.iter().enumerate().skip(from) {
            let b = h.apply(l.base);
            match &l.transversal[b as usize] {
                Some(u) => h = u.inv().mul(&h),
                None => return (h, i),
            }
        }
        (h, self.levels.len())
    }

    /// Adds `g` (fixing the bases above level `i`) as a strong generator at
    /// levels `0..=i` and closes the chain under Schreier generators.
    fn extend(&mut self, i: usize, g: Perm) {
        if i == self.levels.len() {
            let base = g.first_moved().expect("non-identity residue");
            self.levels.push(Level::new(base, self.degree));
        }
        for j in 0..=i {
            self.levels[j].add_gen(g.clone());
        }
        for j in (0..=i).rev() {
            self.close_level(j);
        }
    }

    fn close_level(&mut self, j: usize) {
        loop {
            let mut progressed = false;
            let mut k = 0;
            while k < self.levels[j].orbit.len() {
                let mut s = 0;
                while s < self.levels[j].gens.len() {
                    if self.levels[j].checked.insert((k as u32, s as u32)) {
                        progressed = true;
                        let l = &self.levels[j];
                        let x = l.orbit[k];
                        let gen = &l.gens[s];
                        let y = gen.apply(x);
                        let ux = l.transversal[x as usize].as_ref().unwrap();
                        let uy = l.transversal[y as usize].as_ref().unwrap();
                        let schreier = uy.inv().mul(gen).mul(ux);
                        if !schreier.is_identity() {
                            let (h, lvl) = self.sift(&schreier, j + 1);
                            if !h.is_identity() {
                                self.extend(lvl, h);
                            }
                        }
                    }
                    s += 1;
                }
                k += 1;
            }
            if !progressed {
                break;
            }
        }
    }

    pub fn orbit(&self, x: u32) -> Vec<u32> {
        orbit_of(&self.gens, self.degree, x)
    }

    /// Orbit partition of `0..degree`, each orbit sorted, ordered by minimum.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        orbits_of(&self.gens, self.degree)
    }
}

pub fn orbit_of(gens: &[Perm], n: usize, x: u32) -> Vec<u32> {
    let mut seen = vec![false; n];
    seen[x as usize] = true;
    let mut orbit = vec![x];
    let mut i = 0;
    while i < orbit.len() {
        let y = orbit[i];
        for g in gens {
            let z = g.apply(y);
            if !std::mem::replace(&mut seen[z as usize], true) {
                orbit.push(z);
            }
        }
        i += 1;
    }
    orbit.sort_unstable();
    orbit
}

pub fn orbits_of(gens: &[Perm], n: usize) -> Vec<Vec<u32>> {
    let mut assigned = vec![false; n];
    let mut out = Vec::new();
    for x in 0..n as u32 {
        if assigned[x as usize] {
            continue;
        }
        let o = orbit_of(gens, n, x);
        for &y in &o {
            assigned[y as usize] = true;
        }
        out.push(o);
    }
    out
}

/// A group given by an explicit multiplication on a copyable element type.
pub trait Group {
    type Elem: Copy + Eq + Hash + Ord + fmt::Debug;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn inv(&self, a: Self::Elem) -> Self::Elem;
}

/// Closure of a set of elements under multiplication, sorted.
pub fn generate<G: Group>(g: &G, gens: &[G::Elem]) -> Vec<G::Elem> {
    let mut seen: HashSet<G::Elem> = HashSet::new();
    let id = g.identity();
    seen.insert(id);
    let mut list = vec![id];
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        for &s in gens {
            let y = g.mul(x, s);
            if seen.insert(y) {
                list.push(y);
            }
        }
        i += 1;
    }
    list.sort_unstable();
    list
}

/// Right cosets `H x` of a small subgroup, keyed by the minimum of `h x`
/// over `h` in `H`.
pub struct CosetSpace<'a, G: Group> {
    group: &'a G,
    sub: Vec<G::Elem>,
}

impl<'a, G: Group> CosetSpace<'a, G> {
    pub fn new(group: &'a G, mut sub: Vec<G::Elem>) -> Result<Self> {
        sub.sort_unstable();
        sub.dedup();
        let set: HashSet<G::Elem> = sub.iter().copied().collect();
        if !set.contains(&group.identity()) {
            return Err(Error::NotASubgroup);
        }
        for &a in &sub {
            for &b in &sub {
                if !set.contains(&group.mul(a, b)) {
                    return Err(Error::NotASubgroup);
                }
            }
        }
        Ok(Self { group, sub })
    }

    pub fn subgroup(&self) -> &[G::Elem] {
        &self.sub
    }

    pub fn rep(&self, x: G::Elem) -> G::Elem {
        self.sub.iter().map(|&h| self.group.mul(h, x)).min().unwrap()
    }

    pub fn same_coset(&self, x: G::Elem, y: G::Elem) -> bool {
        self.rep(x) == self.rep(y)
    }

    /// Distinct coset representatives of the given elements, sorted.
    pub fn reps_of(&self, elems: impl IntoIterator<Item = G::Elem>) -> Vec<G::Elem> {
        let mut r: Vec<G::Elem> = elems.into_iter().map(|x| self.rep(x)).collect();
        r.sort_unstable();
        r.dedup();
        r
    }
}

/// Entries `[a, b, c, d]` of `[[a, b], [c, d]]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2(pub [Fe; 4]);

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "[[{},{}],[{},{}]]", a.0, b.0, c.0, d.0)
    }
}

/// PSL(2,Q) over GF(Q). Elements are determinant-1 matrices; for odd Q the
/// stored form is the lexicographically smaller of `M` and `-M`.
#[derive(Clone, Debug)]
pub struct Psl2 {
    field: FieldSpec,
}

impl Psl2 {
    pub fn new(q_big: u32) -> Result<Self> {
        if q_big > 729 || prime_power(q_big).is_none() {
            return Err(Error::UnsupportedOrder(q_big));
        }
        Ok(Self { field: FieldSpec::of_order(q_big)? })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order() as u32
    }

    pub fn order(&self) -> u64 {
        let q = self.q() as u64;
        q * (q * q - 1) / gcd(2, q - 1)
    }

    fn neg(&self, m: Mat2) -> Mat2 {
        Mat2(m.0.map(|x| self.field.neg(x)))
    }

    pub fn normalize(&self, m: Mat2) -> Mat2 {
        if self.field.p() == 2 {
            m
        } else {
            m.min(self.neg(m))
        }
    }

    pub fn det(&self, m: Mat2) -> Fe {
        let f = &self.field;
        let [a, b, c, d] = m.0;
        f.sub(f.mul(a, d), f.mul(b, c))
    }

    /// Normalized element from a matrix of determinant 1.
    pub fn element(&self, m: Mat2) -> Result<Mat2> {
        if self.det(m) != Fe::ONE {
            return Err(Error::PropertyViolation(format!("{m:?} does not have determinant 1")));
        }
        Ok(self.normalize(m))
    }

    pub fn raw_mul(&self, x: Mat2, y: Mat2) -> Mat2 {
        let f = &self.field;
        let [a, b, c, d] = x.0;
        let [e, g, h, k] = y.0;
        Mat2([
            f.add(f.mul(a, e), f.mul(b, h)),
            f.add(f.mul(a, g), f.mul(b, k)),
            f.add(f.mul(c, e), f.mul(d, h)),
            f.add(f.mul(c, g), f.mul(d, k)),
        ])
    }

    /// Every element once, in a fixed order.
    pub fn iter(&self) -> impl Iterator<Item = Mat2> + '_ {
        let f = &self.field;
        f.elements()
            .flat_map(move |a| f.elements().map(move |b| (a, b)))
            .filter(|&(a, b)| !(a.is_zero() && b.is_zero()))
            .flat_map(move |(a, b)| {
                f.elements().map(move |t| {
                    if !a.is_zero() {
                        // c = t, d = (1 + b c) / a
                        let d = f.mul(f.add(Fe::ONE, f.mul(b, t)), f.inv_nz(a));
                        Mat2([a, b, t, d])
                    } else {
                        Mat2([a, b, f.neg(f.inv_nz(b)), t])
                    }
                })
            })
            .filter(move |&m| self.normalize(m) == m)
    }

    /// Every element, sorted.
    pub fn elements(&self) -> Vec<Mat2> {
        let mut out: Vec<Mat2> = self.iter().collect();
        out.sort_unstable();
        out
    }

    /// Translation, diagonal and inversion generators.
    pub fn generators(&self) -> Vec<Mat2> {
        let f = &self.field;
        let g = f.generator();
        vec![
            Mat2([Fe::ONE, Fe::ONE, Fe::ZERO, Fe::ONE]),
            self.normalize(Mat2([g, Fe::ZERO, Fe::ZERO, f.inv(g).unwrap()])),
            self.normalize(Mat2([Fe::ZERO, f.neg(Fe::ONE), Fe::ONE, Fe::ZERO])),
        ]
    }

    pub fn is_involution(&self, m: Mat2) -> bool {
        m != self.identity() && self.mul(m, m) == self.identity()
    }

    /// Every involution, sorted. In SL(2,Q) a lift of an involution has
    /// trace zero, so only those matrices are enumerated.
    pub fn involutions(&self) -> Vec<Mat2> {
        let f = &self.field;
        let minus_one = f.neg(Fe::ONE);
        let mut out = Vec::new();
        for a in f.elements() {
            let d = f.neg(a);
            // b c = -1 - a^2
            let rhs = f.sub(minus_one, f.mul(a, a));
            for b in f.elements() {
                if b.is_zero() {
                    if rhs.is_zero() {
                        out.extend(f.elements().map(|c| Mat2([a, b, c, d])));
                    }
                } else {
                    out.push(Mat2([a, b, f.mul(rhs, f.inv_nz(b)), d]));
                }
            }
        }
        let mut out: Vec<Mat2> = out.into_iter().map(|m| self.normalize(m)).filter(|&m| self.is_involution(m)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Entrywise `x -> x^(p^e)`.
    pub fn galois(&self, m: Mat2, e: u32) -> Mat2 {
        let f = &self.field;
        let r = f.p().pow(e % f.n());
        self.normalize(Mat2(m.0.map(|x| f.frobenius(x, r).unwrap())))
    }

    /// Image of the point `x` (field index, `Q` for infinity) under the
    /// Moebius map `x -> (a x + b) / (c x + d)`.
    pub fn act(&self, m: Mat2, x: u32) -> u32 {
        let f = &self.field;
        let q = self.q();
        let [a, b, c, d] = m.0;
        if x == q {
            return if c.is_zero() { q } else { f.div(a, c).unwrap().0 as u32 };
        }
        let xe = Fe(x as u16);
        let num = f.add(f.mul(a, xe), b);
        let den = f.add(f.mul(c, xe), d);
        if den.is_zero() {
            q
        } else {
            f.div(num, den).unwrap().0 as u32
        }
    }

    pub fn to_perm(&self, m: Mat2) -> Perm {
        Perm((0..=self.q()).map(|x| self.act(m, x)).collect())
    }

    pub fn perm_group(&self) -> PermGroup {
        let gens = self.generators().into_iter().map(|m| self.to_perm(m)).collect();
        PermGroup::new(self.q() as usize + 1, gens).expect("generators share the degree")
    }
}

impl Group for Psl2 {
    type Elem = Mat2;

    fn identity(&self) -> Mat2 {
        Mat2([Fe::ONE, Fe::ZERO, Fe::ZERO, Fe::ONE])
    }

    fn mul(&self, a: Mat2, b: Mat2) -> Mat2 {
        self.normalize(self.raw_mul(a, b))
    }

    fn inv(&self, m: Mat2) -> Mat2 {
        let f = &self.field;
        let [a, b, c, d] = m.0;
        self.normalize(Mat2([d, f.neg(b), f.neg(c), a]))
    }
}

/// The field automorphism `x -> x^r` of GF(Q), `Q = r^3`, as a permutation
/// of the projective line (infinity fixed) and as an automorphism of PSL(2,Q).
#[derive(Clone, Debug)]
pub struct FrobeniusAuto {
    pub r: u32,
    /// Galois exponent `e` with `r = p^e`.
    pub exponent: u32,
    pub perm: Perm,
}

pub fn frobenius_auto(g: &Psl2, r: u32) -> Result<FrobeniusAuto> {
    let q_big = g.q();
    if (r as u64).pow(3) != q_big as u64 {
        return Err(Error::UnsupportedOrder(q_big));
    }
    let f = g.field();
    let exponent = f.frobenius_exponent(r)?;
    let mut img: Vec<u32> = f.elements().map(|x| f.frobenius(x, r).unwrap().0 as u32).collect();
    img.push(q_big);
    Ok(FrobeniusAuto { r, exponent, perm: Perm::new(img)? })
}

impl FrobeniusAuto {
    pub fn apply(&self, g: &Psl2, m: Mat2) -> Mat2 {
        g.galois(m, self.exponent)
    }

    /// Elements of `G` fixed by the automorphism, sorted.
    pub fn fixed_subgroup(&self, g: &Psl2, elements: &[Mat2]) -> Vec<Mat2> {
        elements.iter().copied().filter(|&m| self.apply(g, m) == m).collect()
    }
}

/// An element `x -> m x^(p^e)` of PGammaL(2,Q), acting on PSL(2,Q) by
/// `g -> m g^(p^e) m^-1`. `m` is any invertible matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Semilinear {
    pub m: Mat2,
    pub e: u32,
}

impl Semilinear {
    pub fn conj(&self, g: &Psl2, x: Mat2) -> Mat2 {
        let f = g.field();
        let [a, b, c, d] = self.m.0;
        let det_inv = f.inv(g.det(self.m)).expect("invertible");
        let adj = Mat2([d, f.neg(b), f.neg(c), a]);
        let y = g.raw_mul(g.raw_mul(self.m, g.galois(x, self.e)), adj);
        g.normalize(Mat2(y.0.map(|v| f.mul(v, det_inv))))
    }

    /// Composition: `self` after `other`.
    pub fn compose(&self, g: &Psl2, other: &Semilinear) -> Semilinear {
        // m1 (m2 x^s2 m2^-1)^s1 m1^-1 = (m1 m2^s1) x^(s1 s2) (..)^-1
        let f = g.field();
        let r = f.p().pow(self.e % f.n());
        let m2s = Mat2(other.m.0.map(|x| f.frobenius(x, r).unwrap()));
        Semilinear { m: g.raw_mul(self.m, m2s), e: (self.e + other.e) % f.n() }
    }
}

/// All invertible matrices up to scalars (PGL(2,Q) representatives),
/// each scaled so its first nonzero entry is 1.
pub fn pgl2_reps(g: &Psl2) -> Vec<Mat2> {
    let f = g.field();
    let mut out = Vec::new();
    for b in f.elements() {
        for c in f.elements() {
            for d in f.elements() {
                for a in [Fe::ZERO, Fe::ONE] {
                    let m = Mat2([a, b, c, d]);
                    if a.is_zero() && b != Fe::ONE {
                        continue;
                    }
                    if !g.det(m).is_zero() {
                        out.push(m);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Null space of a matrix over the field, as a list of basis vectors.
fn kernel(f: &FieldSpec, mut rows: Vec<[Fe; 4]>) -> Vec<[Fe; 4]> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..4 {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(rows[r][col]).unwrap();
        rows[r] = rows[r].map(|x| f.mul(x, inv));
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let k = rows[i][col];
                for j in 0..4 {
                    rows[i][j] = f.sub(rows[i][j], f.mul(k, rows[r][j]));
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let free: Vec<usize> = (0..4).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = [Fe::ZERO; 4];
            v[fc] = Fe::ONE;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(rows[i][fc]);
            }
            v
        })
        .collect()
}

/// Linear conditions on `m` expressing `m A = s B m`.
fn intertwine_rows(f: &FieldSpec, a: Mat2, b: Mat2, s: Fe) -> Vec<[Fe; 4]> {
    // (m A)_{ij} = sum_k m_ik A_kj ; (B m)_{ij} = sum_k B_ik m_kj
    let idx = |i: usize, j: usize| 2 * i + j;
    let mut rows = Vec::with_capacity(4);
    for i in 0..2 {
        for j in 0..2 {
            let mut row = [Fe::ZERO; 4];
            for k in 0..2 {
                let t = idx(i, k);
                row[t] = f.add(row[t], a.0[idx(k, j)]);
                let t = idx(k, j);
                row[t] = f.sub(row[t], f.mul(s, b.0[idx(i, k)]));
            }
            rows.push(row);
        }
    }
    rows
}

/// Searches PGammaL(2,Q) for an automorphism swapping `r0` and `r2` while
/// fixing `r1`, returning a witness. For each Galois exponent and each sign
/// pattern the conditions are linear in the matrix, so the candidates are
/// the invertible points of a null space.
pub fn transporter(g: &Psl2, r0: Mat2, r2: Mat2, r1: Mat2) -> Result<Option<Semilinear>> {
    for (m, name) in [(r0, "rho0"), (r1, "rho1"), (r2, "rho2")] {
        if !g.is_involution(m) {
            return Err(Error::NotAnInvolution(name));
        }
    }
    let f = g.field();
    let signs: Vec<Fe> = if f.p() == 2 { vec![Fe::ONE] } else { vec![Fe::ONE, f.neg(Fe::ONE)] };
    for e in 0..f.n() {
        let (s0, s2, s1) = (g.galois(r0, e), g.galois(r2, e), g.galois(r1, e));
        for &a in &signs {
            for &b in &signs {
                for &c in &signs {
                    let mut rows = intertwine_rows(f, s0, r2, a);
                    rows.extend(intertwine_rows(f, s2, r0, b));
                    rows.extend(intertwine_rows(f, s1, r1, c));
                    let basis = kernel(f, rows);
                    if let Some(m) = invertible_in_span(g, &basis) {
                        let w = Semilinear { m, e };
                        debug_assert!(w.conj(g, r0) == r2 && w.conj(g, r2) == r0 && w.conj(g, r1) == r1);
                        return Ok(Some(w));
                    }
                }
            }
        }
    }
    Ok(None)
}

pub fn transporter_exists(g: &Psl2, r0: Mat2, r2: Mat2, r1: Mat2) -> Result<bool> {
    Ok(transporter(g, r0, r2, r1)?.is_some())
}

fn invertible_in_span(g: &Psl2, basis: &[[Fe; 4]]) -> Option<Mat2> {
    let f = g.field();
    let q = f.order();
    let k = basis.len();
    if k == 0 {
        return None;
    }
    // all coefficient vectors; the span is at most 4-dimensional
    let total = q.pow(k as u32);
    for idx in 1..total {
        let mut v = [Fe::ZERO; 4];
        let mut t = idx;
        for b in basis {
            let c = Fe((t % q) as u16);
            t /= q;
            for j in 0..4 {
                v[j] = f.add(v[j], f.mul(c, b[j]));
            }
        }
        let m = Mat2(v);
        if !g.det(m).is_zero() {
            return Some(m);
        }
    }
    None
}
