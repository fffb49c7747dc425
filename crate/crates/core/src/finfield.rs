//! Exact arithmetic in GF(p^n) for p^n ≤ 1024.
//!
//! Elements are coefficient vectors modulo a fixed monic irreducible
//! polynomial, packed into a single integer `Σ c_i p^i` (see [`Fe`]). Every
//! field built here carries full addition and multiplication tables, so the
//! enumeration code above this module never does polynomial arithmetic in its
//! inner loops.
//!
//! The defining polynomials are compiled in (Conway polynomials for every
//! extension field with p^n ≤ 1024, `x - g` with `g` the least primitive root
//! for prime fields). Each one is re-checked for irreducibility whenever a
//! field is constructed.
//!
//! | p | n | polynomial (constant term first) |
//! |---|---|---|
//! | 2 | 2..=10 | see `CONWAY` |
//! | 3 | 2..=6 | see `CONWAY` |
//! | 5 | 2..=4 | see `CONWAY` |
//! | 7 | 2..=3 | see `CONWAY` |
//! | 11..=31 | 2 | see `CONWAY` |

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order handled.
pub const MAX_ORDER: u32 = 1024;

/// Conway polynomials, coefficients listed from the constant term up to the
/// (monic) leading term.
const CONWAY: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (2, 9, &[1, 0, 0, 0, 1, 0, 0, 0, 0, 1]),
    (2, 10, &[1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (3, 6, &[2, 2, 1, 0, 2, 0, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (5, 4, &[2, 4, 4, 0, 1]),
    (7, 2, &[3, 6, 1]),
    (7, 3, &[4, 0, 6, 1]),
    (11, 2, &[2, 7, 1]),
    (13, 2, &[2, 12, 1]),
    (17, 2, &[3, 16, 1]),
    (19, 2, &[2, 18, 1]),
    (23, 2, &[5, 21, 1]),
    (29, 2, &[2, 24, 1]),
    (31, 2, &[3, 29, 1]),
];

/// A field element, packed as `Σ c_i p^i` over its coefficient vector.
///
/// `Fe(0)` is zero and `Fe(1)` is one in every field. The value only has
/// meaning together with the [`FieldSpec`] that produced it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe(pub u16);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

struct Tables {
    p: u32,
    n: u32,
    order: usize,
    poly: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    frob: Vec<u16>,
}

/// A finite field GF(p^n). Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct FieldSpec(Arc<Tables>);

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.0.p, self.0.n, self.0.poly)
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.n == other.0.n && self.0.poly == other.0.poly)
    }
}

impl Eq for FieldSpec {}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^n` with `p` prime.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut rest, mut n) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        n += 1;
    }
    (rest == 1).then_some((p, n))
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn least_primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    let phi = p - 1;
    let mut factors = Vec::new();
    let mut m = phi;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| {
            factors
                .iter()
                .all(|&f| pow_mod(g as u64, (phi / f) as u64, p as u64) != 1)
        })
        .expect("every prime has a primitive root")
}

/// Remainder of `a` modulo the monic-or-not polynomial `b` over GF(p).
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = pow_mod(b[db] as u64, (p - 2) as u64, p as u64) as u32;
    let lead_inv = if p == 2 { 1 } else { lead_inv };
    while r.len() > db {
        let top = *r.last().unwrap();
        if top != 0 {
            let factor = top * lead_inv % p;
            let shift = r.len() - 1 - db;
            for (i, &c) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - factor * c % p) % p;
            }
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

/// Trial division by every monic polynomial of degree ≤ deg/2.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as usize).pow(d as u32);
        for idx in 0..count {
            let mut divisor = Vec::with_capacity(d + 1);
            let mut v = idx;
            for _ in 0..d {
                divisor.push((v % p as usize) as u32);
                v /= p as usize;
            }
            divisor.push(1);
            if poly_rem(poly, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    /// Builds GF(p^n) from the built-in polynomial table.
    pub fn new(p: u32, n: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let order = (p as u64).checked_pow(n);
        if n == 0 || order.map_or(true, |o| o > MAX_ORDER as u64) {
            return Err(Error::UnsupportedField { p, n });
        }
        let poly: Vec<u32> = if n == 1 {
            vec![(p - least_primitive_root(p)) % p, 1]
        } else {
            CONWAY
                .iter()
                .find(|(pp, nn, _)| *pp == p && *nn == n)
                .map(|(_, _, c)| c.to_vec())
                .ok_or(Error::UnsupportedField { p, n })?
        };
        if !is_irreducible(&poly, p) {
            return Err(Error::Reducible(poly));
        }
        Ok(Self(Arc::new(Self::build_tables(p, n, poly))))
    }

    /// Builds GF(q) for a prime power q.
    pub fn of_order(q: u32) -> Result<Self> {
        let (p, n) = prime_power(q).ok_or(Error::UnsupportedOrder(q))?;
        Self::new(p, n)
    }

    fn build_tables(p: u32, n: u32, poly: Vec<u32>) -> Tables {
        let order = (p as usize).pow(n);
        let nn = n as usize;
        let coeffs: Vec<Vec<u32>> = (0..order)
            .map(|mut v| {
                (0..nn)
                    .map(|_| {
                        let c = (v % p as usize) as u32;
                        v /= p as usize;
                        c
                    })
                    .collect()
            })
            .collect();
        let pack = |c: &[u32]| -> u16 {
            c.iter().rev().fold(0u32, |acc, &x| acc * p + x) as u16
        };

        let mut add = vec![0u16; order * order];
        let mut mul = vec![0u16; order * order];
        let mut prod = vec![0u32; 2 * nn - 1];
        for a in 0..order {
            for b in a..order {
                let (ca, cb) = (&coeffs[a], &coeffs[b]);
                let s: Vec<u32> = ca.iter().zip(cb).map(|(x, y)| (x + y) % p).collect();
                let sv = pack(&s);
                add[a * order + b] = sv;
                add[b * order + a] = sv;

                prod.iter_mut().for_each(|x| *x = 0);
                for i in 0..nn {
                    if ca[i] == 0 {
                        continue;
                    }
                    for j in 0..nn {
                        prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
                    }
                }
                // poly is monic: x^n = -Σ poly[i] x^i
                for k in (nn..prod.len()).rev() {
                    let top = prod[k];
                    if top != 0 {
                        for i in 0..nn {
                            prod[k - nn + i] = (prod[k - nn + i] + p - top * poly[i] % p) % p;
                        }
                        prod[k] = 0;
                    }
                }
                let mv = pack(&prod[..nn]);
                mul[a * order + b] = mv;
                mul[b * order + a] = mv;
            }
        }

        let mut neg = vec![0u16; order];
        let mut inv = vec![0u16; order];
        for a in 0..order {
            for b in 0..order {
                if add[a * order + b] == 0 {
                    neg[a] = b as u16;
                }
                if a != 0 && mul[a * order + b] == 1 {
                    inv[a] = b as u16;
                }
            }
        }
        let frob = (0..order)
            .map(|a| {
                let mut r = 1u16;
                for _ in 0..p {
                    r = mul[r as usize * order + a];
                }
                r
            })
            .collect();

        Tables { p, n, order, poly, add, mul, neg, inv, frob }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.0.n
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.0.order
    }

    /// Defining polynomial, constant term first, monic.
    pub fn polynomial(&self) -> &[u32] {
        &self.0.poly
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> + Clone {
        (0..self.0.order as u16).map(Fe)
    }

    /// The residue class of `x` (the element with coefficient vector `e_1`).
    /// In a prime field this is the root of the linear defining polynomial.
    pub fn generator(&self) -> Fe {
        if self.0.n == 1 {
            Fe(((self.0.p - self.0.poly[0]) % self.0.p) as u16)
        } else {
            Fe(self.0.p as u16)
        }
    }

    /// Element with coefficient vector `coeffs` (lowest degree first).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Fe {
        let p = self.0.p;
        Fe(coeffs
            .iter()
            .take(self.0.n as usize)
            .rev()
            .fold(0u32, |acc, &c| acc * p + c % p) as u16)
    }

    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        let p = self.0.p;
        let mut v = a.0 as u32;
        (0..self.0.n)
            .map(|_| {
                let c = v % p;
                v /= p;
                c
            })
            .collect()
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, i: i64) -> Fe {
        Fe(i.rem_euclid(self.0.p as i64) as u16)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.0.add[a.index() * self.0.order + b.index()])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.0.neg[a.index()])
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.0.mul[a.index() * self.0.order + b.index()])
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(Fe(self.0.inv[a.index()]))
        }
    }

    /// Inverse of a value the caller knows to be nonzero.
    #[inline]
    pub(crate) fn inv_nz(&self, a: Fe) -> Fe {
        debug_assert!(!a.is_zero());
        Fe(self.0.inv[a.index()])
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let (mut base, mut r) = (a, Fe::ONE);
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        r
    }

    /// Sum of products `Σ a_i b_i`.
    #[inline]
    pub fn dot(&self, a: &[Fe], b: &[Fe]) -> Fe {
        a.iter()
            .zip(b)
            .fold(Fe::ZERO, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    /// `x ↦ x^r` where `r = p^m`, `1 ≤ m ≤ n` (or `r = 1`).
    pub fn frobenius(&self, a: Fe, r: u32) -> Result<Fe> {
        let m = self.frobenius_exponent(r)?;
        Ok(self.frobenius_iter(a, m))
    }

    /// Returns `m` with `r = p^m`, or an error.
    pub fn frobenius_exponent(&self, r: u32) -> Result<u32> {
        let (p, n) = (self.0.p, self.0.n);
        let bad = Error::BadFrobeniusPower { r, p, n };
        let mut v = 1u64;
        for m in 0..=n {
            if v == r as u64 {
                return Ok(m);
            }
            v *= p as u64;
        }
        Err(bad)
    }

    #[inline]
    fn frobenius_iter(&self, mut a: Fe, m: u32) -> Fe {
        for _ in 0..m {
            a = Fe(self.0.frob[a.index()]);
        }
        a
    }

    /// Lookup table of `x ↦ x^(p^m)` over all elements.
    pub fn frobenius_table(&self, m: u32) -> Vec<Fe> {
        self.elements().map(|a| self.frobenius_iter(a, m)).collect()
    }

    /// Some square root of `a`, if one exists.
    pub fn sqrt(&self, a: Fe) -> Option<Fe> {
        self.elements().find(|&x| self.mul(x, x) == a)
    }

    /// Elements fixed by `x ↦ x^r`, i.e. the subfield of order `r` when
    /// `r` is a power of p whose exponent divides n.
    pub fn fixed_field(&self, r: u32) -> Result<Vec<Fe>> {
        let m = self.frobenius_exponent(r)?;
        Ok(self
            .elements()
            .filter(|&a| self.frobenius_iter(a, m) == a)
            .collect())
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Fe) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut x = a;
        let mut k = 1;
        while x != Fe::ONE {
            x = self.mul(x, a);
            k += 1;
        }
        Ok(k)
    }

    pub fn elem(&self, a: Fe) -> FieldElem {
        FieldElem { field: self.clone(), value: a }
    }
}

/// A field element bundled with its field; every binary operation checks
/// that both operands live in the same field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElem {
    field: FieldSpec,
    value: Fe,
}

impl FieldElem {
    pub fn value(&self) -> Fe {
        self.value
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    fn same(&self, other: &FieldElem) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same(other)?;
        Ok(self.field.elem(self.field.add(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same(other)?;
        Ok(self.field.elem(self.field.mul(self.value, other.value)))
    }

    pub fn neg(&self) -> FieldElem {
        self.field.elem(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<FieldElem> {
        Ok(self.field.elem(self.field.inv(self.value)?))
    }

    pub fn frobenius(&self, r: u32) -> Result<FieldElem> {
        Ok(self.field.elem(self.field.frobenius(self.value, r)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_polynomial() {
        let f = FieldSpec::new(2, 1).unwrap();
        assert_eq!(f.polynomial(), &[1, 1]);
        assert_eq!(f.order(), 2);
    }

    #[test]
    fn gf4_uses_unique_quadratic() {
        let f = FieldSpec::new(2, 2).unwrap();
        assert_eq!(f.polynomial(), &[1, 1, 1]);
        let a = f.generator();
        assert_eq!(f.mul(a, a), f.add(a, Fe::ONE));
    }

    /// Independent irreducibility oracle for a cubic: no roots in GF(p).
    #[test]
    fn gf27_cubic_has_no_roots() {
        let f = FieldSpec::new(3, 3).unwrap();
        let c = f.polynomial().to_vec();
        for x in 0..3u32 {
            let v = c.iter().rev().fold(0, |acc, &k| (acc * x + k) % 3);
            assert_ne!(v, 0, "root {x}");
        }
    }

    #[test]
    fn gf5_inverse_of_two() {
        let f = FieldSpec::new(5, 1).unwrap();
        assert_eq!(f.inv(Fe(2)).unwrap(), Fe(3));
        assert_eq!(f.inv(Fe::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(FieldSpec::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(
            FieldSpec::new(2, 11),
            Err(Error::UnsupportedField { .. })
        ));
        assert!(matches!(
            FieldSpec::new(37, 2),
            Err(Error::UnsupportedField { .. })
        ));
        assert!(FieldSpec::new(1021, 1).is_ok());
    }

    #[test]
    fn mixed_fields_rejected() {
        let f4 = FieldSpec::new(2, 2).unwrap();
        let f8 = FieldSpec::new(2, 3).unwrap();
        let a = f4.elem(Fe(1));
        let b = f8.elem(Fe(1));
        assert_eq!(a.add(&b), Err(Error::FieldMismatch));
        assert_eq!(a.mul(&b), Err(Error::FieldMismatch));
        assert_eq!(a.add(&f4.elem(Fe(1))).unwrap().value(), Fe::ZERO);
        assert_eq!(f4.elem(Fe::ZERO).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn frobenius_on_gf8() {
        let f = FieldSpec::new(2, 3).unwrap();
        for a in f.elements() {
            let mut x = a;
            for _ in 0..3 {
                x = f.frobenius(x, 2).unwrap();
            }
            assert_eq!(x, a);
        }
        assert_eq!(f.fixed_field(2).unwrap(), vec![Fe(0), Fe(1)]);
        assert!(f.frobenius(Fe(3), 3).is_err());
        assert!(f.frobenius(Fe(3), 16).is_err());
    }

    #[test]
    fn gf729_subfield_of_order_nine() {
        let f = FieldSpec::new(3, 6).unwrap();
        let fixed = f.elements().filter(|&a| f.frobenius(a, 9).unwrap() == a).count();
        assert_eq!(fixed, 9);
    }

    #[test]
    fn table_polynomials_are_primitive() {
        for &(p, n, _) in CONWAY {
            let f = FieldSpec::new(p, n).unwrap();
            assert_eq!(
                f.mult_order(f.generator()).unwrap(),
                f.order() as u64 - 1,
                "GF({p}^{n})"
            );
        }
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(729), Some((3, 6)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
