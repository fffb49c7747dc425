use std::collections::HashMap;
use std::sync::OnceLock;

use proptest::prelude::*;

use triality_core::finfield::{prime_power, Fe, FieldSpec};

fn orders_up_to(max: u32) -> Vec<u32> {
    (2..=max).filter(|&q| prime_power(q).is_some()).collect()
}

#[test]
fn multiplicative_group_exponent() {
    for q in orders_up_to(729) {
        let f = FieldSpec::of_order(q).unwrap();
        for a in f.elements().filter(|a| !a.is_zero()) {
            assert_eq!(f.pow(a, q as u64 - 1), Fe::ONE, "GF({q})");
        }
    }
}

#[test]
fn frobenius_has_order_n() {
    for q in orders_up_to(729) {
        let f = FieldSpec::of_order(q).unwrap();
        let (p, n) = (f.p(), f.n());
        for a in f.elements() {
            let x = (0..n).fold(a, |x, _| f.frobenius(x, p).unwrap());
            assert_eq!(x, a, "GF({q}): frobenius^{n}");
        }
    }
}

#[test]
fn subfields_have_the_right_size() {
    for q in orders_up_to(729) {
        let f = FieldSpec::of_order(q).unwrap();
        let (p, n) = (f.p(), f.n());
        for m in 1..=n {
            let size = f.fixed_field(p.pow(m)).unwrap().len() as u32;
            let expected = if n % m == 0 { p.pow(m) } else { p.pow(gcd(m, n)) };
            assert_eq!(size, expected, "GF({q}) fixed by x^(p^{m})");
        }
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn field(q: u32) -> &'static FieldSpec {
    static FIELDS: OnceLock<HashMap<u32, FieldSpec>> = OnceLock::new();
    &FIELDS.get_or_init(|| orders_up_to(729).into_iter().map(|q| (q, FieldSpec::of_order(q).unwrap())).collect())[&q]
}

/// Field order and three element indices, for orders above 64.
fn large_triple() -> impl Strategy<Value = (u32, usize, usize, usize)> {
    proptest::sample::select(orders_up_to(729).into_iter().filter(|&q| q > 64).collect::<Vec<_>>())
        .prop_flat_map(|q| (Just(q), 0..q as usize, 0..q as usize, 0..q as usize))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn ring_axioms_on_large_fields((q, i, j, k) in large_triple()) {
        let f = field(q);
        let els: Vec<Fe> = f.elements().collect();
        let (a, b, c) = (els[i], els[j], els[k]);
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !b.is_zero() {
            prop_assert_eq!(f.mul(f.div(a, b).unwrap(), b), a);
        }
        let p = f.p();
        prop_assert_eq!(f.frobenius(f.add(a, b), p).unwrap(), f.add(f.frobenius(a, p).unwrap(), f.frobenius(b, p).unwrap()));
        prop_assert_eq!(f.frobenius(f.mul(a, b), p).unwrap(), f.mul(f.frobenius(a, p).unwrap(), f.frobenius(b, p).unwrap()));
    }
}
