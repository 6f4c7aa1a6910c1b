use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use prudent::enumerate::{
    bargraph_residual, bargraph_width_series, counts, pa3_from_w, pa3_series, w_residual, w_series, xyz_residual,
    xyz_series, Method,
};
use prudent::series::{expand_rational, Cat, Series1, Series2, Series3};

const ORDER: usize = 12;

fn series(c: Vec<i64>) -> Series1<BigInt> {
    let mut v: Vec<BigInt> = c.into_iter().map(BigInt::from).collect();
    v.resize(ORDER + 1, BigInt::zero());
    Series1::from_coeffs(v)
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-50i64..50, 0..=ORDER + 1)
}

proptest! {
    #[test]
    fn ring_axioms(a in coeffs(), b in coeffs(), c in coeffs()) {
        let (a, b, c) = (series(a), series(b), series(c));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        let one = Series1::one(ORDER, &BigInt::one());
        prop_assert_eq!(a.mul(&one), a.clone());
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn division_inverts_multiplication(a in coeffs(), mut d in coeffs()) {
        d.insert(0, 1);
        let (a, d) = (series(a), series(d));
        let q = a.div_unit(&d).unwrap();
        prop_assert_eq!(q.mul(&d), a.clone());
        let bad = d.add(&Series1::one(ORDER, &BigInt::one()));
        prop_assert!(a.div_unit(&bad).is_err());
    }

    #[test]
    fn rational_expansion_times_denominator(p in prop::collection::vec(-20i64..20, 1..6),
                                            mut d in prop::collection::vec(-5i64..5, 0..5)) {
        d.insert(0, 1);
        let s = expand_rational(&p, &d, ORDER).unwrap();
        prop_assert_eq!(s.mul(&series(d)), series(p));
    }

    #[test]
    fn substitution_raises_valuation(cells in prop::collection::vec((1usize..=ORDER, 0usize..=ORDER, -9i64..9), 1..10),
                                     t in 1usize..3) {
        let terms: Vec<(usize, usize, i64)> =
            cells.into_iter().map(|(n, i, k)| (n, i.min(n), k)).collect();
        let s = Series2::from_poly(ORDER, &terms, &BigInt::one());
        prop_assume!(!s.is_zero());
        let r = s.subst_scale(t);
        if !r.is_zero() {
            prop_assert!(r.valuation() >= s.valuation());
        }
        // only u-free terms stay at the lowest q-degree
        let v = s.valuation();
        let at_one = r.eval_catalytic();
        prop_assert_eq!(at_one.coeff(v), &s.row(v)[0]);
        for n in 0..=ORDER {
            for (i, c) in s.row(n).iter().enumerate() {
                if n + t * i <= ORDER {
                    prop_assert_eq!(r.coeff(n + t * i, i), c);
                }
            }
        }
    }
}

#[test]
fn bargraph_equation_holds() {
    let b = bargraph_width_series(40).unwrap();
    assert!(bargraph_residual(&b).is_zero());
}

#[test]
fn w_equation_holds() {
    let w = w_series(40).unwrap();
    assert!(w_residual(&w).is_zero());
    let pa = pa3_from_w(&w).unwrap();
    let t = pa3_series(40, Method::Theorem).unwrap();
    for n in 1..=40 {
        assert_eq!(pa.coeff(n), t.get(n));
    }
}

#[test]
fn xyz_equations_hold() {
    let s = xyz_series(10).unwrap();
    for r in xyz_residual(&s) {
        assert!(r.is_zero());
    }
}

#[test]
fn xyz_residual_detects_perturbation() {
    let mut s = xyz_series(6).unwrap();
    let c = s.z.coeff(4, 1, 1) + BigInt::one();
    s.z.set(4, 1, 1, c);
    assert!(xyz_residual(&s).iter().any(|r| !r.is_zero()));
}

#[test]
fn swap_is_an_involution() {
    let s = xyz_series(6).unwrap();
    assert_eq!(s.y.swap_catalytics().swap_catalytics(), s.y);
    let a = s.x.subst_scale(Cat::U, 1).eval_catalytic();
    let b = s.x.swap_catalytics().subst_scale(Cat::V, 1).eval_catalytic();
    assert_eq!(a, b);
    let _ = Series3::<BigInt>::zero(2, &BigInt::one());
}

#[test]
fn two_sided_closed_form() {
    let t = counts(2, 30).unwrap();
    for n in 1..=30usize {
        assert_eq!(*t.get(n), (BigInt::one() << n) + 2);
    }
}
