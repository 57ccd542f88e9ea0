//! Field axioms, Galois action and embeddings in exact cyclotomic arithmetic.

use std::sync::Arc;

use modcurve::cyclo::{self, CycloField, CycloNum};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

const CONDUCTORS: [u32; 5] = [5, 7, 8, 12, 13];

fn element(m: u32) -> impl Strategy<Value = CycloNum> {
    let f = cyclo::field(m).unwrap();
    let d = f.degree();
    prop::collection::vec((-20i64..=20, 1i64..=6), d).prop_map(move |cs| {
        let coords: Vec<BigRational> = cs.iter().map(|&(n, q)| BigRational::new(BigInt::from(n), BigInt::from(q))).collect();
        CycloNum::from_coords(&f, &coords)
    })
}

fn pair_in_field() -> impl Strategy<Value = (CycloNum, CycloNum, CycloNum)> {
    prop::sample::select(CONDUCTORS.to_vec()).prop_flat_map(|m| (element(m), element(m), element(m)))
}

fn close(a: num_complex::Complex64, b: num_complex::Complex64) -> bool {
    (a - b).norm() <= 1e-9 * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((a, b, c) in pair_in_field()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
    }

    #[test]
    fn inverse_is_two_sided((a, _, _) in pair_in_field()) {
        prop_assume!(!a.is_zero_value());
        let inv = a.inv().unwrap();
        let one = CycloNum::one_in(a.field());
        prop_assert_eq!(&a * &inv, one.clone());
        prop_assert_eq!(&inv * &a, one);
    }

    #[test]
    fn galois_composition((a, _, _) in pair_in_field(), k1 in 1i64..60, k2 in 1i64..60) {
        let m = a.conductor() as i64;
        prop_assume!(num_integer::gcd(k1, m) == 1 && num_integer::gcd(k2, m) == 1);
        let lhs = a.galois(k1).unwrap().galois(k2).unwrap();
        let rhs = a.galois((k1 * k2) % m).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn galois_minus_one_is_conjugation((a, _, _) in pair_in_field()) {
        let m = a.conductor() as i64;
        let c = a.galois(m - 1).unwrap();
        prop_assert!(close(c.to_complex(), a.to_complex().conj()));
        prop_assert_eq!(c, a.conj());
    }

    #[test]
    fn galois_is_a_ring_map((a, b, _) in pair_in_field(), k in 1i64..60) {
        let m = a.conductor() as i64;
        prop_assume!(num_integer::gcd(k, m) == 1);
        let g = |x: &CycloNum| x.galois(k).unwrap();
        prop_assert_eq!(g(&(&a * &b)), &g(&a) * &g(&b));
        prop_assert_eq!(g(&(&a + &b)), &g(&a) + &g(&b));
    }

    #[test]
    fn embedding_commutes_with_arithmetic((a, b, _) in pair_in_field(), mult in 2u32..4) {
        let target: Arc<CycloField> = cyclo::field(a.conductor() * mult).unwrap();
        let ea = a.embed(&target).unwrap();
        let eb = b.embed(&target).unwrap();
        prop_assert_eq!((&a * &b).embed(&target).unwrap(), &ea * &eb);
        prop_assert_eq!((&a + &b).embed(&target).unwrap(), &ea + &eb);
        prop_assert!(close(ea.to_complex(), a.to_complex()));
    }

    #[test]
    fn complex_value_is_a_ring_map((a, b, _) in pair_in_field()) {
        prop_assert!(close((&a * &b).to_complex(), a.to_complex() * b.to_complex()));
        prop_assert!(close((&a + &b).to_complex(), a.to_complex() + b.to_complex()));
    }

    #[test]
    fn text_round_trip((a, _, _) in pair_in_field()) {
        let back: CycloNum = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn square_roots_of_signed_primes() {
    for p in [5u32, 7, 11, 13, 17, 19, 23] {
        let sign = if p % 4 == 1 { 1 } else { -1 };
        let r = cyclo::sqrt_p(p, sign).unwrap();
        assert_eq!(&r * &r, CycloNum::int(sign as i64 * p as i64), "p = {p}");
        let z = r.to_complex();
        if sign > 0 {
            assert!(z.re > 0.0 && z.im.abs() < 1e-12);
        } else {
            assert!(z.im > 0.0 && z.re.abs() < 1e-12);
        }
        assert!(cyclo::sqrt_p(p, -sign).is_err(), "p = {p} has no square root of the other sign");
    }
}

#[test]
fn mixed_conductors_require_an_explicit_embedding() {
    let a = CycloNum::root_of_unity(13, 1);
    let b = CycloNum::root_of_unity(8, 1);
    assert!(CycloNum::arith(&a, &b, cyclo::ArithOp::Mul).is_err());
    let big = cyclo::field(104).unwrap();
    let ea = a.embed(&big).unwrap();
    let eb = b.embed(&big).unwrap();
    assert_eq!(ea, CycloNum::zeta(&big, 8));
    assert_eq!(eb, CycloNum::zeta(&big, 13));
    assert!(close((&ea * &eb).to_complex(), a.to_complex() * b.to_complex()));
    let r = cyclo::sqrt_p(13, 1).unwrap().embed(&big).unwrap();
    assert_eq!(&r * &r, CycloNum::int(13).embed(&big).unwrap());
    assert!(a.embed(&cyclo::field(12).unwrap()).is_err());
}

#[test]
fn gauss_sum_orbits_under_a_non_residue() {
    let f = cyclo::field(7).unwrap();
    let eta: CycloNum = [1, 2, 4].iter().map(|&k| CycloNum::zeta(&f, k)).fold(CycloNum::zero_in(&f), |a, b| &a + &b);
    let image = eta.galois(3).unwrap();
    assert_eq!(&image + &eta, CycloNum::int(-1).embed(&f).unwrap());
}

#[test]
fn roots_of_unity_have_the_right_order() {
    for m in [3u32, 7, 13, 24] {
        let z = CycloNum::root_of_unity(m, 1);
        assert_eq!(z.pow(m), CycloNum::int(1));
        for k in 1..m {
            assert_ne!(z.pow(k), CycloNum::int(1), "ζ_{m}^{k}");
        }
    }
}
