//! q-expansions checked against direct products and sums, series algebra
//! properties, and the modular equations at a larger order.

use modcurve::cyclo::{self, CycloNum};
use modcurve::qtheta::{self, PuiseuxSeries};
use num_complex::Complex64;
use num_rational::Rational64;
use proptest::prelude::*;
use std::f64::consts::PI;

fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

/// `∏_{n≥1} (1 - qⁿ)` through `q^k` by direct multiplication.
fn euler_product(k: usize) -> Vec<i64> {
    let mut c = vec![0i64; k + 1];
    c[0] = 1;
    for n in 1..=k {
        for e in (n..=k).rev() {
            c[e] -= c[e - n];
        }
    }
    c
}

#[test]
fn eta_matches_the_euler_product() {
    let k = 40;
    let prod = euler_product(k);
    let eta = qtheta::eta_series(1, k as i64);
    assert_eq!(eta.valuation(), Some(r(1, 24)));
    for (n, &c) in prod.iter().enumerate() {
        assert_eq!(eta.coefficient(r(1, 24) + Rational64::from_integer(n as i64)), CycloNum::int(c), "q^{n}");
    }
    // Pentagonal signs: 1 - q - q² + q⁵ + q⁷ - q¹² - q¹⁵
    let nonzero: Vec<(usize, i64)> = prod.iter().enumerate().filter(|(_, &c)| c != 0).map(|(n, &c)| (n, c)).take(7).collect();
    assert_eq!(nonzero, vec![(0, 1), (1, -1), (2, -1), (5, 1), (7, 1), (12, -1), (15, -1)]);
}

#[test]
fn scaled_eta_is_a_substitution() {
    for n in [2i64, 5, 7, 13] {
        let k = 30;
        let direct = qtheta::eta_series(n, k);
        let subst = qtheta::eta_series(1, k).substitute_power(n);
        let t = direct.trunc().unwrap().min(subst.trunc().unwrap());
        assert_eq!(direct.truncate(t), subst.truncate(t), "N = {n}");
        assert_eq!(direct.valuation(), Some(r(n, 24)));
    }
}

#[test]
fn eta_series_agrees_with_the_numeric_product() {
    let tau = Complex64::new(0.1, 0.8);
    let q = (Complex64::new(0.0, 2.0 * PI) * tau).exp();
    let mut prod = (Complex64::new(0.0, 2.0 * PI / 24.0) * tau).exp();
    for n in 1..200 {
        prod *= Complex64::new(1.0, 0.0) - q.powi(n);
    }
    let s = qtheta::eta_series(1, 60).eval(tau);
    assert!((s - prod).norm() < 1e-13);
    assert!((qtheta::eta_numeric(tau) - prod).norm() < 1e-13);
}

#[test]
fn sixth_theta_coordinate_at_level_thirteen() {
    // a₆(z) = e^{-πi/26} θ[1/13; 1](0, 13z), checked against the defining sum.
    let f = cyclo::field(52).unwrap();
    let th = qtheta::theta_series(r(1, 13), Rational64::from_integer(1), 13, 12, &f).unwrap();
    let phase = CycloNum::zeta(&f, -1);
    let a6 = th.scale(&phase).unwrap();
    assert!(a6.terms().all(|(_, c)| c.to_complex().im.abs() < 1e-12), "coefficients are real");
    let tau = Complex64::new(0.0, 2.0);
    let mut direct = Complex64::new(0.0, 0.0);
    for m in -40i64..=40 {
        let x = m as f64 + 1.0 / 26.0;
        direct += (Complex64::new(0.0, PI) * (x * x * 13.0 * tau + x)).exp();
    }
    direct *= Complex64::new(0.0, -PI / 26.0).exp();
    let value = a6.eval(tau);
    assert!((value - direct).norm() < 1e-12 * direct.norm().max(1e-300), "{value} vs {direct}");
    assert!(value.im.abs() < 1e-12 * value.norm());
}

#[test]
fn odd_theta_constant_vanishes() {
    let q = cyclo::field(4).unwrap();
    let th = qtheta::theta_series(Rational64::from_integer(1), Rational64::from_integer(1), 1, 20, &q).unwrap();
    assert!(th.is_zero());
}

#[test]
fn j_from_thetas_agrees_with_eisenstein_and_delta() {
    let k = 30;
    let j = qtheta::j_series(k);
    assert_eq!(j.valuation(), Some(Rational64::from_integer(-1)));
    let lhs = &j * &qtheta::delta_series(k + 1);
    let rhs = qtheta::e4_series(k).pow(3).unwrap();
    let t = Rational64::from_integer(k);
    assert_eq!(lhs.truncate(t), rhs.truncate(t));
    let tau = Complex64::new(0.2, 1.1);
    assert!((j.eval(tau) - qtheta::j_numeric(tau)).norm() < 1e-8 * qtheta::j_numeric(tau).norm());
}

#[test]
fn hauptmodul_leading_terms() {
    for (p, e) in [(2u32, 24i64), (3, 12), (5, 6), (7, 4), (13, 2)] {
        assert_eq!(qtheta::hauptmodul_exponent(p).unwrap(), e);
        let t = qtheta::hauptmodul_series(p, 10).unwrap();
        let m = 24 / e;
        assert_eq!(t.valuation(), Some(r(1 - p as i64, m)));
        assert_eq!(t.coefficient(r(1 - p as i64, m)), CycloNum::int(1));
    }
    assert!(qtheta::hauptmodul_exponent(11).is_err());
}

#[test]
fn modular_equations_at_a_larger_order() {
    for p in [5u32, 13] {
        for c in qtheta::verify_modular_equation(p, 50).unwrap() {
            assert!(c.status, "{} first bad order {:?}", c.identity, c.first_bad_order);
            assert_eq!(c.order, 50);
        }
    }
}

#[test]
fn z_alpha_reflection_and_multiplier() {
    for p in [5u32, 7, 11, 13] {
        for a in 1..p as i64 {
            assert_eq!(qtheta::z_alpha_series(p, p as i64 - a, 8), qtheta::z_alpha_series(p, a, 8).neg());
            assert!(qtheta::t_check(p, a, 8).passed, "p = {p}, α = {a}");
        }
    }
}

#[test]
fn level_seven_ratio_leading_behaviour() {
    let k = 10;
    let z1 = qtheta::z_alpha_series(7, 1, k);
    let z2 = qtheta::z_alpha_series(7, 2, k);
    let ratio = &z2 * &z1.inv().unwrap();
    assert_eq!(ratio.valuation(), Some(r(-2, 7)));
    assert_eq!(ratio.coefficient(r(-2, 7)), CycloNum::int(-1));
    let a = &qtheta::a_series(7, 1, k) * &qtheta::a_series(7, 0, k).inv().unwrap();
    let t = ratio.trunc().unwrap().min(a.trunc().unwrap());
    assert_eq!(ratio.truncate(t), a.truncate(t));
}

/// A unit-leading series known through `q^((v + 12) / grain)`, together with
/// an extension of it known further.
fn unit_series_pair() -> impl Strategy<Value = (PuiseuxSeries, PuiseuxSeries)> {
    (1i64..=3, -2i64..=2, prop::collection::vec(-4i64..=4, 1..20), prop::sample::select(vec![1i64, -1, 2])).prop_map(
        |(grain, v, tail, lead)| {
            let mut terms = vec![(v, lead)];
            terms.extend(tail.iter().enumerate().map(|(i, &c)| (v + 1 + i as i64, c)));
            let long = PuiseuxSeries::from_integers(grain, terms, Some(v + 24));
            let short = long.truncate(Rational64::new(v + 12, grain));
            (short, long)
        },
    )
}

fn unit_series() -> impl Strategy<Value = PuiseuxSeries> {
    unit_series_pair().prop_map(|(s, _)| s)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(80))]

    #[test]
    fn multiplication_is_associative(f in unit_series(), g in unit_series(), h in unit_series()) {
        let a = &(&f * &g) * &h;
        let b = &f * &(&g * &h);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn inverse_is_exact_to_the_truncation(f in unit_series()) {
        let prod = &f * &f.inv().unwrap();
        let t = prod.trunc().unwrap();
        prop_assert!(t > Rational64::from_integer(0));
        for (e, c) in prod.terms() {
            if e == Rational64::from_integer(0) {
                prop_assert_eq!(c, &CycloNum::int(1));
            } else {
                prop_assert!(c.is_zero_value(), "q^{} has {}", e, c);
            }
        }
        prop_assert_eq!(prod.coefficient(Rational64::from_integer(0)), CycloNum::int(1));
    }

    #[test]
    fn product_truncation_is_sound((f, f_long) in unit_series_pair(), (g, g_long) in unit_series_pair()) {
        let short = &f * &g;
        let long = &f_long * &g_long;
        let t = short.trunc().unwrap();
        prop_assert!(long.trunc().unwrap() >= t);
        prop_assert_eq!(long.truncate(t), short);
    }

    #[test]
    fn evaluation_is_multiplicative(f in unit_series(), g in unit_series()) {
        let tau = Complex64::new(0.3, 4.0);
        let lhs = (&f * &g).eval(tau);
        let rhs = f.eval(tau) * g.eval(tau);
        // Terms beyond the truncation are O(e^{-2π·4·t}), far below this tolerance.
        prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()));
    }
}
