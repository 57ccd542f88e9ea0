//! Reference values: the enumerated level-13 quartics, representation
//! traces, genera, q-expansion coefficients, modular equations and Fricke
//! constants. Series identities are rebuilt here from the η and j
//! expansions rather than taken from the library catalog.

use modcurve::cyclo::{self, CycloNum};
use modcurve::group::{self, WeilGenerators};
use modcurve::locus;
use modcurve::qtheta;
use modcurve::rep::{self, SpanRep};
use modcurve::Poly;
use num_complex::Complex64;
use num_rational::Rational64;

mod common;
use common::*;

#[test]
fn level_thirteen_quartics_match_the_enumeration() {
    let sys = locus::generate_ideal(13).unwrap();
    assert_eq!(sys.raw_count, 35);
    let (idx, _, _) = LEVEL13_CORRECTION;
    let listed: Poly = locus::parse_e(LEVEL13_LIST[idx].1, 6);
    assert_eq!(listed.homogeneous_degree(), None, "the listed seventh entry mixes degrees");
    compare_level13_list(&sys).unwrap();
}

#[test]
fn level_seven_quartic_is_klein_quartic() {
    let sys = locus::generate_ideal(7).unwrap();
    assert_eq!(sys.distinct_count(), 1);
    let w = locus::klein_relabel(&sys).unwrap().expect("a signed permutation exists");
    // Substitute E_i = sign_i · (λ, μ, ν)[perm_i] and compare with λ³μ + μ³ν + ν³λ.
    let q = &sys.quartics[0].poly;
    let vars: Vec<Poly> = (0..3).map(|i| Poly::var(3, w.perm[i]).scale(&CycloNum::int(w.signs[i]))).collect();
    let klein: Poly = modcurve::mpoly::parse_poly("l^3*m + m^3*n + n^3*l", &["l", "m", "n"]);
    let image = q.substitute(&vars);
    assert!(image == klein.scale(&CycloNum::int(w.scale)) && w.scale.abs() == 1);
}

#[test]
fn representation_traces() {
    let (s, t) = SpanRep::preferred(11).unwrap().trace_pair();
    assert_eq!((s, t), (CycloNum::int(2), CycloNum::int(-1)));
    let (s, t) = SpanRep::preferred(13).unwrap().trace_pair();
    let root13 = cyclo::sqrt_p(13, 1).unwrap();
    let want_t = (&CycloNum::int(3) + &root13).scale(1, 2);
    assert_eq!(s, CycloNum::int(1));
    assert_eq!(t, want_t);
    assert!((t.to_complex().re - (3.0 + 13f64.sqrt()) / 2.0).abs() < 1e-12);
}

#[test]
fn decompositions_and_genera() {
    let expect: [(u32, Vec<u32>, i64); 3] = [(7, vec![1], 3), (11, vec![10], 26), (13, vec![1, 7, 13], 50)];
    for (p, dims, genus) in expect {
        let (summary, dec, tbl) = rep::decompose_preferred(p).unwrap();
        let mut got = summary.dims.clone();
        got.sort_unstable();
        assert_eq!(got, dims, "p = {p}");
        assert!(dec.reconstructs);
        assert_eq!(rep::genus_formula(p), genus);
        // Holomorphic differentials: each degree counted Σ r / 2 times.
        let grp = group::Group::new(p, group::Variant::Psl).unwrap();
        let r: Vec<i64> = (0..tbl.degrees.len()).map(|i| rep::hecke_multiplicity(&grp, &tbl, i).unwrap()).collect();
        let mut by_degree = std::collections::BTreeMap::new();
        for (ri, d) in r.iter().zip(&tbl.degrees) {
            *by_degree.entry(*d as i64).or_insert(0) += ri;
        }
        let parts: Vec<(i64, i64)> = by_degree.into_iter().filter(|(_, c)| *c > 0).map(|(d, c)| (d, c / 2)).collect();
        let want: Vec<(i64, i64)> = match p {
            7 => vec![(3, 1)],
            11 => vec![(5, 1), (10, 1), (11, 1)],
            _ => vec![(12, 3), (14, 1)],
        };
        assert_eq!(parts, want, "p = {p}");
    }
}

#[test]
fn level_thirteen_generators() {
    let w = WeilGenerators::new(13).unwrap();
    assert_eq!(w.central_sign, -1);
    let rows = group::generator_relations(&w);
    assert!(rows.iter().any(|r| r.check_id == "group13.q3p4_cubed" && r.passed()));
}

#[test]
fn j_coefficients() {
    let j = qtheta::j_series(3);
    let c = |e: i64| j.coefficient(Rational64::from_integer(e));
    assert_eq!(c(-1), CycloNum::int(1));
    assert_eq!(c(0), CycloNum::int(744));
    assert_eq!(c(1), CycloNum::int(196884));
    assert_eq!(c(2), CycloNum::int(21493760));
}

#[test]
fn level_five_modular_equation() {
    // j(5z) = -(s² - 10s + 5)³ / s with s = -(η(z)/η(5z))⁶.
    let k = 30;
    let t = hauptmodul(5, 6, k + 10).scale(&CycloNum::int(-1)).unwrap();
    let j5 = qtheta::j_series(k + 5).substitute_power(5);
    let rhs = poly_in(&t, &[5, -10, 1]).pow(3).unwrap();
    assert!(vanishes_through(&(&(&j5 * &t) + &rhs), k));
}

#[test]
fn level_seven_modular_equation() {
    // j(7z) = (t² + 13t + 49)(t² + 5t + 1)³ / t with t = (η(z)/η(7z))⁴.
    let k = 30;
    let t = hauptmodul(7, 4, k + 24);
    let j7 = qtheta::j_series(k + 5).substitute_power(7);
    let rhs = &poly_in(&t, &[49, 13, 1]) * &poly_in(&t, &[1, 5, 1]).pow(3).unwrap();
    assert!(vanishes_through(&(&(&j7 * &t) - &rhs), k));
    // j(z) = (t² + 13t + 49)(t² + 245t + 2401)³ / t⁷
    let j1 = qtheta::j_series(k + 10);
    let rhs = &poly_in(&t, &[49, 13, 1]) * &poly_in(&t, &[2401, 245, 1]).pow(3).unwrap();
    assert!(vanishes_through(&(&(&j1 * &t.pow(7).unwrap()) - &rhs), k));
}

#[test]
fn level_thirteen_modular_equation_and_expansion() {
    // j(13z) = (t² + 5t + 13)(t⁴ + 7t³ + 20t² + 19t + 1)³ / t with t = (η(z)/η(13z))².
    let k = 30;
    let t = hauptmodul(13, 2, k + 20);
    let j13 = qtheta::j_series(k + 5).substitute_power(13);
    let rhs = &poly_in(&t, &[13, 5, 1]) * &poly_in(&t, &[1, 19, 20, 7, 1]).pow(3).unwrap();
    assert!(vanishes_through(&(&(&j13 * &t) - &rhs), k));
    // (J - 1)·1728 t = t¹⁴ + 13(2t¹³ + 25t¹² + … + 1165t²) - 982t + 13
    let inner = [1165, 9604, 27272, 41140, 39182, 25660, 12086, 4180, 1064, 196, 25, 2];
    let mut coeffs = vec![13, -982];
    coeffs.extend(inner.iter().map(|c| 13 * c));
    coeffs.push(1);
    assert_eq!(coeffs.len(), 15);
    let lhs = &(&j13 - &konst(1728)) * &t;
    assert!(vanishes_through(&(&lhs - &poly_in(&t, &coeffs)), k));
}

#[test]
fn fricke_products() {
    let tau = Complex64::new(0.3, 1.7);
    for (p, e, want) in [(2.0, 24, 4096.0), (3.0, 12, 729.0), (5.0, 6, 125.0), (7.0, 4, 49.0), (13.0, 2, 13.0)] {
        let t = |z: Complex64| (eta(z) / eta(z * p)).powi(e);
        let prod = t(tau) * t(-1.0 / (p * tau));
        assert!((prod - want).norm() < 1e-6, "p = {p}: {prod}");
        let lib = qtheta::fricke_check(p as u32, tau, 1e-6).unwrap();
        assert!(lib.passed && lib.expected as f64 == want);
    }
}

#[test]
fn level_seven_multiplier_for_the_first_coordinate() {
    // z ↦ z + 1 multiplies z₁ by ε^{(1 - 7)/2} = ε^{-3}, ε = e^{2πi/7}.
    let c = qtheta::t_check(7, 1, 10);
    assert!(c.passed);
    // ε^{-3} = e^{2πi·(-3/7)}, i.e. the phase 4/7 modulo 1.
    assert_eq!(c.expected, "4/7");
    assert_eq!(c.multiplier, "4/7");
}
