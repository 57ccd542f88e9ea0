//! Transcribed reference data and series helpers shared by the
//! integration tests.
#![allow(dead_code)]

use modcurve::locus::{self, QuarticSystem};
use modcurve::qtheta::{self, PuiseuxSeries};
use modcurve::Poly;
use num_complex::Complex64;
use num_rational::Rational64;
use std::f64::consts::PI;

/// The 21 distinct level-13 quartics as enumerated, with every label that
/// produces each one.
pub const LEVEL13_LIST: [(&[&str], &str); 21] = [
    (&["0123"], "E1^3*E5-E2^3*E4+E3^3*E1"),
    (&["0124", "3456"], "E1^2*E2*E6-E2^2*E3*E5+E4^2*E1*E3"),
    (&["0125", "1234"], "-E1^2*E3*E6-E2^2*E4*E6+E5^2*E1*E3"),
    (&["0126", "2345"], "-E1^2*E4*E5+E2^2*E5*E6+E6^2*E1*E3"),
    (&["0134"], "-E1^3*E6-E3^3*E5+E4^3*E2"),
    (&["0135", "2356"], "-E1^2*E2*E5-E3^2*E4*E6+E5^2*E2*E4"),
    (&["0136", "1245"], "-E1^3*E3*E4+E3^2*E5*E6+E6^2*E2*E4"),
    (&["0145"], "-E1^3*E4-E4^3*E6+E5^3*E3"),
    (&["0146", "1256"], "-E1^2*E2*E3+E4^2*E5*E6+E6^2*E3*E5"),
    (&["0156"], "-E1^3*E2+E5^3*E6+E6^3*E4"),
    (&["0234", "2456"], "-E2^2*E1*E6-E3^2*E2*E6+E4^2*E1*E5"),
    (&["0235"], "-E2^3*E5+E3^3*E6+E5^3*E1"),
    (&["0236", "1346"], "-E2^2*E3*E4+E3^2*E4*E5+E6^2*E1*E5"),
    (&["0245", "1356"], "-E2^2*E1*E4+E4^2*E3*E6+E5^2*E2*E6"),
    (&["0246"], "-E2^3*E3+E4^3*E5+E6^3*E2"),
    (&["0256"], "-E2^3*E1+E5^3*E4-E6^3*E3"),
    (&["0345", "1236"], "-E3^2*E1*E4+E4^2*E2*E5-E5^2*E1*E6"),
    (&["0346"], "-E3^3*E2+E4^3*E3-E6^3*E1"),
    (&["0356", "1246"], "-E3^2*E1*E2+E5^2*E3*E4-E6^2*E2*E5"),
    (&["0456", "1345"], "-E4^2*E1*E2+E5^2*E2*E3-E6^2*E1*E4"),
    (&["1235", "1456", "2346"], "-E1*E2*E3*E5+E2*E3*E4*E6+E1*E4*E5*E6"),
];

/// The seventh entry is listed with `E1^3`, which is not a quartic; the
/// generated form has `E1^2` there.
pub const LEVEL13_CORRECTION: (usize, &str, &str) = (6, "-E1^3*E3*E4", "-E1^2*E3*E4");

pub fn parse_label(s: &str) -> [u32; 4] {
    let d: Vec<u32> = s.chars().map(|c| c.to_digit(10).unwrap()).collect();
    [d[0], d[1], d[2], d[3]]
}

/// Compares the generated level-13 system with the enumeration: every entry
/// must match up to sign, with exactly the listed labels, and the entries
/// must be pairwise distinct.
pub fn compare_level13_list(sys: &QuarticSystem) -> Result<(), String> {
    if sys.distinct_count() != 21 {
        return Err(format!("{} distinct quartics, expected 21", sys.distinct_count()));
    }
    let (idx, listed, fixed) = LEVEL13_CORRECTION;
    let mut seen = Vec::new();
    for (i, (labels, text)) in LEVEL13_LIST.iter().enumerate() {
        let src = if i == idx { text.replace(listed, fixed) } else { text.to_string() };
        let want: Poly = locus::parse_e(&src, 6);
        let first = parse_label(labels[0]);
        let (q, _) = sys.lookup(first).ok_or_else(|| format!("label {first:?} not generated"))?;
        if q.poly != want && q.poly != want.neg() {
            return Err(format!("entry {} ({}) differs from {}", i + 1, labels[0], locus::poly_text(&q.poly)));
        }
        let mut got: Vec<[u32; 4]> = q.aliases.iter().map(|a| a.0).collect();
        let mut expected: Vec<[u32; 4]> = labels.iter().map(|l| parse_label(l)).collect();
        got.sort_unstable();
        expected.sort_unstable();
        if got != expected {
            return Err(format!("aliases of entry {}: {got:?} vs {expected:?}", i + 1));
        }
        seen.push(q.label);
    }
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != 21 {
        return Err(format!("entries cover {} distinct quartics", seen.len()));
    }
    Ok(())
}

pub fn konst(n: i64) -> PuiseuxSeries {
    PuiseuxSeries::from_integers(1, [(0, n)], None)
}

/// `Σ c_i tⁱ` with coefficients listed from the constant term up.
pub fn poly_in(t: &PuiseuxSeries, coeffs: &[i64]) -> PuiseuxSeries {
    let mut acc = konst(0);
    for &c in coeffs.iter().rev() {
        acc = &(&acc * t) + &konst(c);
    }
    acc
}

pub fn vanishes_through(s: &PuiseuxSeries, k: i64) -> bool {
    assert!(s.trunc().map_or(true, |t| t > Rational64::from_integer(k)), "truncation {:?} too low", s.trunc());
    s.terms().all(|(e, c)| e > Rational64::from_integer(k) || c.is_zero_value())
}

/// `t = (η(z)/η(pz))^e` built here from the η expansions.
pub fn hauptmodul(p: i64, e: i64, k: i64) -> PuiseuxSeries {
    let ratio = &qtheta::eta_series(1, k) * &qtheta::eta_series(p, k).inv().unwrap();
    ratio.pow(e).unwrap()
}

/// η(τ) as a truncated product.
pub fn eta(tau: Complex64) -> Complex64 {
    let q = (Complex64::new(0.0, 2.0 * PI) * tau).exp();
    let mut acc = (Complex64::new(0.0, 2.0 * PI / 24.0) * tau).exp();
    for n in 1..400 {
        acc *= Complex64::new(1.0, 0.0) - q.powi(n);
    }
    acc
}
