//! The quartic ideal of the modular curve in the odd theta coordinates.
//!
//! For an odd prime `p = 2m + 1` the curve sits in projective space with
//! coordinates `E_1..E_m`, extended to all residues by `E_{-t} = -E_t` and
//! `E_0 = 0`. The quartics
//!
//! ```text
//! Φ_{w,x,y,z} = E_{w+x}E_{w-x}E_{y+z}E_{y-z}
//!             + E_{w+y}E_{w-y}E_{z+x}E_{z-x}
//!             + E_{w+z}E_{w-z}E_{x+y}E_{x-y}
//! ```
//!
//! with `0 <= a < b < c < d <= m` cut out the curve. This module builds and
//! deduplicates them, tests membership, checks the tangent lines at the
//! points `κ_t`, and matches them with other presentations at `p = 7, 11, 13`.

use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclo::{self, CycloNum};
use crate::group::WeilGenerators;
use crate::invariants::{self, Poly};
use crate::linalg::{coefficient_matrix, poly_span_rank, Matrix};
use crate::mpoly::{parse_poly, Monomial};

/// Errors from the locus constructions.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum LocusError {
    /// The quartic system is empty for primes below 7.
    #[error("the quartic system is degenerate for p = {0}; need a prime p >= 7")]
    Degenerate(u32),
    /// The argument is not an odd prime.
    #[error("{0} is not an odd prime")]
    NotOddPrime(u32),
    /// A point has the wrong number of coordinates.
    #[error("point has {got} coordinates, expected {expected}")]
    DimensionMismatch {
        /// Number of coordinates supplied.
        got: usize,
        /// Number of variables of the system.
        expected: usize,
    },
    /// The residue is zero modulo `p`.
    #[error("residue {0} is zero modulo p")]
    ZeroResidue(i64),
    /// The operation only applies to one prime.
    #[error("operation requires p = {expected}, got {got}")]
    WrongPrime {
        /// The prime supplied.
        got: u32,
        /// The prime required.
        expected: u32,
    },
}

/// Reduces `t` into the folded basis: `Some((i, s))` means `E_t = s·E_{i+1}`
/// (0-based variable `i`), `None` means `E_t = 0`.
pub fn fold_index(p: u32, t: i64) -> Option<(usize, i64)> {
    let p = p as i64;
    let m = (p - 1) / 2;
    let r = t.rem_euclid(p);
    if r == 0 {
        None
    } else if r <= m {
        Some((r as usize - 1, 1))
    } else {
        Some(((p - r) as usize - 1, -1))
    }
}

fn e_var(p: u32, t: i64) -> Poly {
    let m = (p as usize - 1) / 2;
    match fold_index(p, t) {
        None => Poly::zero(m),
        Some((i, s)) => Poly::var(m, i).scale(&CycloNum::int(s)),
    }
}

/// The quartic `Φ_{w,x,y,z}` in the folded variables `E_1..E_m`.
///
/// Returns the zero polynomial when the three terms cancel, for example
/// when two arguments coincide.
pub fn quartic(p: u32, w: i64, x: i64, y: i64, z: i64) -> Poly {
    let e = |t: i64| e_var(p, t);
    let term = |a: i64, b: i64, c: i64, d: i64| e(a + b).mul(&e(a - b)).mul(&e(c + d)).mul(&e(c - d));
    term(w, x, y, z).add(&term(w, y, z, x)).add(&term(w, z, x, y))
}

/// Flips the sign of `q` so that its lexicographically leading coefficient is `+1`-signed.
///
/// Returns the normalized form and the sign applied.
pub fn normalize_sign(q: &Poly) -> (Poly, i64) {
    match q.lex_leading() {
        Some((_, c)) if c.to_complex().re < 0.0 => (q.neg(), -1),
        _ => (q.clone(), 1),
    }
}

/// One distinct quartic of the system.
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledQuartic {
    /// The least label producing this quartic up to sign.
    pub label: [u32; 4],
    /// The quartic, sign-normalized.
    pub poly: Poly,
    /// Every label `a < b < c < d` producing `±poly`, with the sign `s` such
    /// that `Φ_label = s · poly`.
    pub aliases: Vec<([u32; 4], i64)>,
}

/// The deduplicated quartic system for one prime.
#[derive(Clone, Debug, PartialEq)]
pub struct QuarticSystem {
    /// The prime.
    pub p: u32,
    /// Number of variables `m = (p-1)/2`.
    pub nvars: usize,
    /// Number of labels `a < b < c < d` in `0..=m`.
    pub raw_count: usize,
    /// Labels whose quartic vanishes identically.
    pub zero_labels: Vec<[u32; 4]>,
    /// The distinct quartics, in order of their least label.
    pub quartics: Vec<LabeledQuartic>,
}

/// Builds all quartics `Φ_{a,b,c,d}` for `0 <= a < b < c < d <= (p-1)/2`,
/// normalizes their signs and merges duplicates.
pub fn generate_ideal(p: u32) -> Result<QuarticSystem, LocusError> {
    if p < 3 || !cyclo::is_prime(p as u64) {
        return Err(LocusError::NotOddPrime(p));
    }
    if p < 7 {
        return Err(LocusError::Degenerate(p));
    }
    let m = (p - 1) / 2;
    let mut quartics: Vec<LabeledQuartic> = Vec::new();
    let mut zero_labels = Vec::new();
    let mut raw_count = 0;
    for a in 0..=m {
        for b in a + 1..=m {
            for c in b + 1..=m {
                for d in c + 1..=m {
                    raw_count += 1;
                    let label = [a, b, c, d];
                    let q = quartic(p, a as i64, b as i64, c as i64, d as i64);
                    if q.is_zero() {
                        zero_labels.push(label);
                        continue;
                    }
                    let (nq, s) = normalize_sign(&q);
                    match quartics.iter_mut().find(|x| x.poly == nq) {
                        Some(x) => x.aliases.push((label, s)),
                        None => quartics.push(LabeledQuartic { label, poly: nq, aliases: vec![(label, s)] }),
                    }
                }
            }
        }
    }
    Ok(QuarticSystem { p, nvars: m as usize, raw_count, zero_labels, quartics })
}

impl QuarticSystem {
    /// Number of distinct quartics.
    pub fn distinct_count(&self) -> usize {
        self.quartics.len()
    }

    /// The distinct quartics as a list.
    pub fn polys(&self) -> Vec<Poly> {
        self.quartics.iter().map(|q| q.poly.clone()).collect()
    }

    /// Dimension of the linear span of the quartics.
    pub fn span_dim(&self) -> usize {
        poly_span_rank(&self.polys(), 0.0)
    }

    /// The distinct quartic equal to `±Φ_label`, with the sign.
    pub fn lookup(&self, label: [u32; 4]) -> Option<(&LabeledQuartic, i64)> {
        self.quartics
            .iter()
            .find_map(|q| q.aliases.iter().find(|(l, _)| *l == label).map(|(_, s)| (q, *s)))
    }

    fn check_dim(&self, n: usize) -> Result<(), LocusError> {
        if n == self.nvars {
            Ok(())
        } else {
            Err(LocusError::DimensionMismatch { got: n, expected: self.nvars })
        }
    }

    /// Exact membership: every quartic vanishes at the cyclotomic point.
    pub fn contains(&self, point: &[CycloNum]) -> Result<bool, LocusError> {
        self.check_dim(point.len())?;
        Ok(self.quartics.iter().all(|q| q.poly.eval(point).is_zero()))
    }

    /// Largest scale-normalized residual `|q(x)| / (Σ|coeffs| · |x|_∞⁴)`
    /// over the quartics at a numeric point.
    pub fn residual(&self, point: &[Complex64]) -> Result<f64, LocusError> {
        self.check_dim(point.len())?;
        let scale = point.iter().map(|x| x.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return Ok(0.0);
        }
        let x: Vec<Complex64> = point.iter().map(|v| v / scale).collect();
        Ok(self
            .quartics
            .iter()
            .map(|q| {
                let weight: f64 = q.poly.terms().map(|(_, c)| c.to_complex().norm()).sum();
                q.poly.eval_c64(&x).norm() / weight
            })
            .fold(0.0, f64::max))
    }

    /// True when the span of the quartics is mapped into itself by
    /// `q ↦ q ∘ A` for every matrix `A` given.
    pub fn is_stable_under(&self, mats: &[Matrix<CycloNum>]) -> bool {
        let base = self.polys();
        let r = poly_span_rank(&base, 0.0);
        mats.iter().all(|a| {
            base.iter().all(|q| {
                let mut ext = base.clone();
                ext.push(q.substitute_linear(a));
                poly_span_rank(&ext, 0.0) == r
            })
        })
    }
}

/// The point `κ_t`: the single coordinate `E_t` is nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct KappaPoint {
    /// The prime.
    pub p: u32,
    /// The residue in `1..=p-1` it was built from.
    pub t: u32,
    /// Coordinates in the folded basis.
    pub coords: Vec<CycloNum>,
}

impl KappaPoint {
    /// `κ_t`, with `+1` at `E_t` folded into `E_1..E_m`.
    pub fn new(p: u32, t: i64) -> Result<Self, LocusError> {
        if p < 3 || !cyclo::is_prime(p as u64) {
            return Err(LocusError::NotOddPrime(p));
        }
        let (i, s) = fold_index(p, t).ok_or(LocusError::ZeroResidue(t))?;
        let m = (p as usize - 1) / 2;
        let mut coords = vec![CycloNum::int(0); m];
        coords[i] = CycloNum::int(s);
        Ok(KappaPoint { p, t: t.rem_euclid(p as i64) as u32, coords })
    }

    /// Index of the nonzero coordinate.
    pub fn support(&self) -> usize {
        self.coords.iter().position(|c| !c.is_zero()).expect("one nonzero coordinate")
    }

    /// Equality as projective points.
    pub fn same_point(&self, other: &KappaPoint) -> bool {
        self.p == other.p && self.support() == other.support()
    }

    /// Numeric coordinates.
    pub fn to_c64(&self) -> Vec<Complex64> {
        self.coords.iter().map(|c| c.to_complex()).collect()
    }
}

impl fmt::Display for KappaPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "κ_{} (p = {})", self.t, self.p)
    }
}

/// Result of the tangent-line check at `κ_t`.
#[derive(Clone, Debug)]
pub struct TangentCheck {
    /// The residue `t`.
    pub t: u32,
    /// Rank of the Jacobian of the system at `κ_t`.
    pub rank: usize,
    /// Expected rank `(p-1)/2 - 2`.
    pub expected_rank: usize,
    /// Basis of the kernel of the Jacobian.
    pub kernel: Vec<Vec<CycloNum>>,
    /// True when the kernel is exactly the span of `κ_t` and `κ_{3t}`.
    pub kernel_is_line_to_3t: bool,
}

impl TangentCheck {
    /// True when both the rank and the kernel are as expected.
    pub fn passed(&self) -> bool {
        self.rank == self.expected_rank && self.kernel_is_line_to_3t
    }
}

/// Jacobian rank and kernel at `κ_t`; the kernel should be the plane
/// spanned by `κ_t` and `κ_{3t}`, i.e. the tangent line joins them.
pub fn tangent_check(t: i64, sys: &QuarticSystem) -> Result<TangentCheck, LocusError> {
    let k = KappaPoint::new(sys.p, t)?;
    let k3 = KappaPoint::new(sys.p, 3 * t)?;
    let n = sys.nvars;
    let rows: Vec<Vec<CycloNum>> = sys
        .quartics
        .iter()
        .map(|q| (0..n).map(|i| q.poly.diff(i).eval(&k.coords)).collect())
        .collect();
    let jac = Matrix::from_rows(rows);
    let rank = jac.rank(0.0);
    let kernel = jac.kernel(0.0);
    let line = Matrix::from_cols(&[k.coords.clone(), k3.coords.clone()]);
    let in_kernel = jac.mul(&line).entries().iter().all(|c| c.is_zero());
    let kernel_is_line_to_3t = kernel.len() == 2 && line.rank(0.0) == 2 && in_kernel;
    Ok(TangentCheck { t: k.t, rank, expected_rank: n.saturating_sub(2), kernel, kernel_is_line_to_3t })
}

/// A monomial relabeling `x_i = sign_i · v_{perm_i}` that turns the single
/// `p = 7` quartic into `scale · (λ³μ + μ³ν + ν³λ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KleinWitness {
    /// `E_{i+1}` is replaced by `signs[i] · (λ, μ, ν)[perm[i]]`.
    pub perm: [usize; 3],
    /// Signs of the substitution.
    pub signs: [i64; 3],
    /// The overall factor relating the result to Klein's quartic.
    pub scale: i64,
}

/// Searches signed permutations of `E_1, E_2, E_3` for one carrying the
/// `p = 7` quartic to Klein's quartic up to sign.
pub fn klein_relabel(sys7: &QuarticSystem) -> Result<Option<KleinWitness>, LocusError> {
    if sys7.p != 7 {
        return Err(LocusError::WrongPrime { got: sys7.p, expected: 7 });
    }
    let phi = &sys7.quartics[0].poly;
    let klein = invariants::klein_quartic();
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for perm in perms {
        for bits in 0..8 {
            let signs = [0, 1, 2].map(|i| if bits >> i & 1 == 1 { -1 } else { 1 });
            let mut a = Matrix::zeros(3, 3);
            for i in 0..3 {
                a.set(i, perm[i], CycloNum::int(signs[i]));
            }
            let img = phi.substitute_linear(&a);
            for scale in [1i64, -1] {
                if img == klein.scale(&CycloNum::int(scale)) {
                    return Ok(Some(KleinWitness { perm, signs, scale }));
                }
            }
        }
    }
    Ok(None)
}

/// The expected pairing of the 21 quartic basis forms at `p = 13` with
/// quartics `Φ`: `(basis label, Φ label, sign)`.
pub const B_PAIRING: [(&str, [u32; 4], i64); 21] = [
    ("00", [1, 2, 3, 5], 1),
    ("01", [0, 2, 5, 6], -1),
    ("02", [0, 1, 3, 4], -1),
    ("1_1", [0, 1, 2, 3], 1),
    ("1_2", [0, 1, 4, 6], 1),
    ("3_1", [0, 1, 4, 5], 1),
    ("3_2", [0, 2, 3, 4], -1),
    ("9_1", [0, 3, 4, 6], -1),
    ("9_2", [0, 1, 3, 5], -1),
    ("12_1", [0, 2, 3, 5], 1),
    ("12_2", [0, 4, 5, 6], 1),
    ("10_1", [0, 1, 5, 6], -1),
    ("10_2", [0, 2, 3, 6], 1),
    ("4_1", [0, 2, 4, 6], -1),
    ("4_2", [0, 1, 2, 5], 1),
    ("5", [0, 3, 5, 6], 1),
    ("2", [0, 1, 2, 6], -1),
    ("6", [0, 2, 4, 5], -1),
    ("8", [0, 1, 2, 4], -1),
    ("11", [0, 3, 4, 5], -1),
    ("7", [0, 1, 3, 6], -1),
];

/// One row of the basis-form correspondence.
#[derive(Clone, Debug, PartialEq)]
pub struct BPair {
    /// Label of the basis form.
    pub b_label: &'static str,
    /// Expected `Φ` label.
    pub phi_label: [u32; 4],
    /// Expected sign.
    pub sign: i64,
    /// Whether `B(substituted) = sign · Φ_label` holds exactly.
    pub holds: bool,
    /// The label and sign actually found among all quartics, if any.
    pub found: Option<([u32; 4], i64)>,
}

/// The correspondence table together with the rank of the substituted forms.
#[derive(Clone, Debug)]
pub struct BCorrespondence {
    /// One row per basis form.
    pub pairs: Vec<BPair>,
    /// Rank of the 21 substituted basis forms.
    pub image_rank: usize,
}

impl BCorrespondence {
    /// True when every pairing holds and the map on spans is bijective.
    pub fn passed(&self) -> bool {
        self.pairs.iter().all(|p| p.holds) && self.image_rank == 21
    }
}

/// The linear map `z ↦ E` with `ω = e^{πi/4}`:
/// `z = (-ωE_1, -ωE_3, ωE_4, ωE_5, ωE_2, ωE_6)`, over `Q(ζ_104)`.
pub fn b_substitution13() -> Matrix<CycloNum> {
    let w = CycloNum::root_of_unity(104, 13);
    let nw = -w.clone();
    let mut a = Matrix::zeros(6, 6);
    for (row, (col, c)) in [(0, &nw), (2, &nw), (3, &w), (4, &w), (1, &w), (5, &w)].iter().enumerate() {
        a.set(row, *col, (*c).clone());
    }
    a
}

/// Substitutes the variable change into each basis form and compares with
/// the expected `±Φ`, searching the whole system for the actual match.
pub fn b_correspondence(sys13: &QuarticSystem) -> Result<BCorrespondence, LocusError> {
    if sys13.p != 13 {
        return Err(LocusError::WrongPrime { got: sys13.p, expected: 13 });
    }
    let a = b_substitution13();
    let b = invariants::b_forms13();
    let mut images = Vec::new();
    let pairs = B_PAIRING
        .iter()
        .map(|(lab, phi_label, sign)| {
            let img = b[invariants::b13_index(lab)].substitute_linear(&a);
            let [w, x, y, z] = phi_label.map(|v| v as i64);
            let holds = img == quartic(13, w, x, y, z).scale(&CycloNum::int(*sign));
            let found = sys13.quartics.iter().find_map(|q| {
                if img == q.poly {
                    Some((q.label, 1))
                } else if img == q.poly.neg() {
                    Some((q.label, -1))
                } else {
                    None
                }
            });
            images.push(img);
            BPair { b_label: lab, phi_label: *phi_label, sign: *sign, holds, found }
        })
        .collect();
    let image_rank = coefficient_matrix(&images).rank(0.0);
    Ok(BCorrespondence { pairs, image_rank })
}

/// The change of coordinates `y ↦ E` at `p = 11`:
/// `y1 = E1, y4 = -E2, y5 = E4, y9 = E3, y3 = E5`.
pub fn y_to_e11() -> Matrix<CycloNum> {
    let mut a = Matrix::zeros(5, 5);
    for (row, col, s) in [(0, 0, 1), (1, 1, -1), (2, 3, 1), (3, 2, 1), (4, 4, 1)] {
        a.set(row, col, CycloNum::int(s));
    }
    a
}

/// Ranks comparing the quartic span at `p = 11` with the basis forms and the
/// quartic relations written in the `y` coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanComparison11 {
    /// Rank of the `Φ` quartics.
    pub phi_rank: usize,
    /// Rank of the ten basis forms.
    pub bb_rank: usize,
    /// Rank of `Φ` together with the basis forms.
    pub phi_bb_rank: usize,
    /// Rank of the ten three-term relations.
    pub h3_rank: usize,
    /// Rank of `Φ` together with the three-term relations.
    pub phi_h3_rank: usize,
    /// Rank of `Φ` together with all fifteen relations.
    pub phi_h_all_rank: usize,
}

impl SpanComparison11 {
    /// True when the three presentations span one 10-dimensional space.
    pub fn same_span(&self) -> bool {
        self.phi_rank == 10 && self.bb_rank == 10 && self.phi_bb_rank == 10 && self.h3_rank == 10 && self.phi_h3_rank == 10
    }

    /// True when the four-term relations add new directions.
    pub fn four_term_outside(&self) -> bool {
        self.phi_h_all_rank > self.phi_rank
    }
}

/// Compares the `p = 11` spans after moving the `y` forms to `E` coordinates.
pub fn span_comparison11(sys11: &QuarticSystem, w11: &WeilGenerators) -> Result<SpanComparison11, LocusError> {
    if sys11.p != 11 {
        return Err(LocusError::WrongPrime { got: sys11.p, expected: 11 });
    }
    let a = y_to_e11();
    let forms = invariants::forms11(w11);
    let to_e = |v: &[Poly]| -> Vec<Poly> { v.iter().map(|f| f.substitute_linear(&a)).collect() };
    let phi = sys11.polys();
    let bb = to_e(&forms.bb);
    let h_all = to_e(&forms.h_relations);
    let h3 = h_all[5..].to_vec();
    let rank = |parts: &[&[Poly]]| poly_span_rank(&parts.concat(), 0.0);
    Ok(SpanComparison11 {
        phi_rank: rank(&[&phi]),
        bb_rank: rank(&[&bb]),
        phi_bb_rank: rank(&[&phi, &bb]),
        h3_rank: rank(&[&h3]),
        phi_h3_rank: rank(&[&phi, &h3]),
        phi_h_all_rank: rank(&[&phi, &h_all]),
    })
}

/// Parses a quartic written in `E1..Em`.
pub fn parse_e(src: &str, m: usize) -> Poly {
    let names: Vec<String> = (1..=m).map(|i| format!("E{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    parse_poly(src, &refs)
}

/// JSON form of a quartic system: labels, aliases and terms.
pub fn system_to_json(sys: &QuarticSystem) -> serde_json::Value {
    let quartics: Vec<serde_json::Value> = sys
        .quartics
        .iter()
        .map(|q| {
            serde_json::json!({
                "label": q.label,
                "aliases": q.aliases.iter().map(|(l, s)| serde_json::json!({"label": l, "sign": s})).collect::<Vec<_>>(),
                "poly": q.poly,
                "text": poly_text(&q.poly),
            })
        })
        .collect();
    serde_json::json!({
        "p": sys.p,
        "nvars": sys.nvars,
        "raw_count": sys.raw_count,
        "distinct_count": sys.distinct_count(),
        "zero_labels": sys.zero_labels,
        "quartics": quartics,
    })
}

/// Renders an integer-coefficient polynomial in `E` variables, e.g.
/// `E1^3*E5 - E2^3*E4 + E3^3*E1`, with terms in lexicographic order.
pub fn poly_text(q: &Poly) -> String {
    let mut terms: Vec<(&Monomial, &CycloNum)> = q.terms().collect();
    terms.sort_by(|a, b| b.0.lex_cmp(a.0));
    let mut out = String::new();
    for (i, (m, c)) in terms.iter().enumerate() {
        let v = c.to_complex().re;
        let neg = v < 0.0;
        let mag = c.to_rational().map(|r| if neg { -r } else { r });
        let sign = match (i, neg) {
            (0, true) => "-".to_string(),
            (0, false) => String::new(),
            (_, true) => " - ".to_string(),
            (_, false) => " + ".to_string(),
        };
        let factors: Vec<String> = m
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(j, &e)| if e == 1 { format!("E{}", j + 1) } else { format!("E{}^{}", j + 1, e) })
            .collect();
        let coeff = match mag {
            Some(r) if r == num_rational::BigRational::from_integer(1.into()) => String::new(),
            Some(r) => format!("{r}*"),
            None => format!("({c})*"),
        };
        out.push_str(&format!("{sign}{coeff}{}", factors.join("*")));
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn folding() {
        assert_eq!(fold_index(13, 0), None);
        assert_eq!(fold_index(13, 6), Some((5, 1)));
        assert_eq!(fold_index(13, 7), Some((5, -1)));
        assert_eq!(fold_index(13, -1), Some((0, -1)));
    }

    #[test]
    fn text_rendering() {
        let q = parse_e("E1^3*E5 - E2^3*E4 + E3^3*E1", 6);
        assert_eq!(poly_text(&q), "E1^3*E5 + E1*E3^3 - E2^3*E4");
    }
}
