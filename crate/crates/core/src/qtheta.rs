//! Truncated q-series with rational exponents over cyclotomic fields, the
//! classical modular forms built from them, and numeric sampling of the
//! modular curves through theta constants.
//!
//! Every series uses the nome `q = e^{2πiz}`. A series stores its exponents
//! as integers over a common grain `D`, together with an exclusive truncation
//! order: coefficients of exponents at or beyond the truncation are unknown.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclo::{field, CycloError, CycloField, CycloNum};
use crate::invariants::{self, Sample11};
use crate::locus::{self, LocusError, QuarticSystem};
use crate::report::VerificationReport;

/// Failures of series construction, arithmetic and sampling.
#[derive(Debug, Error)]
pub enum QthetaError {
    /// A coefficient does not live in the requested field.
    #[error("coefficient field: {0}")]
    Field(#[from] CycloError),
    /// The lowest term of a series is unknown or zero.
    #[error("series is not invertible: {0}")]
    NotInvertible(String),
    /// The prime has no catalogued Hauptmodul.
    #[error("no Hauptmodul is catalogued for p = {0}")]
    UnsupportedPrime(u32),
    /// The parameter lies outside the region where the sums converge quickly.
    #[error("tau = {0} must satisfy Im(tau) >= 0.5")]
    OutOfDomain(Complex64),
    /// The sampled point misses the locus.
    #[error("sampled point has residual {residual:.3e} above tolerance {tol:.1e}")]
    SamplingFailure {
        /// Scale-normalized quartic residual.
        residual: f64,
        /// The tolerance that was exceeded.
        tol: f64,
    },
    /// The quartic system could not be built or evaluated.
    #[error(transparent)]
    Locus(#[from] LocusError),
}

// ------------------------------------------------------------ series type --

/// A truncated Laurent–Puiseux series `Σ c_e q^{e/D}` over a cyclotomic field.
#[derive(Clone)]
pub struct PuiseuxSeries {
    field: Arc<CycloField>,
    grain: i64,
    terms: BTreeMap<i64, CycloNum>,
    /// Exclusive truncation in grain units; `None` for an exact finite sum.
    trunc: Option<i64>,
}

fn rat(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

impl PuiseuxSeries {
    /// Builds a series from `(exponent numerator, coefficient)` pairs over a
    /// grain, embedding every coefficient into `field`.
    pub fn from_terms(
        field: &Arc<CycloField>,
        grain: i64,
        terms: impl IntoIterator<Item = (i64, CycloNum)>,
        trunc: Option<i64>,
    ) -> Result<Self, QthetaError> {
        assert!(grain > 0, "grain must be positive");
        let mut map: BTreeMap<i64, CycloNum> = BTreeMap::new();
        for (e, c) in terms {
            if trunc.is_some_and(|t| e >= t) {
                continue;
            }
            let c = c.embed(field)?;
            let slot = map.entry(e).or_insert_with(|| CycloNum::zero_in(field));
            *slot += &c;
        }
        Ok(PuiseuxSeries { field: field.clone(), grain, terms: map, trunc }.normalized())
    }

    /// An integer-coefficient series over Q.
    pub fn from_integers(grain: i64, terms: impl IntoIterator<Item = (i64, i64)>, trunc: Option<i64>) -> Self {
        let q = field(1).expect("Q is always available");
        Self::from_terms(&q, grain, terms.into_iter().map(|(e, c)| (e, CycloNum::int(c))), trunc)
            .expect("rational coefficients embed in Q")
    }

    /// The exact constant `c`.
    pub fn constant(field: &Arc<CycloField>, c: CycloNum) -> Result<Self, QthetaError> {
        Self::from_terms(field, 1, [(0, c)], None)
    }

    /// The exact monomial `q^r`.
    pub fn monomial(r: Rational64) -> Self {
        Self::from_integers(*r.denom(), [(*r.numer(), 1)], None)
    }

    /// The coefficient field.
    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    /// The grain `D`: all exponents lie in `(1/D)Z`.
    pub fn grain(&self) -> i64 {
        self.grain
    }

    /// The exclusive truncation order, or `None` for an exact finite sum.
    pub fn trunc(&self) -> Option<Rational64> {
        self.trunc.map(|t| rat(t, self.grain))
    }

    /// True when no known coefficient is nonzero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exponent of the lowest nonzero term.
    pub fn valuation(&self) -> Option<Rational64> {
        self.terms.keys().next().map(|&e| rat(e, self.grain))
    }

    /// The coefficient of `q^r` (zero when absent).
    ///
    /// # Panics
    /// Panics when `r` lies at or beyond the truncation order.
    pub fn coefficient(&self, r: Rational64) -> CycloNum {
        if let Some(t) = self.trunc() {
            assert!(r < t, "coefficient of q^{r} requested beyond truncation {t}");
        }
        let scaled = r * self.grain;
        if !scaled.is_integer() {
            return CycloNum::zero_in(&self.field);
        }
        self.terms.get(&scaled.to_integer()).cloned().unwrap_or_else(|| CycloNum::zero_in(&self.field))
    }

    /// The nonzero terms as `(exponent, coefficient)` in increasing order.
    pub fn terms(&self) -> impl Iterator<Item = (Rational64, &CycloNum)> + '_ {
        self.terms.iter().map(move |(&e, c)| (rat(e, self.grain), c))
    }

    /// The number of nonzero known terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Drops zero terms and terms past the truncation, and reduces the grain.
    fn normalized(mut self) -> Self {
        self.terms.retain(|_, c| !c.is_zero_value());
        if let Some(t) = self.trunc {
            self.terms.retain(|&e, _| e < t);
        }
        let mut g = self.grain;
        for &e in self.terms.keys() {
            g = g.gcd(&e);
        }
        if let Some(t) = self.trunc {
            g = g.gcd(&t);
        }
        if g > 1 {
            self.grain /= g;
            self.terms = std::mem::take(&mut self.terms).into_iter().map(|(e, c)| (e / g, c)).collect();
            self.trunc = self.trunc.map(|t| t / g);
        }
        self
    }

    /// Re-expresses the exponents over the grain `d` (a multiple of the current grain).
    fn regrained(&self, d: i64) -> (BTreeMap<i64, CycloNum>, Option<i64>) {
        let k = d / self.grain;
        debug_assert_eq!(k * self.grain, d);
        (self.terms.iter().map(|(&e, c)| (e * k, c.clone())).collect(), self.trunc.map(|t| t * k))
    }

    fn common_field(&self, other: &Self) -> Result<Arc<CycloField>, QthetaError> {
        let (a, b) = (self.field.conductor(), other.field.conductor());
        Ok(field(a.lcm(&b))?)
    }

    fn with_field(&self, f: &Arc<CycloField>) -> Result<Self, QthetaError> {
        if Arc::ptr_eq(f, &self.field) || f.conductor() == self.field.conductor() {
            return Ok(self.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(&e, c)| Ok((e, c.embed(f)?)))
            .collect::<Result<BTreeMap<_, _>, CycloError>>()?;
        Ok(PuiseuxSeries { field: f.clone(), grain: self.grain, terms, trunc: self.trunc })
    }

    /// Embeds the coefficients into a larger cyclotomic field.
    pub fn embed(&self, f: &Arc<CycloField>) -> Result<Self, QthetaError> {
        if f.conductor() % self.field.conductor() != 0 {
            return Err(CycloError::Embedding { from: self.field.conductor(), to: f.conductor() }.into());
        }
        self.with_field(f)
    }

    fn add_signed(&self, other: &Self, sign: i64) -> Result<Self, QthetaError> {
        let f = self.common_field(other)?;
        let (a, b) = (self.with_field(&f)?, other.with_field(&f)?);
        let d = a.grain.lcm(&b.grain);
        let (mut ta, tra) = a.regrained(d);
        let (tb, trb) = b.regrained(d);
        for (e, c) in tb {
            let slot = ta.entry(e).or_insert_with(|| CycloNum::zero_in(&f));
            if sign > 0 {
                *slot += &c;
            } else {
                *slot -= &c;
            }
        }
        let trunc = min_opt(tra, trb);
        Ok(PuiseuxSeries { field: f, grain: d, terms: ta, trunc }.normalized())
    }

    /// Sum of two series; the truncation is the smaller of the two.
    pub fn try_add(&self, other: &Self) -> Result<Self, QthetaError> {
        self.add_signed(other, 1)
    }

    /// Difference of two series.
    pub fn try_sub(&self, other: &Self) -> Result<Self, QthetaError> {
        self.add_signed(other, -1)
    }

    /// Product of two series.
    ///
    /// The truncation of the product is `min(tᵃ + vᵇ, tᵇ + vᵃ)` where `t` is a
    /// truncation and `v` a valuation.
    pub fn try_mul(&self, other: &Self) -> Result<Self, QthetaError> {
        let f = self.common_field(other)?;
        let (a, b) = (self.with_field(&f)?, other.with_field(&f)?);
        let d = a.grain.lcm(&b.grain);
        let (ta, tra) = a.regrained(d);
        let (tb, trb) = b.regrained(d);
        let va = ta.keys().next().copied();
        let vb = tb.keys().next().copied();
        let trunc = match (tra, trb) {
            (None, None) => None,
            _ => {
                let from_a = tra.map(|t| vb.map_or(t, |v| t + v));
                let from_b = trb.map(|t| va.map_or(t, |v| t + v));
                let t = min_opt(from_a, from_b);
                // a zero exact factor makes the product exactly zero
                if (ta.is_empty() && tra.is_none()) || (tb.is_empty() && trb.is_none()) {
                    None
                } else {
                    t
                }
            }
        };
        let mut out: BTreeMap<i64, CycloNum> = BTreeMap::new();
        for (&ea, ca) in &ta {
            for (&eb, cb) in &tb {
                let e = ea + eb;
                if trunc.is_some_and(|t| e >= t) {
                    break;
                }
                let prod = ca * cb;
                let slot = out.entry(e).or_insert_with(|| CycloNum::zero_in(&f));
                *slot += &prod;
            }
        }
        Ok(PuiseuxSeries { field: f, grain: d, terms: out, trunc }.normalized())
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &CycloNum) -> Result<Self, QthetaError> {
        let c = if c.conductor() == 1 { c.clone() } else { c.embed(&self.field).map_err(QthetaError::from)? };
        let terms = self.terms.iter().map(|(&e, x)| (e, x * &c));
        let mut s = PuiseuxSeries { field: self.field.clone(), grain: self.grain, terms: terms.collect(), trunc: self.trunc };
        if c.is_zero_value() {
            s.terms.clear();
        }
        Ok(s.normalized())
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(&e, c)| (e, -c)).collect();
        PuiseuxSeries { field: self.field.clone(), grain: self.grain, terms, trunc: self.trunc }
    }

    /// Multiplies by `q^r`, shifting the truncation with it.
    pub fn shift(&self, r: Rational64) -> Self {
        let d = self.grain.lcm(r.denom());
        let (terms, trunc) = self.regrained(d);
        let s = (r * d).to_integer();
        let terms = terms.into_iter().map(|(e, c)| (e + s, c)).collect();
        PuiseuxSeries { field: self.field.clone(), grain: d, terms, trunc: trunc.map(|t| t + s) }.normalized()
    }

    /// The substitution `q ↦ q^n` for a positive integer `n`.
    pub fn substitute_power(&self, n: i64) -> Self {
        assert!(n > 0, "substitution exponent must be positive");
        let terms = self.terms.iter().map(|(&e, c)| (e * n, c.clone())).collect();
        PuiseuxSeries { field: self.field.clone(), grain: self.grain, terms, trunc: self.trunc.map(|t| t * n) }.normalized()
    }

    /// Discards every term at or beyond `q^r` and lowers the truncation to `r`.
    pub fn truncate(&self, r: Rational64) -> Self {
        let d = self.grain.lcm(r.denom());
        let (terms, trunc) = self.regrained(d);
        let t = (r * d).to_integer();
        let trunc = Some(trunc.map_or(t, |old| old.min(t)));
        PuiseuxSeries { field: self.field.clone(), grain: d, terms, trunc }.normalized()
    }

    /// Multiplicative inverse.
    ///
    /// Requires a nonzero lowest term known below the truncation. An exact
    /// finite sum with more than one term has no finite inverse and is
    /// rejected.
    pub fn inv(&self) -> Result<Self, QthetaError> {
        let Some((&v, c0)) = self.terms.iter().next() else {
            return Err(QthetaError::NotInvertible("series has no known nonzero term".into()));
        };
        let c0_inv = c0.inv()?;
        let trunc = match self.trunc {
            Some(t) => t,
            None if self.terms.len() == 1 => {
                let terms = BTreeMap::from([(-v, c0_inv)]);
                return Ok(PuiseuxSeries { field: self.field.clone(), grain: self.grain, terms, trunc: None }.normalized());
            }
            None => return Err(QthetaError::NotInvertible("exact sum with several terms needs a truncation".into())),
        };
        // work with the relative exponents in units of their common step
        let mut step = 0i64;
        for &e in self.terms.keys() {
            step = step.gcd(&(e - v));
        }
        step = step.gcd(&(trunc - v));
        if step == 0 {
            step = 1;
        }
        let n = ((trunc - v) / step) as usize;
        let a: Vec<(usize, CycloNum)> = self.terms.iter().map(|(&e, c)| (((e - v) / step) as usize, c.clone())).collect();
        let mut b: Vec<CycloNum> = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                b.push(c0_inv.clone());
                continue;
            }
            let mut acc = CycloNum::zero_in(&self.field);
            for (i, ai) in a.iter().skip(1) {
                if *i > k {
                    break;
                }
                if !b[k - i].is_zero_value() {
                    acc += &(ai * &b[k - i]);
                }
            }
            b.push(-(&acc * &c0_inv));
        }
        let terms = b.into_iter().enumerate().map(|(k, c)| (k as i64 * step - v, c)).collect();
        Ok(PuiseuxSeries { field: self.field.clone(), grain: self.grain, terms, trunc: Some(trunc - 2 * v) }.normalized())
    }

    /// Integer power; negative exponents go through [`PuiseuxSeries::inv`].
    pub fn pow(&self, e: i64) -> Result<Self, QthetaError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::constant(&self.field, CycloNum::one_in(&self.field))?;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&b)?;
            }
            e >>= 1;
            if e > 0 {
                b = b.try_mul(&b)?;
            }
        }
        Ok(acc)
    }

    /// Evaluates a polynomial with integer coefficients (constant term first)
    /// at this series by Horner's rule.
    pub fn eval_poly(&self, coeffs: &[i64]) -> Result<Self, QthetaError> {
        let mut acc = Self::from_integers(1, [], None);
        for &c in coeffs.iter().rev() {
            acc = acc.try_mul(self)?.try_add(&Self::from_integers(1, [(0, c)], None))?;
        }
        Ok(acc)
    }

    /// Numeric value of the known terms at `q = e^{2πiτ}`.
    pub fn eval(&self, tau: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&e, c) in &self.terms {
            let r = e as f64 / self.grain as f64;
            acc += c.to_complex() * (Complex64::new(0.0, 2.0 * PI * r) * tau).exp();
        }
        acc
    }

    /// The exponent of the first nonzero known coefficient at or below `r`.
    pub fn first_nonzero_through(&self, r: Rational64) -> Option<Rational64> {
        self.terms().map(|(e, _)| e).find(|&e| e <= r)
    }
}

fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl PartialEq for PuiseuxSeries {
    fn eq(&self, other: &Self) -> bool {
        self.trunc() == other.trunc()
            && self.len() == other.len()
            && self.terms().zip(other.terms()).all(|((ea, ca), (eb, cb))| ea == eb && ca == cb)
    }
}

impl fmt::Debug for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (e, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *e.numer() == 0 {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*q^{e}")?;
            }
        }
        if let Some(t) = self.trunc() {
            write!(f, " + O(q^{t})")?;
        }
        Ok(())
    }
}

macro_rules! series_op {
    ($tr:ident, $m:ident, $call:ident) => {
        impl std::ops::$tr for &PuiseuxSeries {
            type Output = PuiseuxSeries;
            fn $m(self, rhs: &PuiseuxSeries) -> PuiseuxSeries {
                self.$call(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}
series_op!(Add, add, try_add);
series_op!(Sub, sub, try_sub);
series_op!(Mul, mul, try_mul);

impl std::ops::Neg for &PuiseuxSeries {
    type Output = PuiseuxSeries;
    fn neg(self) -> PuiseuxSeries {
        PuiseuxSeries::neg(self)
    }
}

// ---------------------------------------------------------- q-expansions --

/// `η(Nz) = q^{N/24} ∏(1 − q^{Nn})`, known through `q^K` (exclusive bound `K + 1`).
///
/// Expanded with Euler's pentagonal-number theorem.
pub fn eta_series(n: i64, k: i64) -> PuiseuxSeries {
    assert!(n > 0 && k > 0, "scale and order must be positive");
    let trunc = 24 * (k + 1);
    let mut terms = Vec::new();
    for m in 0.. {
        let mut any = false;
        for g in [m, -m - 1] {
            let pent = g * (3 * g - 1) / 2;
            let e = n + 24 * n * pent;
            if e < trunc {
                terms.push((e, if g % 2 == 0 { 1 } else { -1 }));
                any = true;
            }
        }
        if !any {
            break;
        }
    }
    PuiseuxSeries::from_integers(24, terms, Some(trunc))
}

/// `e^{πi·r}` as an exact root of unity.
fn phase(r: Rational64) -> CycloNum {
    let den = *r.denom();
    CycloNum::root_of_unity((2 * den) as u32, *r.numer())
}

/// The theta constant with characteristic `[a; b]` at `Nz`:
/// `θ[a;b](0, Nz) = Σ_n exp(πi(n + a/2)²Nz + πi(n + a/2)b)`, known through `q^K`,
/// with coefficients in `field`.
pub fn theta_series(a: Rational64, b: Rational64, n: i64, k: i64, field: &Arc<CycloField>) -> Result<PuiseuxSeries, QthetaError> {
    assert!(n > 0 && k >= 0, "scale must be positive");
    let half = a / 2;
    // exponent N(m + a/2)²/2 in q = e^{2πiz}
    let bound = Rational64::from_integer(k + 1);
    let mut terms = Vec::new();
    let centre = (-half).round().to_integer();
    for dist in 0.. {
        let mut any = false;
        for m in [centre + dist, centre - dist - 1] {
            let x = half + m;
            let e = x * x * n / 2;
            if e < bound {
                any = true;
                let c = phase(x * b).embed(field)?;
                terms.push((e, c));
            }
        }
        if !any {
            break;
        }
    }
    let grain = terms.iter().fold(*bound.denom(), |g, (e, _)| g.lcm(e.denom()));
    let terms: Vec<(i64, CycloNum)> = terms.into_iter().map(|(e, c)| ((e * grain).to_integer(), c)).collect();
    PuiseuxSeries::from_terms(field, grain, terms, Some(grain * (k + 1)))
}

/// The derivative `ϑ₁'(0)` of the odd Jacobi theta function, in the nome
/// `q = e^{2πiz}`: `2 Σ_{k≥0} (−1)^k (2k+1) q^{(2k+1)²/8}`, known through `q^K`.
pub fn theta1_prime_series(k: i64) -> PuiseuxSeries {
    let trunc = 8 * (k + 1);
    let mut terms = Vec::new();
    for j in 0.. {
        let e = (2 * j + 1) * (2 * j + 1);
        if e >= trunc {
            break;
        }
        terms.push((e, 2 * if j % 2 == 0 { 1 } else { -1 } * (2 * j + 1)));
    }
    PuiseuxSeries::from_integers(8, terms, Some(trunc))
}

/// `E₄ = 1 + 240 Σ σ₃(n) qⁿ`, known through `q^K`.
pub fn e4_series(k: i64) -> PuiseuxSeries {
    let terms = (0..=k).map(|n| (n, if n == 0 { 1 } else { 240 * sigma3(n) }));
    PuiseuxSeries::from_integers(1, terms, Some(k + 1))
}

fn sigma3(n: i64) -> i64 {
    (1..=n).filter(|d| n % d == 0).map(|d| d * d * d).sum()
}

/// `Δ = η²⁴`, known through `q^K`.
pub fn delta_series(k: i64) -> PuiseuxSeries {
    eta_series(1, k).pow(24).expect("powers of η are defined").truncate(Rational64::from_integer(k + 1))
}

/// The modular invariant `j = q⁻¹ + 744 + 196884q + …`, known through `q^K`.
///
/// Built from the even theta constants as `32(θ₂⁸ + θ₃⁸ + θ₄⁸)³ / (θ₂θ₃θ₄)⁸`.
pub fn j_series(k: i64) -> PuiseuxSeries {
    let q = field(1).expect("Q is always available");
    let w = k + 2;
    let th = |a: i64, b: i64| theta_series(Rational64::from_integer(a), Rational64::from_integer(b), 1, w, &q).expect("integer characteristics");
    let (t2, t3, t4) = (th(1, 0), th(0, 0), th(0, 1));
    let p8 = |s: &PuiseuxSeries| s.pow(8).expect("theta powers");
    let sum = &(&p8(&t2) + &p8(&t3)) + &p8(&t4);
    let num = sum.pow(3).expect("power").scale(&CycloNum::int(32)).expect("scaling");
    let den = p8(&(&(&t2 * &t3) * &t4));
    (&num * &den.inv().expect("θ₂θ₃θ₄ has a nonzero leading term")).truncate(Rational64::from_integer(k + 1))
}

/// `m = gcd(p − 1, 12)` for the primes with a genus-zero `X₀(p)` catalogued here.
pub fn hauptmodul_exponent(p: u32) -> Result<i64, QthetaError> {
    match p {
        2 | 3 | 5 | 7 | 13 => Ok(24 / ((p as i64 - 1).gcd(&12))),
        _ => Err(QthetaError::UnsupportedPrime(p)),
    }
}

/// The Hauptmodul `t = (η(z)/η(pz))^{24/m}` of `X₀(p)` with `m = gcd(p − 1, 12)`,
/// known through `q^K`.
pub fn hauptmodul_series(p: u32, k: i64) -> Result<PuiseuxSeries, QthetaError> {
    let e = hauptmodul_exponent(p)?;
    let w = k + p as i64 + 2;
    let ratio = &eta_series(1, w) * &eta_series(p as i64, w).inv()?;
    Ok(ratio.pow(e)?.truncate(Rational64::from_integer(k + 1)))
}

/// The Fricke constant `p^{12/m}` with `t(z)·t(−1/(pz)) = p^{12/m}`.
pub fn fricke_constant(p: u32) -> Result<i64, QthetaError> {
    let e = hauptmodul_exponent(p)?;
    Ok((p as i64).pow((e / 2) as u32))
}

/// The theta series `z_α = (−1)^α Σ_{k∈Z} (−1)^k q^{(p(2k+1)+2α)²/(8p)}`,
/// known through `q^K`.
///
/// Up to a factor common to all `α` this is `(−1)^α q^{α²/p} ϑ₁(απz, q^p)` in the
/// half-period nome; only ratios of the `z_α` are meaningful.
pub fn z_alpha_series(p: u32, alpha: i64, k: i64) -> PuiseuxSeries {
    let p = p as i64;
    let grain = 8 * p;
    let trunc = grain * (k + 1);
    let sign_a = if alpha.rem_euclid(2) == 0 { 1 } else { -1 };
    let mut terms = Vec::new();
    for dist in 0.. {
        let mut any = false;
        for kk in [dist, -dist - 1] {
            let b = p * (2 * kk + 1) + 2 * alpha;
            let e = b * b;
            if e < trunc {
                any = true;
                terms.push((e, sign_a * if kk.rem_euclid(2) == 0 { 1 } else { -1 }));
            }
        }
        if !any && dist > alpha.abs() {
            break;
        }
    }
    PuiseuxSeries::from_integers(grain, terms, Some(trunc))
}

/// The series `A_α` of the degree `p + 1` multiplier equation, known through
/// `q^K`: `A₀ = Σ(−1)^λ q^{(6λ+1)²p/24}` and
/// `A_α = (−1)^α Σ(−1)^λ (q^{((6λ+1)p+6α)²/(24p)} + q^{((6λ+1)p−6α)²/(24p)})`.
pub fn a_series(p: u32, alpha: i64, k: i64) -> PuiseuxSeries {
    let p = p as i64;
    let grain = 24 * p;
    let trunc = grain * (k + 1);
    let sign_a = if alpha.rem_euclid(2) == 0 { 1 } else { -1 };
    let mut terms = Vec::new();
    for dist in 0.. {
        let mut any = false;
        for l in [dist, -dist - 1i64] {
            let s = if l.rem_euclid(2) == 0 { 1 } else { -1 };
            let base = (6 * l + 1) * p;
            if alpha == 0 {
                let e = base * base;
                if e < trunc {
                    any = true;
                    terms.push((e, s));
                }
            } else {
                for b in [base + 6 * alpha, base - 6 * alpha] {
                    let e = b * b;
                    if e < trunc {
                        any = true;
                        terms.push((e, sign_a * s));
                    }
                }
            }
        }
        if !any && dist > alpha.abs() {
            break;
        }
    }
    PuiseuxSeries::from_integers(grain, terms, Some(trunc))
}

/// Result of the `z ↦ z + 1` check for `z_α`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TCheck {
    /// The prime.
    pub p: u32,
    /// The index `α`.
    pub alpha: i64,
    /// `r` with `z_α(z + 1)/z_α(z) = e^{2πir}` after removing the common factor.
    pub multiplier: String,
    /// The expected exponent `α(α − p)/(2p)` modulo 1.
    pub expected: String,
    /// True when every term of the series picks up the same phase and it matches.
    pub passed: bool,
}

fn frac(r: Rational64) -> Rational64 {
    r - r.floor()
}

/// Checks that `z ↦ z + 1` multiplies `z_α/ϑ₁'(0)^p` by `ε^{α(α−p)/2}`, `ε = e^{2πi/p}`.
///
/// Each term `q^r` picks up `e^{2πir}`; all terms of `z_α` must share one phase,
/// all terms of `ϑ₁'(0)^p` must share one phase, and their quotient must be
/// the stated multiplier.
pub fn t_check(p: u32, alpha: i64, k: i64) -> TCheck {
    let common = |s: &PuiseuxSeries| -> Option<Rational64> {
        let phases: Vec<Rational64> = s.terms().map(|(e, _)| frac(e)).collect();
        let first = *phases.first()?;
        phases.iter().all(|&x| x == first).then_some(first)
    };
    let z = z_alpha_series(p, alpha, k);
    let d = theta1_prime_series(k).pow(p as i64).expect("power");
    let expected = frac(rat(alpha * (alpha - p as i64), 2 * p as i64));
    match (common(&z), common(&d)) {
        (Some(a), Some(b)) => {
            let m = frac(a - b);
            TCheck { p, alpha, multiplier: m.to_string(), expected: expected.to_string(), passed: m == expected }
        }
        _ => TCheck { p, alpha, multiplier: "none".into(), expected: expected.to_string(), passed: false },
    }
}

// --------------------------------------------------- modular equations --

/// The variable in which a modular identity is written.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HauptVariable {
    /// `v = sign · t(z)`.
    Direct,
    /// `v = C / (sign · t(z))`, the Fricke image `t(−1/(pz))` with `C = p^{12/m}`.
    Fricke,
}

/// A rational identity `(j(Nz) − shift)·v^k = sign · ∏ f_i(v)^{e_i}` between `j` and
/// a Hauptmodul of `X₀(p)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModularIdentity {
    /// Stable identifier.
    pub id: String,
    /// The level.
    pub p: u32,
    /// `N` in `j(Nz)`.
    pub scale: u32,
    /// Constant subtracted from `j` (0 for `J`, 1728 for `J − 1`).
    pub shift: i64,
    /// Direct or Fricke variable.
    pub variable: HauptVariable,
    /// `±1`: the identity is written in `sign · t`.
    pub var_sign: i64,
    /// `k` in `v^k`.
    pub denominator_power: u32,
    /// Overall sign of the right-hand side.
    pub rhs_sign: i64,
    /// Factors `(coefficients, constant term first; exponent)`.
    pub factors: Vec<(Vec<i64>, u32)>,
    /// Where the identity comes from and how it was re-indexed.
    pub note: String,
}

impl ModularIdentity {
    /// The right-hand side expanded as a polynomial (constant term first).
    pub fn rhs_polynomial(&self) -> Vec<i64> {
        let mut acc = vec![self.rhs_sign];
        for (f, e) in &self.factors {
            for _ in 0..*e {
                acc = int_poly_mul(&acc, f);
            }
        }
        acc
    }
}

/// Product of two integer polynomials (constant term first).
pub fn int_poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn ident(
    id: &str,
    p: u32,
    scale: u32,
    shift: i64,
    variable: HauptVariable,
    var_sign: i64,
    k: u32,
    rhs_sign: i64,
    factors: &[(&[i64], u32)],
    note: &str,
) -> ModularIdentity {
    ModularIdentity {
        id: id.into(),
        p,
        scale,
        shift,
        variable,
        var_sign,
        denominator_power: k,
        rhs_sign,
        factors: factors.iter().map(|(f, e)| (f.to_vec(), *e)).collect(),
        note: note.into(),
    }
}

/// The expansion of `(J − 1)·1728t` at level 13 as a degree-14 polynomial,
/// constant term first, in the grouping `t¹⁴ + 13(2t¹³ + … + 1165t²) − 982t + 13`.
pub fn level13_j_minus_one_expansion() -> Vec<i64> {
    let inner = [1165, 9604, 27272, 41140, 39182, 25660, 12086, 4180, 1064, 196, 25, 2];
    let mut out = vec![13, -982];
    out.extend(inner.iter().map(|c| 13 * c));
    out.push(1);
    out
}

/// The catalogue of modular identities for `p ∈ {2, 3, 5, 7, 13}`.
///
/// All identities are stated in the nome `q = e^{2πiz}`. At level 5 the
/// classical formulas are written in `−t`, with `t = (η(z)/η(5z))⁶`.
pub fn modular_identities(p: u32) -> Result<Vec<ModularIdentity>, QthetaError> {
    use HauptVariable::{Direct, Fricke};
    let v = match p {
        2 => vec![
            ident("modeq2.j_z", 2, 1, 0, Direct, 1, 2, 1, &[(&[256, 1], 3)], "j(z) = (t+256)³/t²"),
            ident("modeq2.j_z_fricke", 2, 1, 0, Fricke, 1, 1, 1, &[(&[16, 1], 3)], "j(z) = (t'+16)³/t'"),
            ident("modeq2.j_pz", 2, 2, 0, Direct, 1, 1, 1, &[(&[16, 1], 3)], "j(2z) = (t+16)³/t"),
        ],
        3 => vec![
            ident("modeq3.j_z", 3, 1, 0, Direct, 1, 3, 1, &[(&[27, 1], 1), (&[243, 1], 3)], "j(z) = (t+27)(t+243)³/t³"),
            ident("modeq3.j_z_fricke", 3, 1, 0, Fricke, 1, 1, 1, &[(&[27, 1], 1), (&[3, 1], 3)], "j(z) = (t'+27)(t'+3)³/t'"),
            ident("modeq3.j_pz", 3, 3, 0, Direct, 1, 1, 1, &[(&[27, 1], 1), (&[3, 1], 3)], "j(3z) = (t+27)(t+3)³/t"),
        ],
        5 => vec![
            ident("modeq5.j_z", 5, 1, 0, Direct, -1, 5, -1, &[(&[3125, -250, 1], 3)], "j(z) = -(s²-250s+3125)³/s⁵ with s = -t"),
            ident("modeq5.j_z_fricke", 5, 1, 0, Fricke, -1, 1, -1, &[(&[5, -10, 1], 3)], "j(z) = -(s'²-10s'+5)³/s' with s' = 125/s"),
            ident("modeq5.j_pz", 5, 5, 0, Direct, -1, 1, -1, &[(&[5, -10, 1], 3)], "j(5z) = -(s²-10s+5)³/s with s = -t"),
        ],
        7 => vec![
            ident("modeq7.j_z", 7, 1, 0, Direct, 1, 7, 1, &[(&[49, 13, 1], 1), (&[2401, 245, 1], 3)], "j(z) = (t²+13t+49)(t²+245t+2401)³/t⁷"),
            ident("modeq7.j_z_fricke", 7, 1, 0, Fricke, 1, 1, 1, &[(&[49, 13, 1], 1), (&[1, 5, 1], 3)], "j(z) = (t'²+13t'+49)(t'²+5t'+1)³/t'"),
            ident("modeq7.j_pz", 7, 7, 0, Direct, 1, 1, 1, &[(&[49, 13, 1], 1), (&[1, 5, 1], 3)], "j(7z) = (t²+13t+49)(t²+5t+1)³/t"),
            ident("modeq7.j_pz_minus_1728", 7, 7, 1728, Direct, 1, 1, 1, &[(&[-7, 70, 63, 14, 1], 2)], "j(7z) - 1728 = (t⁴+14t³+63t²+70t-7)²/t"),
        ],
        13 => {
            let expansion = level13_j_minus_one_expansion();
            let mut v = vec![
                ident(
                    "modeq13.j_z",
                    13,
                    1,
                    0,
                    Direct,
                    1,
                    13,
                    1,
                    &[(&[13, 5, 1], 1), (&[28561, 15379, 3380, 247, 1], 3)],
                    "j(z) = (t²+5t+13)(t⁴+247t³+3380t²+15379t+28561)³/t¹³",
                ),
                ident("modeq13.j_z_fricke", 13, 1, 0, Fricke, 1, 1, 1, &[(&[13, 5, 1], 1), (&[1, 19, 20, 7, 1], 3)], "j(z) = (t'²+5t'+13)(t'⁴+7t'³+20t'²+19t'+1)³/t'"),
                ident("modeq13.j_pz", 13, 13, 0, Direct, 1, 1, 1, &[(&[13, 5, 1], 1), (&[1, 19, 20, 7, 1], 3)], "j(13z) = (t²+5t+13)(t⁴+7t³+20t²+19t+1)³/t"),
                ident(
                    "modeq13.j_pz_minus_1728",
                    13,
                    13,
                    1728,
                    Direct,
                    1,
                    1,
                    1,
                    &[(&[13, 6, 1], 1), (&[-1, 38, 122, 108, 46, 10, 1], 2)],
                    "j(13z) - 1728 = (t²+6t+13)(t⁶+10t⁵+46t⁴+108t³+122t²+38t-1)²/t",
                ),
            ];
            v.push(ModularIdentity {
                id: "modeq13.j_pz_minus_1728_expanded".into(),
                p: 13,
                scale: 13,
                shift: 1728,
                variable: Direct,
                var_sign: 1,
                denominator_power: 1,
                rhs_sign: 1,
                factors: vec![(expansion, 1)],
                note: "(J-1)·1728t = t¹⁴ + 13(2t¹³ + … + 1165t²) - 982t + 13".into(),
            });
            v
        }
        _ => return Err(QthetaError::UnsupportedPrime(p)),
    };
    Ok(v)
}

/// Outcome of one modular identity checked through a given order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModularCheck {
    /// Identifier of the identity.
    pub identity: String,
    /// The order `K` through which the residual was required to vanish.
    pub order: i64,
    /// True when every residual coefficient through `q^K` vanishes.
    pub status: bool,
    /// Exponent of the first nonzero residual coefficient, if any.
    pub first_bad_order: Option<String>,
    /// Largest absolute residual coefficient through `q^K` (as a float).
    pub residual: Option<f64>,
}

impl ModularCheck {
    /// Converts to a report row.
    pub fn to_report(&self, p: u32) -> VerificationReport {
        let details = match &self.first_bad_order {
            None => format!("residual vanishes through q^{}", self.order),
            Some(e) => format!("first nonzero residual coefficient at q^{e}"),
        };
        let mut row = VerificationReport::new(self.identity.clone(), Some(p), self.status, details);
        row.residual = self.residual;
        row
    }
}

/// Series of `j(Nz)` and the Hauptmodul prepared once per level.
struct LevelSeries {
    t: PuiseuxSeries,
    j: PuiseuxSeries,
    jp: PuiseuxSeries,
}

impl LevelSeries {
    fn new(p: u32, w: i64) -> Result<Self, QthetaError> {
        Ok(LevelSeries { t: hauptmodul_series(p, w)?, j: j_series(w), jp: j_series(w / p as i64 + 1).substitute_power(p as i64) })
    }

    fn residual(&self, id: &ModularIdentity) -> Result<PuiseuxSeries, QthetaError> {
        let c = fricke_constant(id.p)?;
        let t = self.t.scale(&CycloNum::int(id.var_sign))?;
        let v = match id.variable {
            HauptVariable::Direct => t,
            HauptVariable::Fricke => t.inv()?.scale(&CycloNum::int(c))?,
        };
        let j = if id.scale == 1 { &self.j } else { &self.jp };
        let lhs = j.try_sub(&PuiseuxSeries::from_integers(1, [(0, id.shift)], None))?.try_mul(&v.pow(id.denominator_power as i64)?)?;
        let rhs = v.eval_poly(&id.rhs_polynomial())?;
        lhs.try_sub(&rhs)
    }
}

/// Checks every catalogued identity at level `p` through `q^K`, enlarging the
/// working precision until each residual is known through `q^K`.
pub fn verify_modular_equation(p: u32, k: i64) -> Result<Vec<ModularCheck>, QthetaError> {
    let ids = modular_identities(p)?;
    let target = Rational64::from_integer(k);
    let mut w = k + 2;
    loop {
        let lv = LevelSeries::new(p, w)?;
        let residuals = ids.iter().map(|id| lv.residual(id)).collect::<Result<Vec<_>, _>>()?;
        if residuals.iter().all(|r| r.trunc().is_none_or(|t| t > target)) {
            return Ok(ids
                .iter()
                .zip(residuals)
                .map(|(id, r)| {
                    let bad = r.first_nonzero_through(target);
                    let worst = r.terms().filter(|(e, _)| *e <= target).map(|(_, c)| c.to_complex().norm()).fold(0.0, f64::max);
                    ModularCheck { identity: id.id.clone(), order: k, status: bad.is_none(), first_bad_order: bad.map(|e| e.to_string()), residual: Some(worst) }
                })
                .collect());
        }
        w += k.max(8);
    }
}

/// Report rows for all modular identities at level `p`, plus the check that the
/// expanded level-13 form equals the factored form.
pub fn modular_equation_reports(p: u32, k: i64) -> Result<Vec<VerificationReport>, QthetaError> {
    let mut rows: Vec<VerificationReport> = verify_modular_equation(p, k)?.iter().map(|c| c.to_report(p)).collect();
    if p == 13 {
        let ids = modular_identities(13)?;
        let factored = ids.iter().find(|i| i.id == "modeq13.j_pz_minus_1728").map(|i| i.rhs_polynomial());
        let ok = factored.as_deref() == Some(level13_j_minus_one_expansion().as_slice());
        rows.push(VerificationReport::new(
            "modeq13.expansion_matches_factors",
            Some(13),
            ok,
            "expanded degree-14 form equals (t²+6t+13)(sextic)²",
        ));
    }
    Ok(rows)
}

// -------------------------------------------------------------- numerics --

fn nome(tau: Complex64, r: f64) -> Complex64 {
    (Complex64::new(0.0, 2.0 * PI * r) * tau).exp()
}

/// `η(τ)` by the pentagonal-number series, summed until the terms are negligible.
pub fn eta_numeric(tau: Complex64) -> Complex64 {
    let q = nome(tau, 1.0);
    let mut acc = Complex64::new(1.0, 0.0);
    for m in 1i64.. {
        let mut largest: f64 = 0.0;
        for g in [m, -m] {
            let e = g * (3 * g - 1) / 2;
            let term = q.powf(e as f64) * if m % 2 == 0 { 1.0 } else { -1.0 };
            largest = largest.max(term.norm());
            acc += term;
        }
        if largest < 1e-18 * acc.norm() {
            break;
        }
    }
    nome(tau, 1.0 / 24.0) * acc
}

/// `j(τ) = E₄(τ)³/Δ(τ)` with `E₄` from its divisor-sum series and `Δ = η²⁴`.
pub fn j_numeric(tau: Complex64) -> Complex64 {
    let q = nome(tau, 1.0);
    let mut e4 = Complex64::new(1.0, 0.0);
    let mut qn = Complex64::new(1.0, 0.0);
    for n in 1i64.. {
        qn *= q;
        let term = qn * (240 * sigma3(n)) as f64;
        e4 += term;
        if term.norm() < 1e-18 * e4.norm() {
            break;
        }
    }
    e4.powi(3) / eta_numeric(tau).powi(24)
}

/// Klein's absolute invariant `J = j/1728`.
pub fn klein_j_numeric(tau: Complex64) -> Complex64 {
    j_numeric(tau) / 1728.0
}

/// The Hauptmodul `(η(τ)/η(pτ))^{24/m}` evaluated numerically.
pub fn hauptmodul_numeric(p: u32, tau: Complex64) -> Result<Complex64, QthetaError> {
    let e = hauptmodul_exponent(p)?;
    Ok((eta_numeric(tau) / eta_numeric(tau * p as f64)).powi(e as i32))
}

/// The numeric `z_α(τ)` from its defining sum.
pub fn z_alpha_numeric(p: u32, alpha: i64, tau: Complex64) -> Complex64 {
    let pi = p as i64;
    let mut acc = Complex64::new(0.0, 0.0);
    for dist in 0i64.. {
        let mut largest: f64 = 0.0;
        for kk in [dist, -dist - 1] {
            let b = (pi * (2 * kk + 1) + 2 * alpha) as f64;
            let term = nome(tau, b * b / (8.0 * p as f64)) * if kk.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            largest = largest.max(term.norm());
            acc += term;
        }
        if dist > alpha.abs() && largest < 1e-18 * acc.norm().max(1e-300) {
            break;
        }
    }
    if alpha.rem_euclid(2) == 0 {
        acc
    } else {
        -acc
    }
}

/// The numeric `ϑ₁'(0)` in the nome `q = e^{2πiz}`.
pub fn theta1_prime_numeric(tau: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0i64.. {
        let b = (2 * j + 1) as f64;
        let term = nome(tau, b * b / 8.0) * (2.0 * b * if j % 2 == 0 { 1.0 } else { -1.0 });
        acc += term;
        if term.norm() < 1e-18 * acc.norm() {
            break;
        }
    }
    acc
}

/// Numeric value of a theta constant with rational characteristic.
pub fn theta_numeric(a: Rational64, b: Rational64, n: i64, tau: Complex64) -> Complex64 {
    let half = *a.numer() as f64 / (2.0 * *a.denom() as f64);
    let bf = *b.numer() as f64 / *b.denom() as f64;
    let centre = (-half).round() as i64;
    let mut acc = Complex64::new(0.0, 0.0);
    for dist in 0i64.. {
        let mut largest: f64 = 0.0;
        for m in [centre + dist, centre - dist - 1] {
            let x = half + m as f64;
            let term = nome(tau, x * x * n as f64 / 2.0) * Complex64::from_polar(1.0, PI * x * bf);
            largest = largest.max(term.norm());
            acc += term;
        }
        if largest < 1e-18 {
            break;
        }
    }
    acc
}

/// The S-transformation of the `z_α` compared at one parameter.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct STransformCheck {
    /// The prime.
    pub p: u32,
    /// The Jacobi symbol `(−2/p)` relating the two sides.
    pub sign: i64,
    /// Largest relative residual of the identity as written with the factor `(−2/p)`.
    pub residual: f64,
    /// Largest relative residual without that factor.
    pub residual_unsigned: f64,
}

/// The Legendre symbol `(a/p)` for an odd prime `p`.
pub fn legendre(a: i64, p: u32) -> i64 {
    let p = p as i64;
    let a = a.rem_euclid(p);
    if a == 0 {
        return 0;
    }
    if (1..p).any(|x| x * x % p == a) {
        1
    } else {
        -1
    }
}

/// Compares both sides of the S-transformation of the `z_α` at `τ`.
///
/// With `ω₂ = 1`, `ω₁ = τ` the full normalized `z_α(ω₁, ω₂)` is
/// `(1/π)^{(3p−1)/2} z_α(τ)/ϑ₁'(0; τ)^p` and `z_α(−ω₂, ω₁)` is
/// `(τ/π)^{(3p−1)/2} z_α(−1/τ)/ϑ₁'(0; −1/τ)^p`. The identity is
/// `√((−1)^{(p−1)/2}p)·z_α(−ω₂, ω₁) = (−2/p)(−1)^{(p+1)/2} Σ_β (ε^{αβ} − ε^{−αβ}) z_β(ω₁, ω₂)`
/// with the principal square root.
pub fn s_transformation_check(p: u32, tau: Complex64) -> STransformCheck {
    let m = (p as i64 - 1) / 2;
    let w = (3 * p as i32 - 1) / 2;
    let pi = Complex64::new(PI, 0.0);
    let full = |t: Complex64, omega1: Complex64, alpha: i64| -> Complex64 {
        (omega1 / pi).powi(w) * z_alpha_numeric(p, alpha, t) / theta1_prime_numeric(t).powi(p as i32)
    };
    let one = Complex64::new(1.0, 0.0);
    let s_tau = -one / tau;
    let root = Complex64::new(if m % 2 == 0 { p as f64 } else { -(p as f64) }, 0.0).sqrt();
    let parity = if (p + 1) / 2 % 2 == 0 { 1.0 } else { -1.0 };
    let sign = legendre(-2, p);
    let (mut worst, mut worst_unsigned) = (0.0f64, 0.0f64);
    for alpha in 1..=m {
        let lhs = root * full(s_tau, tau, alpha);
        let mut rhs = Complex64::new(0.0, 0.0);
        for beta in 1..=m {
            let ang = 2.0 * PI * (alpha * beta) as f64 / p as f64;
            let coeff = Complex64::from_polar(1.0, ang) - Complex64::from_polar(1.0, -ang);
            rhs += coeff * full(tau, one, beta);
        }
        rhs *= parity;
        let scale = lhs.norm().max(rhs.norm());
        worst = worst.max((lhs - rhs * sign as f64).norm() / scale);
        worst_unsigned = worst_unsigned.max((lhs - rhs).norm() / scale);
    }
    STransformCheck { p, sign, residual: worst, residual_unsigned: worst_unsigned }
}

/// The Fricke product `t(τ)·t(−1/(pτ))` compared with `p^{12/m}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrickeCheck {
    /// The level.
    pub p: u32,
    /// Real and imaginary parts of the product.
    pub product: (f64, f64),
    /// The expected constant.
    pub expected: i64,
    /// `|product − expected|`.
    pub error: f64,
    /// True when the error is below the tolerance.
    pub passed: bool,
}

/// Evaluates the Hauptmodul at `τ` and at its Fricke image and multiplies.
pub fn fricke_check(p: u32, tau: Complex64, tol: f64) -> Result<FrickeCheck, QthetaError> {
    let c = fricke_constant(p)?;
    let image = -Complex64::new(1.0, 0.0) / (tau * p as f64);
    let prod = hauptmodul_numeric(p, tau)? * hauptmodul_numeric(p, image)?;
    let error = (prod - c as f64).norm();
    Ok(FrickeCheck { p, product: (prod.re, prod.im), expected: c, error, passed: error < tol })
}

// -------------------------------------------------------------- sampling --

/// A point of the locus obtained from theta constants at a parameter `τ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericPoint {
    /// The parameter in the upper half-plane.
    pub tau: Complex64,
    /// The prime.
    pub p: u32,
    /// Coordinates `(E₁, …, E_m)`, scaled so the largest has modulus one.
    pub coords: Vec<Complex64>,
    /// The tolerance the point was accepted with.
    pub tol: f64,
    /// Scale-normalized residual of the defining quartics.
    pub residual: f64,
    /// `η(τ)`.
    pub eta: Complex64,
    /// `j(τ)`.
    pub j: Complex64,
}

impl NumericPoint {
    /// Klein's `J = j/1728` at the sampled parameter.
    pub fn klein_j(&self) -> Complex64 {
        self.j / 1728.0
    }
}

/// The projective coordinates `E_t = z_t(τ)`, `t = 1, …, (p−1)/2`, scaled so
/// that the largest has modulus one.
pub fn locus_coordinates(p: u32, tau: Complex64) -> Vec<Complex64> {
    let m = (p as i64 - 1) / 2;
    let raw: Vec<Complex64> = (1..=m).map(|t| z_alpha_numeric(p, t, tau)).collect();
    let s = raw.iter().map(|x| x.norm()).fold(0.0, f64::max);
    raw.into_iter().map(|x| x / s).collect()
}

/// Samples the locus of `sys` at `τ` and checks membership.
pub fn sample_locus_in(sys: &QuarticSystem, tau: Complex64, tol: f64) -> Result<NumericPoint, QthetaError> {
    if tau.im < 0.5 {
        return Err(QthetaError::OutOfDomain(tau));
    }
    let coords = locus_coordinates(sys.p, tau);
    let residual = sys.residual(&coords)?;
    if !(residual < tol) {
        return Err(QthetaError::SamplingFailure { residual, tol });
    }
    Ok(NumericPoint { tau, p: sys.p, coords, tol, residual, eta: eta_numeric(tau), j: j_numeric(tau) })
}

/// Samples the locus of `X(p)` at `τ`, building the quartic system first.
pub fn sample_locus(p: u32, tau: Complex64, tol: f64) -> Result<NumericPoint, QthetaError> {
    let sys = locus::generate_ideal(p)?;
    sample_locus_in(&sys, tau, tol)
}

/// The `p = 11` sample in the coordinates `(y1, y4, y5, y9, y3)`.
pub fn sample11(point: &NumericPoint) -> Sample11 {
    let e = &point.coords;
    Sample11 { y: vec![e[0], -e[1], e[3], e[2], e[4]], j: point.klein_j() }
}

/// Klein's coordinates `(λ, μ, ν) = (−E₁, −E₂, E₃)` of a `p = 7` sample.
pub fn klein_coordinates7(point: &NumericPoint) -> Vec<Complex64> {
    let e = &point.coords;
    vec![-e[0], -e[1], e[2]]
}

/// The degree-8 `J` relation at `p = 7`: with `t∞ = −δ∞²/∇` at each sample,
/// `(t²+13t+49)(t²+5t+1)³ / (1728t)` and `(t⁴+14t³+63t²+70t−7)²/(1728t)`
/// must equal `J` and `J − 1`. Returns the largest relative error.
pub fn klein7_j_residual(points: &[NumericPoint]) -> f64 {
    let s = invariants::covariants7();
    let delta = s.delta_inf.to_c64();
    let nabla = s.nabla.to_c64();
    let one = Complex64::new(1.0, 0.0);
    let mut worst: f64 = 0.0;
    for pt in points {
        let x = klein_coordinates7(pt);
        let d = delta.eval_c64(&x);
        let t = -d * d / nabla.eval_c64(&x);
        let j = (t * t + 13.0 * t + 49.0) * (t * t + 5.0 * t + one).powi(3) / (1728.0 * t);
        let j1 = (t.powi(4) + 14.0 * t.powi(3) + 63.0 * t * t + 70.0 * t - 7.0).powi(2) / (1728.0 * t);
        let target = pt.klein_j();
        let scale = target.norm().max(1.0);
        worst = worst.max((j - target).norm() / scale).max((j1 - (target - one)).norm() / scale);
    }
    worst
}

/// Default sampling parameters: `i, 2i, 0.5+1.5i, 0.2+2i, 3i`.
pub fn default_taus() -> Vec<Complex64> {
    [(0.0, 1.0), (0.0, 2.0), (0.5, 1.5), (0.2, 2.0), (0.0, 3.0)].iter().map(|&(a, b)| Complex64::new(a, b)).collect()
}

/// Parses `a+bi`, `a-bi`, `bi` or `a` into a complex number.
pub fn parse_tau(src: &str) -> Option<Complex64> {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(body) = s.strip_suffix('i') {
        let split = body.char_indices().skip(1).filter(|&(_, c)| c == '+' || c == '-').map(|(i, _)| i).last();
        let (re, im) = match split {
            Some(i) if !body[..i].ends_with(['e', 'E']) => (&body[..i], &body[i..]),
            _ => ("0", body),
        };
        let im = match im {
            "" | "+" => 1.0,
            "-" => -1.0,
            x => x.parse().ok()?,
        };
        Some(Complex64::new(re.parse().ok()?, im))
    } else {
        Some(Complex64::new(s.parse().ok()?, 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_parsing() {
        assert_eq!(parse_tau("0+2i"), Some(Complex64::new(0.0, 2.0)));
        assert_eq!(parse_tau("0.3+1.7i"), Some(Complex64::new(0.3, 1.7)));
        assert_eq!(parse_tau("2i"), Some(Complex64::new(0.0, 2.0)));
        assert_eq!(parse_tau("-0.5-i"), Some(Complex64::new(-0.5, -1.0)));
        assert_eq!(parse_tau("i"), Some(Complex64::new(0.0, 1.0)));
        assert_eq!(parse_tau("1.5"), Some(Complex64::new(1.5, 0.0)));
        assert_eq!(parse_tau("x"), None);
    }

    #[test]
    fn monomial_inverse_is_exact() {
        let m = PuiseuxSeries::monomial(rat(3, 4));
        let inv = m.inv().unwrap();
        assert_eq!(inv.valuation(), Some(rat(-3, 4)));
        assert_eq!(inv.trunc(), None);
    }
}
