//! Exact arithmetic in cyclotomic fields Q(ζ_M).
//!
//! Elements are stored in the power basis 1, ζ, …, ζ^{φ(M)−1} modulo the
//! cyclotomic polynomial Φ_M, with a single positive common denominator.
//! Coordinates that fit in machine words take an `i64`/`i128` path; anything
//! larger transparently falls back to arbitrary-precision integers.
//!
//! Fields of degree one (conductors 1 and 2) are identified with Q, and a
//! rational element combines with an element of any conductor.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Errors raised by cyclotomic arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("conductor mismatch: Q(zeta_{0}) vs Q(zeta_{1})")]
    ConductorMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("sigma_{k} is not an automorphism of Q(zeta_{m}): gcd(k, m) != 1")]
    InvalidAutomorphism { k: i64, m: u32 },
    #[error("cannot embed Q(zeta_{from}) into Q(zeta_{to})")]
    Embedding { from: u32, to: u32 },
    #[error("sqrt({sign}{p}) does not lie in Q(zeta_{p})")]
    NotInField { p: u32, sign: char },
    #[error("conductor {m} exceeds the configured cap {cap}")]
    ConductorTooLarge { m: u32, cap: u32 },
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("cannot parse cyclotomic number: {0}")]
    Parse(String),
}

static CONDUCTOR_CAP: AtomicU32 = AtomicU32::new(1 << 16);

/// Sets the largest conductor that [`field`] will construct.
pub fn set_conductor_cap(cap: u32) {
    CONDUCTOR_CAP.store(cap, Ordering::Relaxed);
}

/// The currently configured conductor cap (default 2^16).
pub fn conductor_cap() -> u32 {
    CONDUCTOR_CAP.load(Ordering::Relaxed)
}

/// The cyclotomic field Q(ζ_M) together with its reduction data.
pub struct CycloField {
    m: u32,
    deg: usize,
    phi: Vec<BigInt>,
    /// `reduce[i]` holds x^{deg+i} mod Φ_M for i < deg − 1.
    reduce_big: Vec<Vec<BigInt>>,
    reduce_small: Option<Vec<Vec<i64>>>,
    /// x^k mod Φ_M for 0 ≤ k < M, built on first use.
    powers: OnceLock<Vec<Vec<BigInt>>>,
}

impl fmt::Debug for CycloField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.m)
    }
}

impl CycloField {
    /// The conductor M.
    pub fn conductor(&self) -> u32 {
        self.m
    }

    /// The degree φ(M) of the field over Q.
    pub fn degree(&self) -> usize {
        self.deg
    }

    /// Integer coefficients of Φ_M, constant term first.
    pub fn modulus(&self) -> &[BigInt] {
        &self.phi
    }

    fn powers(&self) -> &Vec<Vec<BigInt>> {
        self.powers.get_or_init(|| {
            let mut out = Vec::with_capacity(self.m as usize);
            let mut cur = vec![BigInt::zero(); self.deg];
            cur[0] = BigInt::one();
            for _ in 0..self.m {
                out.push(cur.clone());
                // multiply by x and reduce
                let top = cur[self.deg - 1].clone();
                for i in (1..self.deg).rev() {
                    cur[i] = cur[i - 1].clone();
                }
                cur[0] = BigInt::zero();
                if !top.is_zero() {
                    for i in 0..self.deg {
                        cur[i] -= &top * &self.phi[i];
                    }
                }
            }
            out
        })
    }

    /// Power-basis coordinates of ζ^k for any integer k.
    fn power_coords(&self, k: i64) -> &Vec<BigInt> {
        let m = self.m as i64;
        &self.powers()[k.rem_euclid(m) as usize]
    }
}

fn field_cache() -> &'static Mutex<HashMap<u32, Arc<CycloField>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycloField>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // den is monic; returns num / den assuming exact division
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    if rem.len() < den.len() {
        return vec![BigInt::zero()];
    }
    let qlen = rem.len() - dn;
    let mut q = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for j in 0..=dn {
            rem[i + j] -= &c * &den[j];
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    q
}

fn cyclotomic_poly(m: u32, memo: &mut HashMap<u32, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = memo.get(&m) {
        return p.clone();
    }
    let mut p = vec![BigInt::zero(); m as usize + 1];
    p[0] = BigInt::from(-1);
    p[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            let pd = cyclotomic_poly(d, memo);
            p = poly_div_exact(&p, &pd);
        }
    }
    memo.insert(m, p.clone());
    p
}

/// Returns the (cached) field Q(ζ_M). Conductor 2 is identified with 1.
pub fn field(m: u32) -> Result<Arc<CycloField>, CycloError> {
    if m == 0 {
        return Err(CycloError::ZeroConductor);
    }
    let m = if m == 2 { 1 } else { m };
    let cap = conductor_cap();
    if m > cap {
        return Err(CycloError::ConductorTooLarge { m, cap });
    }
    let mut cache = field_cache().lock().expect("field cache poisoned");
    if let Some(f) = cache.get(&m) {
        return Ok(f.clone());
    }
    let mut memo = HashMap::new();
    let phi = cyclotomic_poly(m, &mut memo);
    let deg = phi.len() - 1;
    let mut reduce_big = Vec::new();
    // x^deg mod Φ = −(lower coefficients)
    let mut cur: Vec<BigInt> = phi[..deg].iter().map(|c| -c).collect();
    for _ in 0..deg.saturating_sub(1) {
        reduce_big.push(cur.clone());
        let top = cur[deg - 1].clone();
        for i in (1..deg).rev() {
            cur[i] = cur[i - 1].clone();
        }
        cur[0] = BigInt::zero();
        for i in 0..deg {
            cur[i] -= &top * &phi[i];
        }
    }
    let bound = BigInt::from(1i64 << 20);
    let reduce_small = if reduce_big.iter().flatten().all(|c| c.abs() < bound) {
        Some(
            reduce_big
                .iter()
                .map(|r| r.iter().map(|c| c.to_i64().unwrap()).collect())
                .collect(),
        )
    } else {
        None
    };
    let f = Arc::new(CycloField {
        m,
        deg,
        phi,
        reduce_big,
        reduce_small,
        powers: OnceLock::new(),
    });
    cache.insert(m, f.clone());
    Ok(f)
}

fn field_unchecked(m: u32) -> Arc<CycloField> {
    field(m).unwrap_or_else(|e| panic!("{e}"))
}

#[derive(Clone, Debug)]
enum Repr {
    Small { num: Vec<i64>, den: i64 },
    Big { num: Vec<BigInt>, den: BigInt },
}

/// An exact element of Q(ζ_M).
#[derive(Clone)]
pub struct CycloNum {
    field: Arc<CycloField>,
    repr: Repr,
}

const SMALL_LIMIT: i64 = 1 << 62;

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn normalize_small(num: Vec<i128>, den: i128) -> Option<(Vec<i64>, i64)> {
    debug_assert!(den > 0);
    let mut g = den;
    for &c in &num {
        if g == 1 {
            break;
        }
        g = gcd_i128(g, c);
    }
    let fits = |x: i128| x > -(SMALL_LIMIT as i128) && x < SMALL_LIMIT as i128;
    let den = den / g;
    if !fits(den) {
        return None;
    }
    let mut out = Vec::with_capacity(num.len());
    for c in num {
        let c = c / g;
        if !fits(c) {
            return None;
        }
        out.push(c as i64);
    }
    Some((out, den as i64))
}

fn normalize_big(mut num: Vec<BigInt>, mut den: BigInt) -> Repr {
    if den.is_negative() {
        den = -den;
        for c in num.iter_mut() {
            *c = -&*c;
        }
    }
    let mut g = den.clone();
    for c in &num {
        if g.is_one() {
            break;
        }
        g = g.gcd(c);
    }
    if !g.is_one() {
        den /= &g;
        for c in num.iter_mut() {
            *c /= &g;
        }
    }
    let lim = BigInt::from(SMALL_LIMIT);
    if den < lim && num.iter().all(|c| c.abs() < lim) {
        Repr::Small {
            num: num.iter().map(|c| c.to_i64().unwrap()).collect(),
            den: den.to_i64().unwrap(),
        }
    } else {
        Repr::Big { num, den }
    }
}

impl Repr {
    fn to_big(&self) -> (Vec<BigInt>, BigInt) {
        match self {
            Repr::Small { num, den } => {
                (num.iter().map(|&c| BigInt::from(c)).collect(), BigInt::from(*den))
            }
            Repr::Big { num, den } => (num.clone(), den.clone()),
        }
    }
}

impl CycloNum {
    fn from_parts(field: Arc<CycloField>, repr: Repr) -> Self {
        CycloNum { field, repr }
    }

    /// Zero of Q(ζ_M).
    pub fn zero_in(field: &Arc<CycloField>) -> Self {
        Self::from_parts(
            field.clone(),
            Repr::Small {
                num: vec![0; field.deg],
                den: 1,
            },
        )
    }

    /// One of Q(ζ_M).
    pub fn one_in(field: &Arc<CycloField>) -> Self {
        Self::from_int_in(field, 1)
    }

    /// The integer `n` as an element of Q(ζ_M).
    pub fn from_int_in(field: &Arc<CycloField>, n: i64) -> Self {
        let mut num = vec![0; field.deg];
        num[0] = n;
        Self::from_parts(field.clone(), Repr::Small { num, den: 1 })
    }

    /// The rational number `n/d` (in Q, combinable with every field).
    pub fn rational(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        let f = field_unchecked(1);
        let repr = normalize_big(vec![BigInt::from(n)], BigInt::from(d));
        Self::from_parts(f, repr)
    }

    /// The integer `n` in Q.
    pub fn int(n: i64) -> Self {
        Self::rational(n, 1)
    }

    /// A big rational as an element of Q.
    pub fn from_bigrational(r: &BigRational) -> Self {
        let f = field_unchecked(1);
        let repr = normalize_big(vec![r.numer().clone()], r.denom().clone());
        Self::from_parts(f, repr)
    }

    /// Builds an element from power-basis coordinates.
    pub fn from_coords(field: &Arc<CycloField>, coords: &[BigRational]) -> Self {
        assert_eq!(coords.len(), field.deg, "coordinate count must equal phi(M)");
        let mut den = BigInt::one();
        for c in coords {
            den = den.lcm(c.denom());
        }
        let num = coords
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Self::from_parts(field.clone(), normalize_big(num, den))
    }

    /// ζ_M^k for any integer k.
    pub fn zeta(field: &Arc<CycloField>, k: i64) -> Self {
        let coords = field.power_coords(k).clone();
        Self::from_parts(field.clone(), normalize_big(coords, BigInt::one()))
    }

    /// ζ_M^k in the cached field of conductor `m`.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        if m == 2 {
            return CycloNum::int(if k.rem_euclid(2) == 0 { 1 } else { -1 });
        }
        Self::zeta(&field_unchecked(m), k)
    }

    /// The field this element lives in.
    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    /// Conductor M of the ambient field.
    pub fn conductor(&self) -> u32 {
        self.field.m
    }

    /// Power-basis coordinates as exact rationals.
    pub fn coords(&self) -> Vec<BigRational> {
        let (num, den) = self.repr.to_big();
        num.into_iter()
            .map(|n| BigRational::new(n, den.clone()))
            .collect()
    }

    /// True when every coordinate is zero.
    pub fn is_zero_value(&self) -> bool {
        match &self.repr {
            Repr::Small { num, .. } => num.iter().all(|&c| c == 0),
            Repr::Big { num, .. } => num.iter().all(|c| c.is_zero()),
        }
    }

    /// True when the element is a rational number.
    pub fn is_rational(&self) -> bool {
        match &self.repr {
            Repr::Small { num, .. } => num.iter().skip(1).all(|&c| c == 0),
            Repr::Big { num, .. } => num.iter().skip(1).all(|c| c.is_zero()),
        }
    }

    /// Human-readable text: the value itself when rational, otherwise the
    /// coordinate form followed by its complex value.
    pub fn pretty(&self) -> String {
        if let Some(r) = self.to_rational() {
            return r.to_string();
        }
        let z = self.to_complex();
        if z.im.abs() < 1e-12 * (1.0 + z.re.abs()) {
            format!("{self} ≈ {:.6}", z.re)
        } else {
            format!("{self} ≈ {:.6}{:+.6}i", z.re, z.im)
        }
    }

    /// The rational value, if the element is rational.
    pub fn to_rational(&self) -> Option<BigRational> {
        if !self.is_rational() {
            return None;
        }
        let (num, den) = self.repr.to_big();
        Some(BigRational::new(num[0].clone(), den))
    }

    fn is_degree_one(&self) -> bool {
        self.field.deg == 1
    }

    /// Moves a rational element into `field`; other elements are returned unchanged.
    fn promote_to(&self, field: &Arc<CycloField>) -> CycloNum {
        if Arc::ptr_eq(&self.field, field) || !self.is_degree_one() {
            return self.clone();
        }
        let repr = match &self.repr {
            Repr::Small { num, den } => {
                let mut v = vec![0; field.deg];
                v[0] = num[0];
                Repr::Small { num: v, den: *den }
            }
            Repr::Big { num, den } => {
                let mut v = vec![BigInt::zero(); field.deg];
                v[0] = num[0].clone();
                Repr::Big {
                    num: v,
                    den: den.clone(),
                }
            }
        };
        Self::from_parts(field.clone(), repr)
    }

    fn unify(a: &CycloNum, b: &CycloNum) -> Result<(CycloNum, CycloNum), CycloError> {
        if Arc::ptr_eq(&a.field, &b.field) {
            return Ok((a.clone(), b.clone()));
        }
        if a.is_degree_one() {
            return Ok((a.promote_to(&b.field), b.clone()));
        }
        if b.is_degree_one() {
            return Ok((a.clone(), b.promote_to(&a.field)));
        }
        Err(CycloError::ConductorMismatch(a.field.m, b.field.m))
    }

    fn add_sub(&self, other: &CycloNum, sign: i64) -> Result<CycloNum, CycloError> {
        if !Arc::ptr_eq(&self.field, &other.field) {
            let (a, b) = Self::unify(self, other)?;
            return a.add_sub(&b, sign);
        }
        if let (Repr::Small { num: n1, den: d1 }, Repr::Small { num: n2, den: d2 }) =
            (&self.repr, &other.repr)
        {
            let (d1, d2) = (*d1 as i128, *d2 as i128);
            let g = gcd_i128(d1, d2);
            let (f1, f2) = (d2 / g, d1 / g);
            if let Some(den) = d1.checked_mul(f1) {
                let mut ok = true;
                let mut out = Vec::with_capacity(n1.len());
                for (a, b) in n1.iter().zip(n2) {
                    match (*a as i128)
                        .checked_mul(f1)
                        .and_then(|x| (*b as i128 * sign as i128).checked_mul(f2).and_then(|y| x.checked_add(y)))
                    {
                        Some(v) => out.push(v),
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    if let Some((num, den)) = normalize_small(out, den) {
                        return Ok(Self::from_parts(self.field.clone(), Repr::Small { num, den }));
                    }
                }
            }
        }
        let (n1, d1) = self.repr.to_big();
        let (n2, d2) = other.repr.to_big();
        let g = d1.gcd(&d2);
        let f1 = &d2 / &g;
        let f2 = &d1 / &g;
        let den = &d1 * &f1;
        let s = BigInt::from(sign);
        let num = n1
            .iter()
            .zip(&n2)
            .map(|(a, b)| a * &f1 + b * &f2 * &s)
            .collect();
        Ok(Self::from_parts(self.field.clone(), normalize_big(num, den)))
    }

    fn mul_checked(&self, other: &CycloNum) -> Result<CycloNum, CycloError> {
        if !Arc::ptr_eq(&self.field, &other.field) {
            let (a, b) = Self::unify(self, other)?;
            return a.mul_checked(&b);
        }
        let f = &self.field;
        let deg = f.deg;
        if let (Repr::Small { num: n1, den: d1 }, Repr::Small { num: n2, den: d2 }, Some(red)) =
            (&self.repr, &other.repr, &f.reduce_small)
        {
            if let Some(r) = Self::mul_small(n1, *d1, n2, *d2, red, deg) {
                return Ok(Self::from_parts(f.clone(), r));
            }
        }
        let (n1, d1) = self.repr.to_big();
        let (n2, d2) = other.repr.to_big();
        let mut prod = vec![BigInt::zero(); 2 * deg - 1];
        for (i, a) in n1.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in n2.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        for k in (deg..2 * deg - 1).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for (j, r) in f.reduce_big[k - deg].iter().enumerate() {
                if !r.is_zero() {
                    prod[j] += &c * r;
                }
            }
        }
        prod.truncate(deg);
        Ok(Self::from_parts(f.clone(), normalize_big(prod, d1 * d2)))
    }

    fn mul_small(n1: &[i64], d1: i64, n2: &[i64], d2: i64, red: &[Vec<i64>], deg: usize) -> Option<Repr> {
        let mut prod = vec![0i128; 2 * deg - 1];
        for (i, &a) in n1.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let a = a as i128;
            for (j, &b) in n2.iter().enumerate() {
                if b != 0 {
                    prod[i + j] = prod[i + j].checked_add(a.checked_mul(b as i128)?)?;
                }
            }
        }
        for k in (deg..2 * deg - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (j, &r) in red[k - deg].iter().enumerate() {
                if r != 0 {
                    prod[j] = prod[j].checked_add(c.checked_mul(r as i128)?)?;
                }
            }
        }
        prod.truncate(deg);
        let den = (d1 as i128).checked_mul(d2 as i128)?;
        let (num, den) = normalize_small(prod, den)?;
        Some(Repr::Small { num, den })
    }

    /// Field operation with an explicit conductor check.
    pub fn arith(a: &CycloNum, b: &CycloNum, op: ArithOp) -> Result<CycloNum, CycloError> {
        match op {
            ArithOp::Add => a.add_sub(b, 1),
            ArithOp::Sub => a.add_sub(b, -1),
            ArithOp::Mul => a.mul_checked(b),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_M.
    pub fn inv(&self) -> Result<CycloNum, CycloError> {
        if self.is_zero_value() {
            return Err(CycloError::DivisionByZero);
        }
        let f = &self.field;
        let a: Vec<BigRational> = self.coords();
        let m: Vec<BigRational> = f.phi.iter().map(|c| BigRational::from(c.clone())).collect();
        let (g, s) = rat_poly_ext_gcd(&a, &m);
        // g is a nonzero constant because Φ_M is irreducible
        debug_assert_eq!(rat_poly_trim(g.clone()).len(), 1);
        let g0 = g[0].clone();
        let mut coords = vec![BigRational::zero(); f.deg];
        for (i, c) in s.into_iter().enumerate() {
            if i < f.deg {
                coords[i] = c / &g0;
            }
        }
        Ok(Self::from_coords(f, &coords))
    }

    /// The automorphism σ_k : ζ ↦ ζ^k.
    pub fn galois(&self, k: i64) -> Result<CycloNum, CycloError> {
        let m = self.field.m;
        if (k.rem_euclid(m as i64)).gcd(&(m as i64)) != 1 && m > 1 {
            return Err(CycloError::InvalidAutomorphism { k, m });
        }
        if m == 1 {
            return Ok(self.clone());
        }
        let f = &self.field;
        let (num, den) = self.repr.to_big();
        let mut out = vec![BigInt::zero(); f.deg];
        for (i, c) in num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let pc = f.power_coords(i as i64 * k);
            for (o, p) in out.iter_mut().zip(pc) {
                if !p.is_zero() {
                    *o += c * p;
                }
            }
        }
        Ok(Self::from_parts(f.clone(), normalize_big(out, den)))
    }

    /// Complex conjugation σ_{−1}.
    pub fn conj(&self) -> CycloNum {
        self.galois(-1).expect("-1 is always a unit")
    }

    /// Embedding ζ_m ↦ ζ_M^{M/m} into a field whose conductor is a multiple of m.
    pub fn embed(&self, target: &Arc<CycloField>) -> Result<CycloNum, CycloError> {
        let (from, to) = (self.field.m, target.m);
        if to % from != 0 {
            return Err(CycloError::Embedding { from, to });
        }
        if from == to {
            return Ok(self.clone());
        }
        let step = (to / from) as i64;
        let (num, den) = self.repr.to_big();
        let mut out = vec![BigInt::zero(); target.deg];
        for (i, c) in num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let pc = target.power_coords(i as i64 * step);
            for (o, p) in out.iter_mut().zip(pc) {
                if !p.is_zero() {
                    *o += c * p;
                }
            }
        }
        Ok(Self::from_parts(target.clone(), normalize_big(out, den)))
    }

    /// Numeric value at ζ_M = e^{2πi/M} in double precision.
    pub fn to_complex(&self) -> Complex64 {
        let m = self.field.m as f64;
        let coords = self.coords();
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = c.to_f64().unwrap_or(f64::NAN);
            let ang = 2.0 * std::f64::consts::PI * i as f64 / m;
            acc += Complex64::from_polar(v, ang);
        }
        acc
    }

    /// Non-negative integer power.
    pub fn pow(&self, mut e: u32) -> CycloNum {
        let mut base = self.clone();
        let mut acc = CycloNum::one_in(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplies by a rational number.
    pub fn scale(&self, n: i64, d: i64) -> CycloNum {
        self * &CycloNum::rational(n, d)
    }
}

/// Selector for [`CycloNum::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

fn rat_poly_trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    if p.is_empty() {
        p.push(BigRational::zero());
    }
    p
}

fn rat_poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = rat_poly_trim(b.to_vec());
    let mut r = rat_poly_trim(a.to_vec());
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (vec![BigRational::zero()], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    let lead = b[db].clone();
    for i in (0..q.len()).rev() {
        let c = &r[i + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for j in 0..=db {
            let t = &c * &b[j];
            r[i + j] -= t;
        }
        q[i] = c;
    }
    (q, rat_poly_trim(r))
}

fn rat_poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    rat_poly_trim(out)
}

fn rat_poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    rat_poly_trim(out)
}

/// Returns (g, s) with s·a ≡ g (mod m).
fn rat_poly_ext_gcd(a: &[BigRational], m: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r0 = rat_poly_trim(m.to_vec());
    let mut r1 = rat_poly_trim(a.to_vec());
    let mut s0 = vec![BigRational::zero()];
    let mut s1 = vec![BigRational::one()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = rat_poly_divmod(&r0, &r1);
        let s2 = rat_poly_sub(&s0, &rat_poly_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    (r0, s0)
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        match CycloNum::unify(self, other) {
            Ok((a, b)) => match (&a.repr, &b.repr) {
                (Repr::Small { num: n1, den: d1 }, Repr::Small { num: n2, den: d2 }) => {
                    d1 == d2 && n1 == n2
                }
                _ => a.repr.to_big() == b.repr.to_big(),
            },
            Err(_) => false,
        }
    }
}

impl Eq for CycloNum {}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cyclo({})[", self.field.m)?;
        for (i, c) in self.coords().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if c.denom().is_one() {
                write!(f, "{}", c.numer())?;
            } else {
                write!(f, "{}/{}", c.numer(), c.denom())?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for CycloNum {
    type Err = CycloError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CycloError::Parse(s.to_string());
        let s = s.trim();
        let rest = s.strip_prefix("cyclo(").ok_or_else(bad)?;
        let close = rest.find(')').ok_or_else(bad)?;
        let m: u32 = rest[..close].trim().parse().map_err(|_| bad())?;
        let body = rest[close + 1..].trim();
        let body = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(bad)?;
        let fld = field(m)?;
        let mut coords = Vec::new();
        for tok in body.split(',') {
            let tok = tok.trim();
            if tok.is_empty() {
                continue;
            }
            let r = match tok.split_once('/') {
                Some((n, d)) => {
                    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                    if d.is_zero() {
                        return Err(bad());
                    }
                    BigRational::new(n, d)
                }
                None => BigRational::from(tok.parse::<BigInt>().map_err(|_| bad())?),
            };
            coords.push(r);
        }
        if coords.len() != fld.deg {
            return Err(bad());
        }
        Ok(CycloNum::from_coords(&fld, &coords))
    }
}

impl serde::Serialize for CycloNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for CycloNum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a, 'b> $tr<&'b CycloNum> for &'a CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: &'b CycloNum) -> CycloNum {
                let f: fn(&CycloNum, &CycloNum) -> CycloNum = $body;
                f(self, rhs)
            }
        }
        impl $tr<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: CycloNum) -> CycloNum {
                (&self).$method(&rhs)
            }
        }
        impl<'b> $tr<&'b CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: &'b CycloNum) -> CycloNum {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<CycloNum> for &'a CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: CycloNum) -> CycloNum {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_sub(b, 1).unwrap_or_else(|e| panic!("{e}")));
binop!(Sub, sub, |a, b| a.add_sub(b, -1).unwrap_or_else(|e| panic!("{e}")));
binop!(Mul, mul, |a, b| a.mul_checked(b).unwrap_or_else(|e| panic!("{e}")));
binop!(Div, div, |a, b| {
    let inv = b.inv().unwrap_or_else(|e| panic!("{e}"));
    a.mul_checked(&inv).unwrap_or_else(|e| panic!("{e}"))
});

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        let repr = match &self.repr {
            Repr::Small { num, den } => Repr::Small {
                num: num.iter().map(|c| -c).collect(),
                den: *den,
            },
            Repr::Big { num, den } => Repr::Big {
                num: num.iter().map(|c| -c).collect(),
                den: den.clone(),
            },
        };
        CycloNum::from_parts(self.field.clone(), repr)
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

impl AddAssign<&CycloNum> for CycloNum {
    fn add_assign(&mut self, rhs: &CycloNum) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&CycloNum> for CycloNum {
    fn sub_assign(&mut self, rhs: &CycloNum) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&CycloNum> for CycloNum {
    fn mul_assign(&mut self, rhs: &CycloNum) {
        *self = &*self * rhs;
    }
}

impl Zero for CycloNum {
    fn zero() -> Self {
        CycloNum::int(0)
    }
    fn is_zero(&self) -> bool {
        self.is_zero_value()
    }
}

impl One for CycloNum {
    fn one() -> Self {
        CycloNum::int(1)
    }
}

/// √(±p) inside Q(ζ_p), built as 2·(sum of ζ^k over quadratic residues k) + 1.
///
/// `sign` is +1 for √p (requires p ≡ 1 mod 4) and −1 for √−p (requires
/// p ≡ 3 mod 4). The branch is the principal one: positive real part for √p,
/// positive imaginary part for √−p.
pub fn sqrt_p(p: u32, sign: i32) -> Result<CycloNum, CycloError> {
    let sign_char = if sign >= 0 { '+' } else { '-' };
    if p < 3 || p % 2 == 0 || !is_prime(p as u64) {
        return Err(CycloError::NotInField { p, sign: sign_char });
    }
    let want_plus = p % 4 == 1;
    if want_plus != (sign >= 0) {
        return Err(CycloError::NotInField { p, sign: sign_char });
    }
    let f = field(p)?;
    let mut g = CycloNum::one_in(&f);
    let two = CycloNum::int(2);
    let mut seen = vec![false; p as usize];
    for k in 1..p as u64 {
        let r = (k * k % p as u64) as usize;
        if !seen[r] {
            seen[r] = true;
            g = &g + &(&two * &CycloNum::zeta(&f, r as i64));
        }
    }
    let z = g.to_complex();
    let principal = if want_plus { z.re > 0.0 } else { z.im > 0.0 };
    Ok(if principal { g } else { -g })
}

/// Deterministic primality test for the small integers used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        let f = field(12).unwrap();
        let c: Vec<i64> = f.modulus().iter().map(|c| c.to_i64().unwrap()).collect();
        assert_eq!(c, vec![1, 0, -1, 0, 1]);
        assert_eq!(field(13).unwrap().degree(), 12);
        assert_eq!(field(104).unwrap().degree(), 48);
    }

    #[test]
    fn zeta_powers_wrap() {
        let f = field(7).unwrap();
        let z = CycloNum::zeta(&f, 1);
        assert_eq!(&z * &CycloNum::zeta(&f, 6), CycloNum::one_in(&f));
        assert_eq!(z.pow(7), CycloNum::one());
        assert_eq!(CycloNum::zeta(&f, -1), CycloNum::zeta(&f, 6));
    }

    #[test]
    fn display_round_trip() {
        let f = field(7).unwrap();
        let a = &CycloNum::zeta(&f, 3) * &CycloNum::rational(-5, 3) + CycloNum::rational(1, 2);
        let s = a.to_string();
        assert!(s.starts_with("cyclo(7)["));
        assert_eq!(s.parse::<CycloNum>().unwrap(), a);
    }

    #[test]
    fn big_fallback_matches_small() {
        let f = field(13).unwrap();
        let a = &CycloNum::zeta(&f, 2) * &CycloNum::int(1 << 40) + CycloNum::rational(1, 3);
        let b = a.pow(6);
        let c = &(&a.pow(3) * &a.pow(2)) * &a;
        assert_eq!(b, c);
        let back = &b * &b.inv().unwrap();
        assert_eq!(back, CycloNum::one());
    }
}
