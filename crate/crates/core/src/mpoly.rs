//! Sparse multivariate polynomials over a [`Scalar`] coefficient type.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded reverse lexicographic, so the leading term is the last entry.
//! Linear substitution `f(x) -> f(A x)` caches powers of the substituted
//! linear forms, which keeps the many group-action evaluations cheap.

use std::collections::BTreeMap;
use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cyclo::CycloNum;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// An exponent vector ordered by graded reverse lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    /// The constant monomial in `n` variables.
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    /// The monomial `x_i` in `n` variables.
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    /// Total degree.
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    /// Product of monomials.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Quotient `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            e.push(a - b);
        }
        Some(Monomial(e))
    }

    /// Pure lexicographic comparison of exponent vectors.
    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            if a != b {
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A polynomial in a fixed number of variables.
#[derive(Clone, PartialEq)]
pub struct MPoly<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Scalar> MPoly<C> {
    /// The zero polynomial in `nvars` variables.
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    /// The constant `c`.
    pub fn constant(nvars: usize, c: C) -> Self {
        Self::term(nvars, Monomial::one(nvars), c)
    }

    /// The variable `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(nvars, Monomial::var(nvars, i), C::one())
    }

    /// A single term `c * m`.
    pub fn term(nvars: usize, m: Monomial, c: C) -> Self {
        assert_eq!(m.0.len(), nvars, "monomial arity");
        let mut p = Self::zero(nvars);
        if !c.is_negligible(0.0) {
            p.terms.insert(m, c);
        }
        p
    }

    /// A monomial with integer coefficient from an exponent slice.
    pub fn mono(exps: &[u16], c: i64) -> Self {
        Self::term(exps.len(), Monomial(exps.to_vec()), C::from_int(c))
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u16>, C)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(Monomial(e), c);
        }
        p
    }

    /// Number of variables.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in increasing grevlex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of a monomial.
    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Leading term in grevlex order.
    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    /// Leading term in pure lexicographic order.
    pub fn lex_leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().max_by(|a, b| a.0.lex_cmp(b.0))
    }

    /// Total degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Common degree of all terms if the polynomial is homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: C) {
        assert_eq!(m.0.len(), self.nvars, "monomial arity");
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = v.clone() + &c;
                if s.is_negligible(0.0) {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                if !c.is_negligible(0.0) {
                    self.terms.insert(m, c);
                }
            }
        }
    }

    /// Sum.
    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    /// Difference.
    pub fn sub(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), -c.clone());
        }
        r
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        self.scale(&-C::one())
    }

    /// Multiplication by a scalar.
    pub fn scale(&self, c: &C) -> Self {
        let mut r = Self::zero(self.nvars);
        if c.is_negligible(0.0) {
            return r;
        }
        for (m, v) in &self.terms {
            r.add_term(m.clone(), v.clone() * c);
        }
        r
    }

    /// Product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut acc: BTreeMap<Monomial, C> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                let c = c1.clone() * c2;
                match acc.get_mut(&m) {
                    Some(v) => *v = v.clone() + &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        acc.retain(|_, v| !v.is_negligible(0.0));
        MPoly { nvars: self.nvars, terms: acc }
    }

    /// Power by repeated squaring.
    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut r = Self::constant(self.nvars, C::one());
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        r
    }

    /// Partial derivative with respect to `x_i`.
    pub fn diff(&self, i: usize) -> Self {
        let mut r = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut n = m.clone();
            n.0[i] -= 1;
            r.add_term(n, c.clone() * C::from_int(e as i64));
        }
        r
    }

    /// Evaluation at a point.
    pub fn eval(&self, x: &[C]) -> C {
        assert_eq!(x.len(), self.nvars, "point arity");
        let maxe: Vec<u16> = (0..self.nvars)
            .map(|i| self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0))
            .collect();
        let pows: Vec<Vec<C>> = x
            .iter()
            .zip(&maxe)
            .map(|(xi, &e)| {
                let mut v = vec![C::one()];
                for k in 0..e as usize {
                    let nxt = v[k].clone() * xi;
                    v.push(nxt);
                }
                v
            })
            .collect();
        let mut s = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t * &pows[i][e as usize];
                }
            }
            s = s + &t;
        }
        s
    }

    /// Numeric evaluation at a complex point.
    pub fn eval_c64(&self, x: &[Complex64]) -> Complex64 {
        assert_eq!(x.len(), self.nvars, "point arity");
        let mut s = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_c64();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= x[i].powu(e as u32);
                }
            }
            s += t;
        }
        s
    }

    /// Numeric copy of the polynomial.
    pub fn to_c64(&self) -> MPoly<Complex64> {
        let mut r = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            r.add_term(m.clone(), c.to_c64());
        }
        r
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> MPoly<D> {
        let mut r = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            r.add_term(m.clone(), f(c));
        }
        r
    }

    /// Substitutes `x_i -> sum_j a[i][j] x_j`, that is `f(A x)`.
    ///
    /// The matrix may be rectangular: it has one row per variable of `self`
    /// and one column per variable of the result.
    pub fn substitute_linear(&self, a: &Matrix<C>) -> Self {
        assert_eq!(a.rows(), self.nvars, "substitution rows");
        let n = a.cols();
        let lin: Vec<MPoly<C>> = (0..self.nvars)
            .map(|i| {
                let mut l = MPoly::zero(n);
                for j in 0..n {
                    l.add_term(Monomial::var(n, j), a.get(i, j).clone());
                }
                l
            })
            .collect();
        self.substitute(&lin)
    }

    /// Substitutes `x_i -> g_i` for arbitrary polynomials `g_i`.
    pub fn substitute(&self, g: &[MPoly<C>]) -> Self {
        assert_eq!(g.len(), self.nvars, "substitution arity");
        let n = g.first().map(|p| p.nvars).unwrap_or(0);
        let mut cache: Vec<Vec<MPoly<C>>> =
            (0..self.nvars).map(|i| vec![MPoly::constant(n, C::one()), g[i].clone()]).collect();
        let mut r = MPoly::zero(n);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(n, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                let e = e as usize;
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e {
                    let nxt = cache[i].last().expect("cache").mul(&g[i]);
                    cache[i].push(nxt);
                }
                t = t.mul(&cache[i][e]);
            }
            for (mm, cc) in t.terms {
                r.add_term(mm, cc);
            }
        }
        r
    }

    /// Exact quotient `self / d` when `d` divides `self`.
    ///
    /// Uses multivariate division by a single divisor in grevlex order;
    /// returns `None` when the remainder is nonzero.
    pub fn divides_into(&self, d: &Self) -> Option<Self> {
        let (rem, q) = self.div_rem(d);
        rem.is_zero().then_some(q)
    }

    /// Division by a single divisor: returns `(remainder, quotient)`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let (lm, lc) = match d.leading() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => panic!("division by the zero polynomial"),
        };
        let lc_inv = lc.inverse().expect("nonzero leading coefficient");
        let mut r = self.clone();
        let mut q = Self::zero(self.nvars);
        let mut rem = Self::zero(self.nvars);
        while let Some((m, c)) = r.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            match m.div(&lm) {
                Some(shift) => {
                    let f = c * &lc_inv;
                    for (dm, dc) in &d.terms {
                        r.add_term(dm.mul(&shift), -(dc.clone() * &f));
                    }
                    r.terms.remove(&m);
                    q.add_term(shift, f);
                }
                None => {
                    r.terms.remove(&m);
                    rem.add_term(m, c);
                }
            }
        }
        (rem, q)
    }

    /// Largest absolute coefficient value.
    pub fn max_coeff_norm(&self) -> f64 {
        self.terms.values().map(|c| c.to_c64().norm()).fold(0.0, f64::max)
    }
}

/// Parses a polynomial with rational coefficients written as a sum of
/// products, e.g. `"z1*z5^3 - 2*z3^2*z4 + 1/2*z6^2"`.
///
/// Variables are looked up by name in `vars`. Panics on malformed input,
/// since the parser only reads literal forms embedded in the library.
pub fn parse_poly<C: Scalar>(src: &str, vars: &[&str]) -> MPoly<C> {
    let n = vars.len();
    let mut out = MPoly::zero(n);
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let mut terms: Vec<(i64, String)> = Vec::new();
    let mut sign = 1;
    let mut cur = String::new();
    for ch in s.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() {
            terms.push((sign, std::mem::take(&mut cur)));
            sign = if ch == '-' { -1 } else { 1 };
        } else if ch == '-' {
            sign = -sign;
        } else if ch != '+' {
            cur.push(ch);
        }
    }
    if !cur.is_empty() {
        terms.push((sign, cur));
    }
    for (sign, t) in terms {
        let mut coeff = C::from_int(sign);
        let mut exps = vec![0u16; n];
        for factor in t.split('*') {
            let (base, e) = match factor.split_once('^') {
                Some((b, e)) => (b, e.parse::<u16>().expect("exponent")),
                None => (factor, 1),
            };
            if let Some(i) = vars.iter().position(|v| *v == base) {
                exps[i] += e;
            } else {
                let c = match base.split_once('/') {
                    Some((a, b)) => C::from_ratio(a.parse().expect("numerator"), b.parse().expect("denominator")),
                    None => C::from_int(base.parse().unwrap_or_else(|_| panic!("unknown symbol {base}"))),
                };
                for _ in 0..e {
                    coeff = coeff * &c;
                }
            }
        }
        out.add_term(Monomial(exps), coeff);
    }
    out
}

/// Elementary symmetric polynomials `e_0, ..., e_n` of the given values.
pub fn elementary_symmetric<C: Scalar>(xs: &[C]) -> Vec<C> {
    let mut e = vec![C::one()];
    for x in xs {
        let mut next = e.clone();
        next.push(C::zero());
        for k in 1..next.len() {
            next[k] = next[k].clone() + &(e[k - 1].clone() * x);
        }
        e = next;
    }
    e
}

/// Elementary symmetric polynomials of a list of polynomials.
pub fn elementary_symmetric_polys<C: Scalar>(ps: &[MPoly<C>]) -> Vec<MPoly<C>> {
    let n = ps.first().map(MPoly::nvars).unwrap_or(0);
    let mut e = vec![MPoly::constant(n, C::one())];
    for p in ps {
        let mut next = e.clone();
        next.push(MPoly::zero(n));
        for k in 1..next.len() {
            next[k] = next[k].add(&e[k - 1].mul(p));
        }
        e = next;
    }
    e
}

impl<C: Scalar> fmt::Debug for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:?})", c)?;
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{}", i + 1, e)?,
                }
            }
        }
        Ok(())
    }
}

/// One serialized term: exponent vector and coefficient.
#[derive(Serialize, Deserialize)]
struct TermJson<C> {
    exps: Vec<u16>,
    coeff: C,
}

/// Serialized polynomial layout.
#[derive(Serialize, Deserialize)]
struct PolyJson<C> {
    nvars: usize,
    terms: Vec<TermJson<C>>,
}

impl Serialize for MPoly<CycloNum> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let j = PolyJson {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| TermJson { exps: m.0.clone(), coeff: c.clone() })
                .collect(),
        };
        j.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MPoly<CycloNum> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = PolyJson::<CycloNum>::deserialize(d)?;
        let mut p = MPoly::zero(j.nvars);
        for t in j.terms {
            if t.exps.len() != j.nvars {
                return Err(serde::de::Error::custom("exponent vector arity"));
            }
            p.add_term(Monomial(t.exps), t.coeff);
        }
        Ok(p)
    }
}
