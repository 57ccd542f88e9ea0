//! Dense matrices over a [`Scalar`] with Gaussian elimination.
//!
//! Exact scalars pivot on any nonzero entry; numeric scalars use partial
//! pivoting by magnitude and a caller-supplied relative tolerance.

use std::fmt;

use crate::mpoly::MPoly;
use crate::scalar::Scalar;

/// A dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<C> {
    rows: usize,
    cols: usize,
    data: Vec<C>,
}

impl<C: Scalar> Matrix<C> {
    /// The zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![C::zero(); rows * cols] }
    }

    /// The identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, C::one());
        }
        m
    }

    /// A diagonal matrix.
    pub fn diag(d: &[C]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, v) in d.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    /// Builds a matrix from rows.
    pub fn from_rows(rows: Vec<Vec<C>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(Vec::len).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds a matrix from columns.
    pub fn from_cols(cols: &[Vec<C>]) -> Self {
        let c = cols.len();
        let r = cols.first().map(Vec::len).unwrap_or(0);
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged columns");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &C {
        &self.data[i * self.cols + j]
    }

    /// Sets entry `(i, j)`.
    pub fn set(&mut self, i: usize, j: usize, v: C) {
        self.data[i * self.cols + j] = v;
    }

    /// Row `i` as a vector.
    pub fn row(&self, i: usize) -> Vec<C> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    /// Column `j` as a vector.
    pub fn col(&self, j: usize) -> Vec<C> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Product `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix shapes");
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_negligible(0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_negligible(0.0) {
                        continue;
                    }
                    let v = m.get(i, j).clone() + &(a.clone() * b);
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[C]) -> Vec<C> {
        assert_eq!(self.cols, v.len(), "vector length");
        (0..self.rows)
            .map(|i| {
                let mut s = C::zero();
                for (j, x) in v.iter().enumerate() {
                    s = s + &(self.get(i, j).clone() * x);
                }
                s
            })
            .collect()
    }

    /// Sum.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shapes");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b).collect(),
        }
    }

    /// Difference.
    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shapes");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b).collect(),
        }
    }

    /// Multiplication by a scalar.
    pub fn scale(&self, c: &C) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.clone() * c).collect() }
    }

    /// Transpose.
    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    /// Integer power of a square matrix.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut r = Self::identity(self.rows);
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

    /// Trace of a square matrix.
    pub fn trace(&self) -> C {
        let mut s = C::zero();
        for i in 0..self.rows.min(self.cols) {
            s = s + self.get(i, i);
        }
        s
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[C] {
        &self.data
    }

    /// Largest entry magnitude.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|c| c.to_c64().norm()).fold(0.0, f64::max)
    }

    /// True when every entry of `self - other` is negligible at `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.rows, self.cols) == (other.rows, other.cols)
            && self.data.iter().zip(&other.data).all(|(a, b)| (a.clone() - b).is_negligible(tol))
    }

    /// If `self = c * I` returns `c`.
    pub fn scalar_value(&self, tol: f64) -> Option<C> {
        if self.rows != self.cols || self.rows == 0 {
            return None;
        }
        let c = self.get(0, 0).clone();
        self.approx_eq(&Self::identity(self.rows).scale(&c), tol).then_some(c)
    }

    /// If `self = c * other` for a scalar `c` returns `c`.
    pub fn proportional_to(&self, other: &Self, tol: f64) -> Option<C> {
        let k = other
            .data
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.weight().partial_cmp(&b.1.weight()).expect("finite weights"))?
            .0;
        let c = self.data[k].clone() * &other.data[k].inverse()?;
        self.approx_eq(&other.scale(&c), tol).then_some(c)
    }

    /// Row echelon reduction; returns the reduced matrix and pivot columns.
    ///
    /// Numeric entries below `tol` times the largest entry count as zero.
    pub fn rref(&self, tol: f64) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let thresh = tol * self.max_norm().max(if C::EXACT { 0.0 } else { 1e-300 });
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let mut best = None;
            let mut bw = 0.0;
            for i in r..m.rows {
                let v = m.get(i, c);
                if v.is_negligible(thresh) {
                    continue;
                }
                let w = v.weight();
                if best.is_none() || (!C::EXACT && w > bw) {
                    best = Some(i);
                    bw = w;
                    if C::EXACT {
                        break;
                    }
                }
            }
            let Some(pi) = best else { continue };
            if pi != r {
                for j in 0..m.cols {
                    m.data.swap(pi * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inverse().expect("pivot is nonzero");
            for j in 0..m.cols {
                let v = m.get(r, j).clone() * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_negligible(0.0) {
                    continue;
                }
                for j in 0..m.cols {
                    let v = m.get(i, j).clone() - &(f.clone() * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Rank.
    pub fn rank(&self, tol: f64) -> usize {
        self.rref(tol).1.len()
    }

    /// Basis of the right null space `{x : self x = 0}`.
    pub fn kernel(&self, tol: f64) -> Vec<Vec<C>> {
        let (m, piv) = self.rref(tol);
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![C::zero(); self.cols];
                v[f] = C::one();
                for (r, &pc) in piv.iter().enumerate() {
                    v[pc] = -m.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    /// Solves `self x = b`, returning one solution when consistent.
    pub fn solve(&self, b: &[C], tol: f64) -> Option<Vec<C>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (m, piv) = aug.rref(tol);
        if piv.contains(&self.cols) {
            return None;
        }
        let mut x = vec![C::zero(); self.cols];
        for (r, &pc) in piv.iter().enumerate() {
            x[pc] = m.get(r, self.cols).clone();
        }
        Some(x)
    }

    /// Inverse of a square matrix.
    pub fn inverse(&self, tol: f64) -> Option<Self> {
        let n = self.rows;
        if n != self.cols {
            return None;
        }
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, C::one());
        }
        let (m, piv) = aug.rref(tol);
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, m.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Determinant by elimination.
    pub fn det(&self) -> C {
        assert_eq!(self.rows, self.cols, "square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut d = C::one();
        for c in 0..n {
            let mut best = None;
            let mut bw = 0.0;
            for i in c..n {
                let w = m.get(i, c).weight();
                if w > bw {
                    best = Some(i);
                    bw = w;
                    if C::EXACT {
                        break;
                    }
                }
            }
            let Some(pi) = best else { return C::zero() };
            if pi != c {
                for j in 0..n {
                    m.data.swap(pi * n + j, c * n + j);
                }
                d = -d;
            }
            let p = m.get(c, c).clone();
            d = d * &p;
            let inv = p.inverse().expect("pivot is nonzero");
            for i in c + 1..n {
                let f = m.get(i, c).clone() * &inv;
                if f.is_negligible(0.0) {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j).clone() - &(f.clone() * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        d
    }

    /// Applies `f` to every entry.
    pub fn map<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Matrix<D> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl<C: Scalar> fmt::Debug for Matrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Determinant of a small square matrix of polynomials by cofactor expansion.
pub fn poly_det<C: Scalar>(m: &[Vec<MPoly<C>>]) -> MPoly<C> {
    let n = m.len();
    let nv = m[0][0].nvars();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = MPoly::zero(nv);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MPoly<C>>> = (1..n)
            .map(|i| (0..n).filter(|&k| k != j).map(|k| m[i][k].clone()).collect())
            .collect();
        let t = m[0][j].mul(&poly_det(&minor));
        acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
    }
    acc
}

/// Rank of a list of polynomials viewed as coefficient vectors.
pub fn poly_span_rank<C: Scalar>(ps: &[MPoly<C>], tol: f64) -> usize {
    coefficient_matrix(ps).rank(tol)
}

/// Coefficient matrix with one column per polynomial, rows indexed by the
/// union of monomials in grevlex order.
pub fn coefficient_matrix<C: Scalar>(ps: &[MPoly<C>]) -> Matrix<C> {
    let mut monos: Vec<_> = ps.iter().flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
    monos.sort();
    monos.dedup();
    let mut m = Matrix::zeros(monos.len(), ps.len());
    for (j, p) in ps.iter().enumerate() {
        for (mo, c) in p.terms() {
            let i = monos.binary_search(mo).expect("monomial present");
            m.set(i, j, c.clone());
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::CycloNum;
    use num_complex::Complex64;

    fn q(n: i64) -> CycloNum {
        CycloNum::int(n)
    }

    #[test]
    fn inverse_and_det_exact() {
        let a = Matrix::from_rows(vec![vec![q(2), q(1)], vec![q(7), q(4)]]);
        assert_eq!(a.det(), q(1));
        let inv = a.inverse(0.0).unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
    }

    #[test]
    fn kernel_of_rank_one() {
        let a = Matrix::from_rows(vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]]);
        assert_eq!(a.rank(0.0), 1);
        let k = a.kernel(0.0);
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(a.apply(&v).iter().all(|x| *x == q(0)));
        }
    }

    #[test]
    fn numeric_solve() {
        let c = |x: f64| Complex64::new(x, 0.0);
        let a = Matrix::from_rows(vec![vec![c(1e-3), c(1.0)], vec![c(1.0), c(1.0)]]);
        let x = a.solve(&[c(1.0), c(2.0)], 1e-12).unwrap();
        let r = a.apply(&x);
        assert!((r[0] - c(1.0)).norm() < 1e-12 && (r[1] - c(2.0)).norm() < 1e-12);
    }
}
