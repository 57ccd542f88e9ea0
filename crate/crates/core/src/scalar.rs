//! The coefficient abstraction shared by polynomials, matrices and series.
//!
//! Exact cyclotomic numbers and double-precision complex numbers both
//! implement [`Scalar`]; generic code decides zero-ness and pivots through
//! the trait so that the same routines serve symbolic and numeric checks.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::cyclo::CycloNum;

/// A commutative field element usable as a polynomial or matrix entry.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    /// True for exact arithmetic, where zero tests are decisive.
    const EXACT: bool;

    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    /// The integer `n` embedded in the scalar type.
    fn from_int(n: i64) -> Self;

    /// The rational number `n/d` embedded in the scalar type.
    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_int(n) * Self::from_int(d).inverse().expect("nonzero denominator")
    }

    /// Magnitude used to choose pivots; exact types return 0 or 1.
    fn weight(&self) -> f64;

    /// Zero test; numeric types compare against `tol`, exact types ignore it.
    fn is_negligible(&self, tol: f64) -> bool;

    /// Numeric value in the complex plane.
    fn to_c64(&self) -> Complex64;
}

impl Scalar for CycloNum {
    const EXACT: bool = true;

    fn inverse(&self) -> Option<Self> {
        self.inv().ok()
    }

    fn from_int(n: i64) -> Self {
        CycloNum::int(n)
    }

    fn from_ratio(n: i64, d: i64) -> Self {
        CycloNum::rational(n, d)
    }

    fn weight(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }

    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn to_c64(&self) -> Complex64 {
        self.to_complex()
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn inverse(&self) -> Option<Self> {
        if self.norm() == 0.0 {
            None
        } else {
            Some(self.inv())
        }
    }

    fn from_int(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }

    fn from_ratio(n: i64, d: i64) -> Self {
        Complex64::new(n as f64 / d as f64, 0.0)
    }

    fn weight(&self) -> f64 {
        self.norm()
    }

    fn is_negligible(&self, tol: f64) -> bool {
        self.norm() <= tol
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }
}
