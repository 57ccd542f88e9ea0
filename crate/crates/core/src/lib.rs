//! Exact and numeric tools for the invariant theory of Weil representations
//! of `PSL(2, p)` and `SL(2, p)` and the modular curves they cut out.

pub mod cyclo;
pub mod group;
pub mod invariants;
pub mod linalg;
pub mod locus;
pub mod mpoly;
pub mod qtheta;
pub mod rep;
pub mod report;
pub mod scalar;
pub mod suite;

pub use cyclo::{CycloField, CycloNum};
pub use linalg::Matrix;
pub use mpoly::MPoly;
pub use qtheta::PuiseuxSeries;
pub use report::VerificationReport;

/// Polynomials with exact cyclotomic coefficients.
pub type Poly = MPoly<CycloNum>;
/// Polynomials with double-precision complex coefficients.
pub type NumPoly = MPoly<num_complex::Complex64>;
/// Exact cyclotomic matrices.
pub type ExactMatrix = Matrix<CycloNum>;
/// Double-precision complex matrices.
pub type NumMatrix = Matrix<num_complex::Complex64>;
