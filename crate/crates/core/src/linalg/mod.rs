//! Dense complex linear algebra sized for operators on small qudits.
//!
//! Everything here is a pure function of its inputs. Comparisons elsewhere in
//! the crate use the max-abs-entry distance [`ComplexMatrix::max_abs_diff`].

mod charpoly;
mod eigen;
mod matrix;

pub use charpoly::{char_poly, PolynomialCoefficients};
pub use eigen::{hermitian_eigen, operator_norm, HermitianEigen, CONVERGENCE_RATIO, HERMITIAN_TOL, MAX_SWEEPS};
pub use matrix::{ComplexMatrix, ComplexScalar};

/// Default absolute tolerance for identity checks.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

pub fn mat_mul(a: &ComplexMatrix, b: &ComplexMatrix) -> crate::Result<ComplexMatrix> {
    a.matmul(b)
}

pub fn dagger(a: &ComplexMatrix) -> ComplexMatrix {
    a.dagger()
}

pub fn trace(a: &ComplexMatrix) -> crate::Result<ComplexScalar> {
    a.trace()
}

pub fn hs_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> crate::Result<ComplexScalar> {
    a.hs_inner(b)
}
