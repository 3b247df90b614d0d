use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: max |H - H^dagger| = {asymmetry:e}")]
    NotHermitian { asymmetry: f64 },

    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),

    #[error("dimension {0} is not prime")]
    NotPrime(usize),

    #[error("dimension {0} is not an odd prime")]
    NotOddPrime(usize),

    #[error("degenerate spectrum: adjacent eigenvalues differ by {gap:e} (threshold {threshold:e})")]
    DegenerateSpectrum { gap: f64, threshold: f64 },

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("R-matrix entry ({row}, {col}) has imaginary residue {residue:e}")]
    ImaginaryResidue { row: usize, col: usize, residue: f64 },

    #[error("basis normalization check failed: deviation {0:e}")]
    BasisNormalization(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
