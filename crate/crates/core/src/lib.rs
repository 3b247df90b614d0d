//! Heisenberg-Weyl observables on qudits and the linear maps built from them.
//!
//! The crate constructs shift, phase, Weyl and displacement operators, the
//! Hermitian Heisenberg-Weyl observables `Q_{k,l}`, mutually unbiased bases
//! for prime dimensions, and sandwich maps (Weyl channels, generalized Pauli
//! channels, the pair-refined family). Every algebraic, spectral and
//! positivity property is exposed as a function returning a measured
//! deviation so callers can compare it against their own tolerance.

pub mod error;
pub mod hwops;
pub mod linalg;
pub mod maps;
pub mod mub;
pub mod rmatrix;
pub mod rng;
pub mod spectral;

pub use error::{Error, Result};
pub use hwops::{ChiConvention, HWObservable, WeylIndex};
pub use linalg::{ComplexMatrix, ComplexScalar, PolynomialCoefficients};

pub use maps::{ChoiMatrix, SandwichMap, Superoperator, WeightVector};
pub use rmatrix::{HWBasis, RDecomposition, RMatrix};
