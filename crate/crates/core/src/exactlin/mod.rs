//! Exact scalars and sparse linear algebra over ℚ or a prime field.

mod echelon;
mod scalar;
mod span;
mod sparse;
mod subspace;

pub use echelon::{kernel_basis, rank, solve, solve_sparse, Echelon};
pub use scalar::{Field, Scalar};
pub use span::SpanSolver;
pub use sparse::{SparseMatrix, SparseVec};
pub use subspace::Subspace;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("{0} is not a usable prime modulus")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("index {index} out of bounds (bound {bound})")]
    IndexOutOfBounds { index: usize, bound: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("solution failed verification by substitution")]
    VerificationFailed,
}
