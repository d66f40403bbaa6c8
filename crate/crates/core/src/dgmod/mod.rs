//! Right DG `B`-modules: semifree modules with finite ordered bases, shifts,
//! sums, cones, base change along `A → B`, and degreewise carriers.

mod base_change;
mod carrier;
mod chainmap;
mod semifree;
mod tensor;

pub use base_change::{base_change, BaseChange};
pub use carrier::{homology_dim, AlgebraCarrier, Bimodule, BlockLayout, Carrier, Shifted};
pub use chainmap::ChainMap;
pub(crate) use semifree::free_add as free_add_into;
pub use semifree::{FreeElem, SemifreeModule};
pub use tensor::TensorCarrier;

use thiserror::Error;

use crate::dgalg::AlgebraError;
use crate::exactlin::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("differential of `{column}` is not strictly lower triangular (involves `{row}`)")]
    NotTriangular { column: String, row: String },
    #[error("coefficient of `{row}` in the differential of `{column}` has the wrong degree")]
    DegreeMismatch { column: String, row: String },
    #[error("d² is nonzero on `{column}`")]
    DSquaredNonzero { column: String },
    #[error("no basis order makes the differential strictly lower triangular")]
    TriangularityUnrepairable,
    #[error("degree {requested} exceeds the configured degree cap {cap}")]
    CapExceeded { requested: i64, cap: i64 },
    #[error("invalid chain map at `{column}`: {reason}")]
    InvalidChainMap { column: String, reason: String },
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("unknown basis element `{0}`")]
    UnknownBasis(String),
    #[error(transparent)]
    Algebra(AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

impl From<AlgebraError> for ModuleError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::CapExceeded { requested, cap } => {
                ModuleError::CapExceeded { requested, cap }
            }
            other => ModuleError::Algebra(other),
        }
    }
}

#[cfg(test)]
mod tests;
