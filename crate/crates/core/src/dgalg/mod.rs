//! Graded-commutative DG algebras `A ⊆ B` given by a base ring `k` or
//! `k[a]/(a^m)` and an ordered list of variables with differentials.

mod algebra;
mod element;
mod identities;

pub use algebra::{Algebra, BaseRing, Presentation, VarSpec};
pub use element::{Element, Monomial};
pub use identities::{check_identities, check_identities_on_basis, Identity, IdentityReport};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("ill-formed presentation at variable `{variable}`: {reason}")]
    IllFormedPresentation { variable: String, reason: String },
    #[error("elements belong to different algebras")]
    OwnerMismatch,
    #[error("degree {requested} exceeds the configured degree cap {cap}")]
    CapExceeded { requested: i64, cap: i64 },
    #[error("element is not homogeneous")]
    NotHomogeneous,
}
