//! Exact computations with DG algebras, semifree DG modules and the diagonal
//! obstruction to naive liftability.

pub mod dgalg;
pub mod dgmod;
pub mod diagonal;
pub mod exactlin;
pub mod homotopy;
pub mod instance;
pub mod liftcheck;
pub mod obstruction;

#[cfg(test)]
pub(crate) mod testing;
