//! Hom complexes between semifree modules and carriers, null-homotopy
//! witnesses, homotopy-category dimensions and the AR1/AR2 checks.

mod conditions;
mod space;

pub use conditions::{check_ar1, check_ar2, Ar1Report, Ar2Report, Perfectness};
pub use space::{verify_chain_map, verify_homotopy, HomSpace, HomotopyWitness};

use std::sync::Arc;

use crate::dgmod::{Carrier, ChainMap, ModuleError, SemifreeModule, Shifted};

/// Degree-0 maps `M → Σ^s N`.
pub fn chain_map_space(
    m: &SemifreeModule,
    n: &SemifreeModule,
    s: i64,
) -> Result<HomSpace, ModuleError> {
    HomSpace::new(m, &Shifted::new(n, s))
}

/// `dim_k Hom_𝒦(M, Σ^s X)` for any carrier `X`.
pub fn hom_k_dim(m: &SemifreeModule, x: &dyn Carrier, s: i64) -> Result<usize, ModuleError> {
    Ok(HomSpace::new(m, &Shifted::new(x, s))?.dim())
}

/// A witness `h` with `f = ∂h + h∂`, or `None` when `f` is not null-homotopic.
pub fn is_null_homotopic(f: &ChainMap) -> Result<Option<HomotopyWitness>, ModuleError> {
    let target = Shifted::new(f.target().as_ref(), f.shift());
    let space = HomSpace::new(f.source(), &target)?;
    let images = f.images()?;
    let w = space.null_homotopy(&space.assemble(&images))?;
    if let Some(w) = &w {
        if !verify_homotopy(f.source(), &target, &images, &w.images)? {
            return Err(crate::exactlin::LinalgError::VerificationFailed.into());
        }
    }
    Ok(w)
}

/// Rebuilds a [`ChainMap`] `M → Σ^s N` from a map vector of [`chain_map_space`].
pub fn chain_map_from_vector(
    m: &Arc<SemifreeModule>,
    n: &Arc<SemifreeModule>,
    s: i64,
    space: &HomSpace,
    v: &crate::exactlin::SparseVec,
) -> Result<ChainMap, ModuleError> {
    let columns = space
        .split(v)
        .iter()
        .enumerate()
        .map(|(l, x)| n.free_elem(x, m.degree(l) - s))
        .collect::<Result<Vec<_>, _>>()?;
    ChainMap::new(m.clone(), n.clone(), s, columns)
}
