use std::sync::Arc;

use crate::dgmod::{base_change, ModuleError, SemifreeModule};
use crate::diagonal::Diagonal;
use crate::exactlin::{rank, LinalgError, SparseMatrix};
use crate::homotopy::HomSpace;
use crate::obstruction::Obstruction;

/// `dim 𝔭` computed two ways, with the pieces of the rank identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PIdealDims {
    /// Rank of `Hom_𝒦(N, N|_A ⊗_A B) → End_𝒦(N)`, `g ↦ π_N g`.
    pub via_factorization: usize,
    /// `dim ker(ω·: Γ^0 → Γ^1)`.
    pub via_kernel: usize,
    pub gamma0: usize,
    pub gamma1: usize,
}

impl PIdealDims {
    pub fn holds(&self) -> bool {
        self.via_factorization == self.via_kernel
            && self.via_factorization + self.gamma1 == self.gamma0
    }
}

pub fn p_ideal_dims(
    n: &Arc<SemifreeModule>,
    diag: &Arc<Diagonal>,
) -> Result<PIdealDims, ModuleError> {
    let base = base_change(n)?;
    let through = HomSpace::new(n, base.module.as_ref())?;
    let end = HomSpace::new(n, n.as_ref())?;
    let mut cols = Vec::new();
    for r in through.class_representatives() {
        let images = through
            .split(r)
            .iter()
            .enumerate()
            .map(|(l, v)| Ok(base.pi.matrix(n.degree(l))?.mul_vec(v)))
            .collect::<Result<Vec<_>, ModuleError>>()?;
        cols.push(
            end.class_coords(&end.assemble(&images))
                .ok_or(LinalgError::VerificationFailed)?,
        );
    }
    let via_factorization = rank(&SparseMatrix::from_columns(
        n.algebra_arc().field(),
        end.dim(),
        &cols,
    )?);
    let ob = Obstruction::new(n.clone(), diag.clone())?;
    let act = ob.omega_action_matrix(0, 0)?;
    Ok(PIdealDims {
        via_factorization,
        via_kernel: act.source_dim - act.rank,
        gamma0: act.source_dim,
        gamma1: act.target_dim,
    })
}

/// Rank bookkeeping of `0 → 𝔭 → Γ → Γ[1] → End[1] → 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelSequenceReport {
    pub p: PIdealDims,
    pub end_dim: usize,
    /// Cokernel of `ω·: Γ^{−1} = 0 → Γ^0`.
    pub shifted_cokernel: usize,
    /// `(n, injective, surjective)` for `ω·: Γ^n → Γ^{n+1}`, `1 ≤ n ≤ L−1`.
    pub middle: Vec<(usize, bool, bool)>,
}

impl KernelSequenceReport {
    pub fn holds(&self) -> bool {
        self.p.holds()
            && self.shifted_cokernel == self.end_dim
            && self.middle.iter().all(|&(_, i, s)| i && s)
    }
}

pub fn kernel_sequence_check(
    n: &Arc<SemifreeModule>,
    diag: &Arc<Diagonal>,
    lbound: usize,
) -> Result<KernelSequenceReport, ModuleError> {
    let p = p_ideal_dims(n, diag)?;
    let end_dim = HomSpace::new(n, n.as_ref())?.dim();
    let ob = Obstruction::new(n.clone(), diag.clone())?;
    let shifted_cokernel = ob.gamma_dim(0)? - ob.gamma_dim(-1)?;
    let middle = (1..lbound)
        .map(|k| {
            let a = ob.omega_action_matrix(k, 0)?;
            Ok((k, a.injective(), a.surjective()))
        })
        .collect::<Result<Vec<_>, ModuleError>>()?;
    Ok(KernelSequenceReport {
        p,
        end_dim,
        shifted_cokernel,
        middle,
    })
}
