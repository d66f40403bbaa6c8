//! Naive liftability: the splitting of `π_N: N|_A ⊗_A B → N`, the summand
//! witness extracted from a splitting, the equivalence battery, the ideal
//! `𝔭` with the kernel sequence of `ω·(−)`, and the negative-shift battery.

mod appendix;
mod battery;
mod kernel;

pub use appendix::{appendix_battery, appendix_entry, AppendixEntry};
pub use battery::{naive_lift_battery, Condition, LiftReport, Verdict};
pub use kernel::{kernel_sequence_check, p_ideal_dims, KernelSequenceReport, PIdealDims};

use std::sync::Arc;

use thiserror::Error;

use crate::dgmod::{
    base_change, BaseChange, Carrier, ChainMap, FreeElem, ModuleError, SemifreeModule,
};
use crate::exactlin::{solve_sparse, LinalgError, SparseMatrix, SparseVec};
use crate::homotopy::{verify_chain_map, verify_homotopy, HomSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error(
        "component in degree {degree} is not null-homotopic; the filtration cannot be descended"
    )]
    FiltrationStuck { degree: i64 },
    #[error(transparent)]
    Module(#[from] ModuleError),
}

impl From<LinalgError> for LiftError {
    fn from(e: LinalgError) -> Self {
        LiftError::Module(e.into())
    }
}

/// A strict section `σ` of `π_N`.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub base: BaseChange,
    pub sigma: ChainMap,
}

/// Solves for `σ(e_λ) ∈ (N|_A ⊗_A B)_{|e_λ|}` subject to the chain-map
/// equations and `π_N σ = id_N`. `None` certifies that no section exists.
pub fn splitting_search(n: &Arc<SemifreeModule>) -> Result<Option<Splitting>, ModuleError> {
    let base = base_change(n)?;
    let f = &base.module;
    let field = n.algebra().field();
    let space = HomSpace::new(n, f.as_ref())?;
    let layout = space.map_layout().clone();
    let mut rows: Vec<SparseVec> = space.constraints().rows().to_vec();
    let mut rhs = SparseVec::new();
    for lambda in 0..n.rank() {
        let d = n.degree(lambda);
        let pi = base.pi.matrix(d)?;
        let target = n.generator(lambda)?;
        for r in 0..pi.nrows() {
            if let Some(c) = target.get(r) {
                rhs.set(rows.len(), c.clone());
            }
            rows.push(pi.row(r).shifted(layout.start(lambda)));
        }
    }
    let system = SparseMatrix::from_rows(field, layout.total(), rows)?;
    let Some(x) = solve_sparse(&system, &rhs)? else {
        return Ok(None);
    };
    let images = space.split(&x);
    let columns = images
        .iter()
        .enumerate()
        .map(|(l, v)| f.free_elem(v, n.degree(l)))
        .collect::<Result<Vec<FreeElem>, _>>()?;
    let sigma = ChainMap::new(n.clone(), f.clone(), 0, columns)?;
    if sigma.then(&base.pi)?.columns() != ChainMap::identity(n.clone()).columns() {
        return Err(LinalgError::VerificationFailed.into());
    }
    Ok(Some(Splitting { base, sigma }))
}

/// `N` as a homotopy retract of `B^{⊕m}`: `h∘g − id_N = ∂k + k∂`.
#[derive(Clone, Debug)]
pub struct SummandWitness {
    pub m: usize,
    pub g: ChainMap,
    pub h: ChainMap,
    /// `k(e_λ) ∈ N_{|e_λ|+1}`.
    pub homotopy: Vec<SparseVec>,
}

impl SummandWitness {
    /// Recomputes `h∘g − id` and compares with `∂k + k∂`.
    pub fn recheck(&self) -> Result<bool, ModuleError> {
        let n = self.g.source();
        let field = n.algebra().field();
        let hg = self.g.then(&self.h)?.images()?;
        let id = ChainMap::identity(n.clone()).images()?;
        let diff: Vec<SparseVec> = hg
            .iter()
            .zip(&id)
            .map(|(a, b)| {
                let mut a = a.clone();
                a.add_scaled(b, &-field.one());
                a
            })
            .collect();
        verify_homotopy(n, n.as_ref(), &diff, &self.homotopy)
    }
}

/// Descends a section `σ: N → F = N|_A ⊗_A B` along the filtration of `F`
/// by generator degree. At each top degree `r ≥ 1` the component of `σ` in
/// `Σ^r B^{⊕n_r}` is a chain map; a null-homotopy of it is lifted to `F`
/// and its boundary subtracted from `σ`. What remains lands on the degree-0
/// generators, a copy of `B^{⊕m}`.
pub fn summand_witness(
    n: &Arc<SemifreeModule>,
    split: &Splitting,
) -> Result<SummandWitness, LiftError> {
    let alg = n.algebra_arc().clone();
    let field = alg.field();
    let f = &split.base.module;
    let mut sigma = split.sigma.images()?;
    let mut total_h: Vec<SparseVec> = vec![SparseVec::new(); n.rank()];
    let top = f.max_degree().unwrap_or(0);
    for r in (1..=top).rev() {
        let gens: Vec<usize> = (0..f.rank()).filter(|&g| f.degree(g) == r).collect();
        if gens.is_empty() {
            continue;
        }
        let q = SemifreeModule::free(alg.clone(), &vec![r; gens.len()]);
        // q∘σ: pick out the degree-r generator blocks.
        let qs: Vec<SparseVec> = (0..n.rank())
            .map(|l| restrict_blocks(f, &q, &gens, n.degree(l), &sigma[l]))
            .collect::<Result<_, _>>()?;
        if qs.iter().all(SparseVec::is_zero) {
            continue;
        }
        let space = HomSpace::new(n, &q)?;
        let Some(w) = space.null_homotopy(&space.assemble(&qs))? else {
            return Err(LiftError::FiltrationStuck { degree: r });
        };
        let lifted: Vec<SparseVec> = (0..n.rank())
            .map(|l| extend_blocks(f, &q, &gens, n.degree(l) + 1, &w.images[l]))
            .collect::<Result<_, _>>()?;
        for lambda in 0..n.rank() {
            let d = n.degree(lambda);
            let mut c = f.diff(d + 1, &lifted[lambda])?;
            for (&mu, b) in n.column(lambda) {
                c.add_scaled(&f.act(n.degree(mu) + 1, &lifted[mu], b)?, &field.one());
            }
            sigma[lambda].add_scaled(&c, &-field.one());
            total_h[lambda].add_scaled(&lifted[lambda], &field.one());
        }
        for (l, s) in sigma.iter().enumerate() {
            if !restrict_blocks(f, &q, &gens, n.degree(l), s)?.is_zero() {
                return Err(LinalgError::VerificationFailed.into());
            }
        }
    }
    if !verify_chain_map(n, f.as_ref(), &sigma)? {
        return Err(LinalgError::VerificationFailed.into());
    }
    let bottom: Vec<usize> = (0..f.rank()).filter(|&g| f.degree(g) == 0).collect();
    if (0..f.rank()).any(|g| f.degree(g) < 0) {
        return Err(LiftError::FiltrationStuck {
            degree: f.min_degree().unwrap_or(0),
        });
    }
    let free = Arc::new(SemifreeModule::free(alg.clone(), &vec![0; bottom.len()]));
    let g_cols = (0..n.rank())
        .map(|l| {
            let v = restrict_blocks(f, free.as_ref(), &bottom, n.degree(l), &sigma[l])?;
            free.free_elem(&v, n.degree(l))
        })
        .collect::<Result<Vec<_>, ModuleError>>()?;
    let g = ChainMap::new(n.clone(), free.clone(), 0, g_cols)?;
    let h_cols = bottom
        .iter()
        .map(|&gen| split.base.pi.column(gen).clone())
        .collect();
    let h = ChainMap::new(free.clone(), n.clone(), 0, h_cols)?;
    let homotopy = (0..n.rank())
        .map(|l| {
            let d = n.degree(l) + 1;
            Ok(split.base.pi.matrix(d)?.mul_vec(&total_h[l]).negated())
        })
        .collect::<Result<Vec<_>, ModuleError>>()?;
    let witness = SummandWitness {
        m: bottom.len(),
        g,
        h,
        homotopy,
    };
    if !witness.recheck()? {
        return Err(LinalgError::VerificationFailed.into());
    }
    Ok(witness)
}

/// Coordinates of `F_d` restricted to the blocks `gens`, laid out as `Q_d`.
fn restrict_blocks(
    f: &SemifreeModule,
    q: &SemifreeModule,
    gens: &[usize],
    d: i64,
    v: &SparseVec,
) -> Result<SparseVec, ModuleError> {
    let (fl, ql) = (f.layout(d)?, q.layout(d)?);
    let mut out = SparseVec::new();
    for (j, &g) in gens.iter().enumerate() {
        out.add_scaled(
            &v.slice(fl.start(g), fl.size(g)).shifted(ql.start(j)),
            &f.algebra().field().one(),
        );
    }
    Ok(out)
}

/// Inverse of [`restrict_blocks`]: places `Q_d` coordinates into the blocks `gens` of `F_d`.
fn extend_blocks(
    f: &SemifreeModule,
    q: &SemifreeModule,
    gens: &[usize],
    d: i64,
    v: &SparseVec,
) -> Result<SparseVec, ModuleError> {
    let (fl, ql) = (f.layout(d)?, q.layout(d)?);
    let mut out = SparseVec::new();
    for (j, &g) in gens.iter().enumerate() {
        out.add_scaled(
            &v.slice(ql.start(j), ql.size(j)).shifted(fl.start(g)),
            &f.algebra().field().one(),
        );
    }
    Ok(out)
}
