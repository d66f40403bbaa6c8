use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use super::BarSpace;
use crate::dgalg::{Algebra, Monomial};
use crate::dgmod::{Bimodule, Carrier, ModuleError};
use crate::exactlin::{LinalgError, SparseMatrix, SparseVec, Subspace};

/// `⋂_{i∈S} ker μ_i ⊂ E_n`, a sub-bimodule of the bar space.
///
/// With `S = {1,…,n}` this is `J^{⊗_B n}`; with `S = {2,…,n}` it is
/// `B ⊗_A J^{⊗_B (n−1)}`.
#[derive(Debug)]
pub struct BarSubspace {
    bar: Arc<BarSpace>,
    lower: Option<Arc<BarSpace>>,
    cuts: BTreeSet<usize>,
    cache: Mutex<HashMap<i64, Arc<Subspace>>>,
}

impl BarSubspace {
    pub fn new(
        bar: Arc<BarSpace>,
        lower: Option<Arc<BarSpace>>,
        cuts: impl IntoIterator<Item = usize>,
    ) -> BarSubspace {
        let cuts: BTreeSet<usize> = cuts.into_iter().collect();
        assert!(cuts.iter().all(|&i| i >= 1 && i <= bar.slots()));
        assert!(cuts.is_empty() || lower.as_ref().is_some_and(|l| l.slots() + 1 == bar.slots()));
        BarSubspace {
            bar,
            lower,
            cuts,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn bar(&self) -> &Arc<BarSpace> {
        &self.bar
    }

    pub fn cuts(&self) -> &BTreeSet<usize> {
        &self.cuts
    }

    pub fn subspace(&self, d: i64) -> Result<Arc<Subspace>, ModuleError> {
        if let Some(s) = self.cache.lock().unwrap().get(&d) {
            return Ok(s.clone());
        }
        let field = self.bar.algebra().field();
        let ambient = self.bar.dim(d)?;
        let sub = if self.cuts.is_empty() {
            Subspace::full(field, ambient)
        } else {
            let lower = self.lower.as_ref().unwrap();
            let mut rows = Vec::new();
            for &i in &self.cuts {
                let m: SparseMatrix = self.bar.multiply_adjacent_matrix(lower, i, d)?;
                rows.extend(m.rows().iter().cloned());
            }
            Subspace::kernel_of_rows(field, ambient, &rows)
        };
        let sub = Arc::new(sub);
        self.cache.lock().unwrap().insert(d, sub.clone());
        Ok(sub)
    }

    /// The ambient `E_n` vector of a subspace coordinate vector.
    pub fn expand(&self, d: i64, v: &SparseVec) -> Result<SparseVec, ModuleError> {
        Ok(self.subspace(d)?.expand(v))
    }

    /// Subspace coordinates of an ambient vector, failing if it lies outside.
    pub fn restrict(&self, d: i64, v: &SparseVec) -> Result<SparseVec, ModuleError> {
        self.subspace(d)?
            .checked_coordinates(v)
            .ok_or_else(|| LinalgError::VerificationFailed.into())
    }
}

impl Carrier for BarSubspace {
    fn algebra(&self) -> &Algebra {
        self.bar.algebra()
    }

    fn dim(&self, d: i64) -> Result<usize, ModuleError> {
        Ok(self.subspace(d)?.dim())
    }

    fn diff_basis(&self, d: i64, i: usize) -> Result<SparseVec, ModuleError> {
        let v = self.bar.diff(d, &self.subspace(d)?.basis()[i])?;
        self.restrict(d - 1, &v)
    }

    fn act_basis(&self, d: i64, i: usize, m: &Monomial) -> Result<SparseVec, ModuleError> {
        let v = self.bar.act(
            d,
            &self.subspace(d)?.basis()[i],
            &self.algebra().monomial_element(m),
        )?;
        self.restrict(d + self.algebra().monomial_degree(m), &v)
    }
}

impl Bimodule for BarSubspace {
    fn act_left_basis(&self, d: i64, i: usize, m: &Monomial) -> Result<SparseVec, ModuleError> {
        let v = self.bar.act_left(
            d,
            &self.algebra().monomial_element(m),
            &self.subspace(d)?.basis()[i],
        )?;
        self.restrict(d + self.algebra().monomial_degree(m), &v)
    }
}
