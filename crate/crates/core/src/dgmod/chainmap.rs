use std::sync::Arc;

use super::semifree::free_add;
use super::Carrier;
use super::{FreeElem, ModuleError, SemifreeModule};
use crate::exactlin::{SparseMatrix, SparseVec};

/// A right `B`-linear chain map `N → Σ^s M`, stored as the images
/// `f(e_λ) = Σ_μ e'_μ·f_{μλ}` of the source basis.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: Arc<SemifreeModule>,
    target: Arc<SemifreeModule>,
    shift: i64,
    columns: Vec<FreeElem>,
}

impl ChainMap {
    /// Validates entry degrees and `∂^{Σ^s M} f = f ∂^N`.
    pub fn new(
        source: Arc<SemifreeModule>,
        target: Arc<SemifreeModule>,
        shift: i64,
        columns: Vec<FreeElem>,
    ) -> Result<ChainMap, ModuleError> {
        if !Arc::ptr_eq(source.algebra_arc(), target.algebra_arc()) {
            return Err(ModuleError::AlgebraMismatch);
        }
        if columns.len() != source.rank() {
            return Err(ModuleError::InvalidChainMap {
                column: String::new(),
                reason: format!("expected {} images, found {}", source.rank(), columns.len()),
            });
        }
        let alg = source.algebra_arc().clone();
        for (lambda, col) in columns.iter().enumerate() {
            for (&mu, b) in col {
                if mu >= target.rank() {
                    return Err(ModuleError::UnknownBasis(format!("#{mu}")));
                }
                let want = source.degree(lambda) - shift - target.degree(mu);
                if b.terms().any(|(m, _)| alg.monomial_degree(m) != want) {
                    return Err(ModuleError::InvalidChainMap {
                        column: source.name(lambda).to_string(),
                        reason: format!(
                            "coefficient of `{}` has the wrong degree",
                            target.name(mu)
                        ),
                    });
                }
            }
        }
        let f = ChainMap {
            source,
            target,
            shift,
            columns,
        };
        for lambda in 0..f.source.rank() {
            let mut lhs = f.target.diff_free(&f.columns[lambda]);
            if shift % 2 != 0 {
                lhs = lhs.into_iter().map(|(k, b)| (k, b.negated())).collect();
            }
            let rhs = f.apply_free(f.source.column(lambda));
            if lhs != rhs {
                return Err(ModuleError::InvalidChainMap {
                    column: f.source.name(lambda).to_string(),
                    reason: "does not commute with the differentials".into(),
                });
            }
        }
        Ok(f)
    }

    pub fn zero(source: Arc<SemifreeModule>, target: Arc<SemifreeModule>, shift: i64) -> ChainMap {
        let columns = vec![FreeElem::new(); source.rank()];
        ChainMap {
            source,
            target,
            shift,
            columns,
        }
    }

    pub fn identity(n: Arc<SemifreeModule>) -> ChainMap {
        let alg = n.algebra_arc().clone();
        let columns = (0..n.rank())
            .map(|i| FreeElem::from([(i, alg.one())]))
            .collect();
        ChainMap {
            source: n.clone(),
            target: n,
            shift: 0,
            columns,
        }
    }

    pub fn source(&self) -> &Arc<SemifreeModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SemifreeModule> {
        &self.target
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn column(&self, lambda: usize) -> &FreeElem {
        &self.columns[lambda]
    }

    pub fn columns(&self) -> &[FreeElem] {
        &self.columns
    }

    /// `f(Σ e_λ b_λ) = Σ f(e_λ)·b_λ`.
    pub fn apply_free(&self, x: &FreeElem) -> FreeElem {
        let alg = self.source.algebra_arc();
        let mut out = FreeElem::new();
        for (&lambda, b) in x {
            for (&mu, c) in &self.columns[lambda] {
                free_add(&mut out, mu, &alg.mul_unchecked(c, b));
            }
        }
        out
    }

    /// Images of the source basis in coordinates of `Σ^s M` (degree `|e_λ|`).
    pub fn images(&self) -> Result<Vec<SparseVec>, ModuleError> {
        (0..self.source.rank())
            .map(|l| {
                self.target
                    .coords(&self.columns[l], self.source.degree(l) - self.shift)
            })
            .collect()
    }

    /// `g ∘ f` for `g: M → Σ^t P`; the result maps into `Σ^{s+t} P`.
    pub fn then(&self, g: &ChainMap) -> Result<ChainMap, ModuleError> {
        if !Arc::ptr_eq(&self.target, &g.source) && self.target.names() != g.source.names() {
            return Err(ModuleError::AlgebraMismatch);
        }
        let columns = self.columns.iter().map(|c| g.apply_free(c)).collect();
        Ok(ChainMap {
            source: self.source.clone(),
            target: g.target.clone(),
            shift: self.shift + g.shift,
            columns,
        })
    }

    /// Matrix of `f: N_d → M_{d−s}` in the monomial bases.
    pub fn matrix(&self, d: i64) -> Result<SparseMatrix, ModuleError> {
        let alg = self.source.algebra_arc();
        let layout = self.source.layout(d)?;
        let mut cols = Vec::with_capacity(layout.total());
        for lambda in 0..self.source.rank() {
            for m in alg.basis(d - self.source.degree(lambda))? {
                let x = FreeElem::from([(lambda, alg.monomial_element(m))]);
                cols.push(self.target.coords(&self.apply_free(&x), d - self.shift)?);
            }
        }
        Ok(SparseMatrix::from_columns(
            alg.field(),
            self.target.dim(d - self.shift)?,
            &cols,
        )?)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(FreeElem::is_empty)
    }
}
