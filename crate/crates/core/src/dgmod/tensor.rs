use std::sync::Arc;

use super::{Bimodule, BlockLayout, Carrier, ModuleError, SemifreeModule};
use crate::dgalg::{Algebra, Monomial};
use crate::exactlin::SparseVec;

/// `N ⊗_B X` for a semifree `N` and a DG bimodule `X`, with
/// `∂(e_λ⊗x) = Σ_μ e_μ⊗b_{μλ}x + (−1)^{|e_λ|} e_λ⊗∂x`.
///
/// In degree `d` the basis is the concatenation over `λ` of the bases of `X_{d−|e_λ|}`.
#[derive(Clone, Debug)]
pub struct TensorCarrier<X> {
    n: Arc<SemifreeModule>,
    x: X,
}

impl<X: Bimodule> TensorCarrier<X> {
    pub fn new(n: Arc<SemifreeModule>, x: X) -> Self {
        TensorCarrier { n, x }
    }

    pub fn module(&self) -> &Arc<SemifreeModule> {
        &self.n
    }

    pub fn factor(&self) -> &X {
        &self.x
    }

    pub fn layout(&self, d: i64) -> Result<BlockLayout, ModuleError> {
        let sizes = self
            .n
            .degrees()
            .iter()
            .map(|&e| self.x.dim(d - e))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BlockLayout::from_sizes(sizes))
    }

    /// Embeds `e_λ ⊗ v` (with `v ∈ X_{d−|e_λ|}`) into degree-`d` coordinates.
    pub fn embed(&self, d: i64, lambda: usize, v: &SparseVec) -> Result<SparseVec, ModuleError> {
        Ok(v.shifted(self.layout(d)?.start(lambda)))
    }

    /// The `λ`-component of a degree-`d` vector, as a vector of `X_{d−|e_λ|}`.
    pub fn component(
        &self,
        d: i64,
        v: &SparseVec,
        lambda: usize,
    ) -> Result<SparseVec, ModuleError> {
        let layout = self.layout(d)?;
        Ok(v.slice(layout.start(lambda), layout.size(lambda)))
    }
}

impl<X: Bimodule> Carrier for TensorCarrier<X> {
    fn algebra(&self) -> &Algebra {
        self.n.algebra()
    }

    fn dim(&self, d: i64) -> Result<usize, ModuleError> {
        Ok(self.layout(d)?.total())
    }

    fn diff_basis(&self, d: i64, i: usize) -> Result<SparseVec, ModuleError> {
        let layout = self.layout(d)?;
        let out_layout = self.layout(d - 1)?;
        let (lambda, j) = layout.locate(i);
        let xd = d - self.n.degree(lambda);
        let basis_vec = SparseVec::unit(j, self.algebra().field());
        let mut out = SparseVec::new();
        for (&mu, b) in self.n.column(lambda) {
            let bx = self.x.act_left(xd, b, &basis_vec)?;
            out.add_scaled(
                &bx.shifted(out_layout.start(mu)),
                &self.algebra().field().one(),
            );
        }
        let dx = self.x.diff_basis(xd, j)?;
        let sign = self
            .algebra()
            .field()
            .one()
            .signed(self.n.degree(lambda) % 2 != 0);
        out.add_scaled(&dx.shifted(out_layout.start(lambda)), &sign);
        Ok(out)
    }

    fn act_basis(&self, d: i64, i: usize, m: &Monomial) -> Result<SparseVec, ModuleError> {
        let layout = self.layout(d)?;
        let (lambda, j) = layout.locate(i);
        let v = self.x.act_basis(d - self.n.degree(lambda), j, m)?;
        let out_layout = self.layout(d + self.algebra().monomial_degree(m))?;
        Ok(v.shifted(out_layout.start(lambda)))
    }
}
