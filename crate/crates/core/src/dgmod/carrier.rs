use std::sync::Arc;

use super::ModuleError;
use crate::dgalg::{Algebra, Element, Monomial};
use crate::exactlin::{rank, SparseMatrix, SparseVec};

/// A degreewise finite right DG `B`-module, presented by a k-basis in each degree.
///
/// Vectors are coordinates in the basis of the stated degree. The differential
/// lowers degree by one; acting by a monomial `m` raises it by `|m|`.
pub trait Carrier {
    fn algebra(&self) -> &Algebra;

    fn dim(&self, d: i64) -> Result<usize, ModuleError>;

    fn diff_basis(&self, d: i64, i: usize) -> Result<SparseVec, ModuleError>;

    /// `(basis vector i of degree d) · m`.
    fn act_basis(&self, d: i64, i: usize, m: &Monomial) -> Result<SparseVec, ModuleError>;

    fn diff(&self, d: i64, v: &SparseVec) -> Result<SparseVec, ModuleError> {
        let mut out = SparseVec::new();
        for (i, c) in v.iter() {
            out.add_scaled(&self.diff_basis(d, i)?, c);
        }
        Ok(out)
    }

    fn act(&self, d: i64, v: &SparseVec, b: &Element) -> Result<SparseVec, ModuleError> {
        let mut out = SparseVec::new();
        for (i, c) in v.iter() {
            for (m, x) in b.terms() {
                out.add_scaled(&self.act_basis(d, i, m)?, &(c * x));
            }
        }
        Ok(out)
    }

    /// Matrix of `∂: C_d → C_{d−1}` with rows indexed by the target basis.
    fn diff_matrix(&self, d: i64) -> Result<SparseMatrix, ModuleError> {
        let cols = (0..self.dim(d)?)
            .map(|i| self.diff_basis(d, i))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SparseMatrix::from_columns(
            self.algebra().field(),
            self.dim(d - 1)?,
            &cols,
        )?)
    }
}

/// A carrier that is also a left DG `B`-module (a DG bimodule).
pub trait Bimodule: Carrier {
    /// `m · (basis vector i of degree d)`.
    fn act_left_basis(&self, d: i64, i: usize, m: &Monomial) -> Result<SparseVec, ModuleError>;

    fn act_left(&self, d: i64, b: &Element, v: &SparseVec) -> Result<SparseVec, ModuleError> {
        let mut out = SparseVec::new();
        for (i, c) in v.iter() {
            for (m, x) in b.terms() {
                out.add_scaled(&self.act_left_basis(d, i, m)?, &(c * x));
            }
        }
        Ok(out)
    }
}

macro_rules! forward_carrier {
    ($ty:ty) => {
        impl<C: Carrier + ?Sized> Carrier for $ty {
            fn algebra(&self) -> &Algebra {
                (**self).algebra()
            }
            fn dim(&self, d: i64) -> Result<usize, ModuleError> {
                (**self).dim(d)
            }
            fn diff_basis(&self, d: i64, i: usize) -> Result<SparseVec, ModuleError> {
                (**self).diff_basis(d, i)
            }
            fn act_basis(&self, d: i64, i: usize, m: &Monomial) -> Result<SparseVec, ModuleError> {
                (**self).act_basis(d, i, m)
            }
        }
        impl<C: Bimodule + ?Sized> Bimodule for $ty {
            fn act_left_basis(
                &self,
                d: i64,
                i: usize,
                m: &Monomial,
            ) -> Result<SparseVec, ModuleError> {
                (**self).act_left_basis(d, i, m)
            }
        }
    };
}

forward_carrier!(&C);
forward_carrier!(Arc<C>);
forward_carrier!(Box<C>);

/// Consecutive blocks of a direct sum; block `b` occupies `starts[b]..starts[b+1]`.
#[derive(Clone, Debug)]
pub struct BlockLayout {
    starts: Vec<usize>,
}

impl BlockLayout {
    pub fn from_sizes(sizes: impl IntoIterator<Item = usize>) -> BlockLayout {
        let mut starts = vec![0];
        for s in sizes {
            starts.push(starts.last().unwrap() + s);
        }
        BlockLayout { starts }
    }

    pub fn total(&self) -> usize {
        *self.starts.last().unwrap()
    }

    pub fn blocks(&self) -> usize {
        self.starts.len() - 1
    }

    pub fn start(&self, block: usize) -> usize {
        self.starts[block]
    }

    pub fn size(&self, block: usize) -> usize {
        self.starts[block + 1] - self.starts[block]
    }

    /// `(block, offset within block)` for a global index.
    pub fn locate(&self, i: usize) -> (usize, usize) {
        let b = self.starts.partition_point(|&s| s <= i) - 1;
        (b, i - self.starts[b])
    }
}

/// `Σ^s C`: degrees raised by `s`, differential multiplied by `(−1)^s`, right
/// action unchanged, left action twisted by `(−1)^{s|b|}`.
#[derive(Clone, Debug)]
pub struct Shifted<C> {
    pub inner: C,
    pub shift: i64,
}

impl<C> Shifted<C> {
    pub fn new(inner: C, shift: i64) -> Self {
        Shifted { inner, shift }
    }
}

impl<C: Carrier> Carrier for Shifted<C> {
    fn algebra(&self) -> &Algebra {
        self.inner.algebra()
    }
    fn dim(&self, d: i64) -> Result<usize, ModuleError> {
        self.inner.dim(d - self.shift)
    }
    fn diff_basis(&self, d: i64, i: usize) -> Result<SparseVec, ModuleError> {
        let v = self.inner.diff_basis(d - self.shift, i)?;
        Ok(if self.shift % 2 == 0 { v } else { v.negated() })
    }
    fn act_basis(&self, d: i64, i: usize, m: &Monomial) -> Result<SparseVec, ModuleError> {
        self.inner.act_basis(d - self.shift, i, m)
    }
}

impl<C: Bimodule> Bimodule for Shifted<C> {
    fn act_left_basis(&self, d: i64, i: usize, m: &Monomial) -> Result<SparseVec, ModuleError> {
        let v = self.inner.act_left_basis(d - self.shift, i, m)?;
        let odd = self.shift % 2 != 0 && self.algebra().monomial_degree(m) % 2 != 0;
        Ok(if odd { v.negated() } else { v })
    }
}

/// `B` as a DG bimodule over itself.
#[derive(Clone, Debug)]
pub struct AlgebraCarrier(pub Arc<Algebra>);

impl Carrier for AlgebraCarrier {
    fn algebra(&self) -> &Algebra {
        &self.0
    }
    fn dim(&self, d: i64) -> Result<usize, ModuleError> {
        Ok(self.0.dim(d)?)
    }
    fn diff_basis(&self, d: i64, i: usize) -> Result<SparseVec, ModuleError> {
        let m = &self.0.basis(d)?[i];
        self.0.check_degree(d - 1)?;
        Ok(self.0.to_vec(&self.0.diff_monomial(m)))
    }
    fn act_basis(&self, d: i64, i: usize, m: &Monomial) -> Result<SparseVec, ModuleError> {
        let u = &self.0.basis(d)?[i];
        self.0.check_degree(d + self.0.monomial_degree(m))?;
        Ok(match self.0.mul_monomials(u, m) {
            Some((neg, w)) => SparseVec::unit(self.0.index_of(&w).unwrap(), self.0.field())
                .scaled(&self.0.field().one().signed(neg)),
            None => SparseVec::new(),
        })
    }
}

impl Bimodule for AlgebraCarrier {
    fn act_left_basis(&self, d: i64, i: usize, m: &Monomial) -> Result<SparseVec, ModuleError> {
        let u = &self.0.basis(d)?[i];
        self.0.check_degree(d + self.0.monomial_degree(m))?;
        Ok(match self.0.mul_monomials(m, u) {
            Some((neg, w)) => SparseVec::unit(self.0.index_of(&w).unwrap(), self.0.field())
                .scaled(&self.0.field().one().signed(neg)),
            None => SparseVec::new(),
        })
    }
}

/// `dim_k H_d(C)`.
pub fn homology_dim(c: &dyn Carrier, d: i64) -> Result<usize, ModuleError> {
    let out = c.diff_matrix(d)?;
    let incoming = c.diff_matrix(d + 1)?;
    Ok(c.dim(d)? - rank(&out) - rank(&incoming))
}
