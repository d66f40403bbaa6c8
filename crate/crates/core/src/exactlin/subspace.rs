use std::collections::BTreeMap;

use super::{Echelon, Field, SparseMatrix, SparseVec};

/// A subspace of `k^n` given by the kernel of a matrix, with a basis read off
/// the free columns: every member `v` equals `Σ_f v[f]·k_f`.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<SparseVec>,
    free_pos: BTreeMap<usize, usize>,
}

impl Subspace {
    /// `{x : Mx = 0}`.
    pub fn kernel_of(m: &SparseMatrix) -> Subspace {
        Self::kernel_of_rows(m.field(), m.ncols(), m.rows())
    }

    pub fn kernel_of_rows<'a>(
        field: Field,
        ambient: usize,
        rows: impl IntoIterator<Item = &'a SparseVec>,
    ) -> Subspace {
        let e = Echelon::from_rows(field, ambient, rows);
        let free = e.free_columns();
        let basis = e.kernel_basis();
        let free_pos = free.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        Subspace {
            ambient,
            basis,
            free_pos,
        }
    }

    /// The whole ambient space.
    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| SparseVec::unit(i, field)).collect(),
            free_pos: (0..ambient).map(|i| (i, i)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    /// Coordinates of a member of the subspace. Membership is not checked.
    pub fn coordinates(&self, v: &SparseVec) -> SparseVec {
        v.iter()
            .filter_map(|(i, x)| self.free_pos.get(&i).map(|&j| (j, x.clone())))
            .collect()
    }

    /// Coordinates of `v`, or `None` if it lies outside the subspace.
    pub fn checked_coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        let c = self.coordinates(v);
        (self.expand(&c) == *v).then_some(c)
    }

    /// The ambient vector with the given coordinates.
    pub fn expand(&self, coords: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, x) in coords.iter() {
            out.add_scaled(&self.basis[j], x);
        }
        out
    }
}
