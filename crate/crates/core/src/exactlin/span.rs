use super::{Echelon, Field, SparseVec};

/// Expresses vectors as combinations of a fixed family `v_1, …, v_k`.
///
/// Rows `(v_i | e_i)` are reduced with pivots confined to the first block, so
/// reducing `(w | 0)` leaves `(0 | −y)` exactly when `w = Σ y_i v_i`.
/// Members of the family that depend on earlier ones get coordinate zero.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    ambient: usize,
    len: usize,
    ech: Echelon,
}

impl SpanSolver {
    pub fn new(field: Field, ambient: usize, family: &[SparseVec]) -> SpanSolver {
        let mut ech = Echelon::new(field, ambient + family.len());
        for (i, v) in family.iter().enumerate() {
            let mut row = v.clone();
            row.set(ambient + i, field.one());
            ech.insert_with_pivot_limit(row, ambient);
        }
        SpanSolver {
            ambient,
            len: family.len(),
            ech,
        }
    }

    /// Number of independent members of the family.
    pub fn rank(&self) -> usize {
        self.ech.rank()
    }

    pub fn contains(&self, w: &SparseVec) -> bool {
        self.coordinates(w).is_some()
    }

    /// Some `y` with `w = Σ y_i v_i`, or `None` if `w` is outside the span.
    pub fn coordinates(&self, w: &SparseVec) -> Option<SparseVec> {
        let r = self.ech.reduce(w);
        if r.iter().any(|(i, _)| i < self.ambient) {
            return None;
        }
        Some(r.slice(self.ambient, self.len).negated())
    }
}
