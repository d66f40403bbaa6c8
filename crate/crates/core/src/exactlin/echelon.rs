use std::collections::BTreeMap;

use super::{Field, LinalgError, Scalar, SparseMatrix, SparseVec};

/// An incrementally built, fully reduced row basis.
///
/// Every stored row has a `1` at its pivot column and `0` at every other
/// pivot column. Pivots are chosen among the admissible entries by smallest
/// height (then smallest column), which keeps rational entries small.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    cols: usize,
    rows: Vec<SparseVec>,
    pivot_row: BTreeMap<usize, usize>,
}

enum Inserted {
    Independent,
    Dependent,
    /// The reduced row only has entries at or beyond the pivot limit.
    Inconsistent,
}

impl Echelon {
    pub fn new(field: Field, cols: usize) -> Self {
        Echelon {
            field,
            cols,
            rows: Vec::new(),
            pivot_row: BTreeMap::new(),
        }
    }

    pub fn from_rows<'a>(
        field: Field,
        cols: usize,
        rows: impl IntoIterator<Item = &'a SparseVec>,
    ) -> Self {
        let mut e = Echelon::new(field, cols);
        for r in rows {
            e.insert(r.clone());
        }
        e
    }

    pub fn of_matrix(m: &SparseMatrix) -> Self {
        Echelon::from_rows(m.field(), m.ncols(), m.rows())
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivot_row.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.cols)
            .filter(|c| !self.pivot_row.contains_key(c))
            .collect()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Row whose pivot is `col`, if any.
    pub fn row_for_pivot(&self, col: usize) -> Option<&SparseVec> {
        self.pivot_row.get(&col).map(|&r| &self.rows[r])
    }

    /// Eliminates every pivot column from `v`.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let hits: Vec<(usize, Scalar)> = v
            .iter()
            .filter(|(c, _)| self.pivot_row.contains_key(c))
            .map(|(c, x)| (c, x.clone()))
            .collect();
        let mut out = v.clone();
        for (c, x) in hits {
            out.add_scaled(&self.rows[self.pivot_row[&c]], &(-x));
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds a row; returns `true` when the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        matches!(self.insert_limited(v, self.cols), Inserted::Independent)
    }

    /// Adds a row, choosing its pivot only among columns `< limit`. Returns
    /// `false` when the reduced row is zero or has no admissible pivot; the
    /// row is then discarded.
    pub fn insert_with_pivot_limit(&mut self, v: SparseVec, limit: usize) -> bool {
        matches!(self.insert_limited(v, limit), Inserted::Independent)
    }

    fn insert_limited(&mut self, v: SparseVec, limit: usize) -> Inserted {
        let v = self.reduce(&v);
        if v.is_zero() {
            return Inserted::Dependent;
        }
        let pivot = v
            .iter()
            .filter(|(c, _)| *c < limit)
            .min_by_key(|(c, x)| (x.height(), *c))
            .map(|(c, x)| (c, x.clone()));
        let Some((p, lead)) = pivot else {
            return Inserted::Inconsistent;
        };
        let v = v.scaled(&lead.inv().expect("pivot is nonzero"));
        for row in self.rows.iter_mut() {
            if let Some(x) = row.get(p).cloned() {
                row.add_scaled(&v, &(-x));
            }
        }
        self.pivot_row.insert(p, self.rows.len());
        self.rows.push(v);
        Inserted::Independent
    }

    /// A basis of the solution space of `row · x = 0` for all stored rows,
    /// one vector per free column (with a `1` there and `0` at other free columns).
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        let mut kernel: BTreeMap<usize, SparseVec> = self
            .free_columns()
            .into_iter()
            .map(|f| (f, SparseVec::unit(f, self.field)))
            .collect();
        for (&p, &r) in &self.pivot_row {
            for (f, x) in self.rows[r].iter() {
                if f != p {
                    if let Some(k) = kernel.get_mut(&f) {
                        k.set(p, -x.clone());
                    }
                }
            }
        }
        kernel.into_values().collect()
    }
}

pub fn rank(m: &SparseMatrix) -> usize {
    Echelon::of_matrix(m).rank()
}

/// A basis of `{x : Mx = 0}`; its size is `cols − rank`.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<SparseVec> {
    Echelon::of_matrix(m).kernel_basis()
}

/// Some `x` with `Mx = b` (free coordinates set to zero), or `None` when inconsistent.
pub fn solve_sparse(m: &SparseMatrix, b: &SparseVec) -> Result<Option<SparseVec>, LinalgError> {
    let n = m.ncols();
    if let Some(max) = b.max_index() {
        if max >= m.nrows() {
            return Err(LinalgError::DimensionMismatch {
                expected: m.nrows(),
                found: max + 1,
            });
        }
    }
    let mut e = Echelon::new(m.field(), n + 1);
    for (i, row) in m.rows().iter().enumerate() {
        let mut aug = row.clone();
        if let Some(x) = b.get(i) {
            aug.set(n, x.clone());
        }
        if let Inserted::Inconsistent = e.insert_limited(aug, n) {
            return Ok(None);
        }
    }
    let mut x = SparseVec::new();
    for (&p, &r) in &e.pivot_row {
        if let Some(val) = e.rows[r].get(n) {
            x.set(p, val.clone());
        }
    }
    if &m.mul_vec(&x) != b {
        return Err(LinalgError::VerificationFailed);
    }
    Ok(Some(x))
}

pub fn solve(m: &SparseMatrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinalgError> {
    if b.len() != m.nrows() {
        return Err(LinalgError::DimensionMismatch {
            expected: m.nrows(),
            found: b.len(),
        });
    }
    Ok(solve_sparse(m, &SparseVec::from_dense(b))?.map(|x| x.to_dense(m.ncols(), m.field())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseMatrix::zeros(q(), 0, 0)), 0);
        assert_eq!(rank(&SparseMatrix::identity(q(), 3)), 3);
        assert_eq!(
            rank(&SparseMatrix::from_dense(q(), &[vec![1, 2], vec![2, 4]])),
            1
        );
    }

    #[test]
    fn solve_examples() {
        let f = q();
        let id = SparseMatrix::identity(f, 2);
        let x = solve(&id, &[f.from_i64(3), f.from_i64(5)])
            .unwrap()
            .unwrap();
        assert_eq!(x, vec![f.from_i64(3), f.from_i64(5)]);

        let row = SparseMatrix::from_dense(f, &[vec![1, 1]]);
        let x = solve(&row, &[f.zero()]).unwrap().unwrap();
        assert_eq!(x, vec![f.zero(), f.zero()]);

        let col = SparseMatrix::from_dense(f, &[vec![1], vec![1]]);
        assert_eq!(solve(&col, &[f.zero(), f.one()]).unwrap(), None);
    }

    #[test]
    fn solve_dimension_mismatch() {
        let f = q();
        let id = SparseMatrix::identity(f, 2);
        assert!(matches!(
            solve(&id, &[f.one()]),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn kernel_examples() {
        let f = q();
        assert!(kernel_basis(&SparseMatrix::identity(f, 3)).is_empty());
        assert_eq!(kernel_basis(&SparseMatrix::zeros(f, 2, 2)).len(), 2);
        let m = SparseMatrix::from_dense(f, &[vec![1, 2], vec![2, 4]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        // proportional to (2, -1)
        let v = k[0].to_dense(2, f);
        assert_eq!(&v[0] + &(&v[1] * &f.from_i64(2)), f.zero());
        assert!(m.mul_vec(&k[0]).is_zero());
    }

    #[test]
    fn prime_field_elimination() {
        let f = Field::Prime(5);
        // rank 1 mod 5, rank 2 over Q
        let m = SparseMatrix::from_dense(f, &[vec![1, 2], vec![3, 6]]);
        assert_eq!(rank(&m), 1);
        let m = SparseMatrix::from_dense(f, &[vec![1, 2], vec![3, 1]]);
        assert_eq!(rank(&m), 1);
        let m = SparseMatrix::from_dense(q(), &[vec![1, 2], vec![3, 1]]);
        assert_eq!(rank(&m), 2);
    }
}
