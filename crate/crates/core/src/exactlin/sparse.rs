use std::collections::BTreeMap;

use super::{Field, LinalgError, Scalar};

/// A sparse vector over the coefficient field. No stored entry is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: BTreeMap<usize, Scalar>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(index: usize, field: Field) -> Self {
        let mut v = Self::new();
        v.entries.insert(index, field.one());
        v
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        let mut v = Self::new();
        for (i, x) in values.iter().enumerate() {
            v.set(i, x.clone());
        }
        v
    }

    pub fn to_dense(&self, len: usize, field: Field) -> Vec<Scalar> {
        let mut out = vec![field.zero(); len];
        for (&i, x) in &self.entries {
            out[i] = x.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&Scalar> {
        self.entries.get(&index)
    }

    pub fn set(&mut self, index: usize, value: Scalar) {
        if value.is_zero() {
            self.entries.remove(&index);
        } else {
            self.entries.insert(index, value);
        }
    }

    /// `self[index] += value`
    pub fn add_at(&mut self, index: usize, value: &Scalar) {
        if value.is_zero() {
            return;
        }
        match self.entries.get_mut(&index) {
            Some(existing) => {
                let sum = &*existing + value;
                if sum.is_zero() {
                    self.entries.remove(&index);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.entries.insert(index, value.clone());
            }
        }
    }

    /// `self += factor * other`
    pub fn add_scaled(&mut self, other: &SparseVec, factor: &Scalar) {
        if factor.is_zero() {
            return;
        }
        for (&i, x) in &other.entries {
            self.add_at(i, &(x * factor));
        }
    }

    pub fn scaled(&self, factor: &Scalar) -> SparseVec {
        if factor.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(&i, x)| (i, x * factor)).collect(),
        }
    }

    pub fn negated(&self) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(&i, x)| (i, -x.clone())).collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.entries.iter().map(|(&i, x)| (i, x))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.keys().next_back().copied()
    }

    /// Reindexes every entry by `offset + i`.
    pub fn shifted(&self, offset: usize) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(&i, x)| (i + offset, x.clone()))
                .collect(),
        }
    }

    /// Entries with index in `start..start + len`, reindexed from zero.
    pub fn slice(&self, start: usize, len: usize) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .range(start..start + len)
                .map(|(&i, x)| (i - start, x.clone()))
                .collect(),
        }
    }
}

impl FromIterator<(usize, Scalar)> for SparseVec {
    fn from_iter<I: IntoIterator<Item = (usize, Scalar)>>(iter: I) -> Self {
        let mut v = SparseVec::new();
        for (i, x) in iter {
            v.add_at(i, &x);
        }
        v
    }
}

/// A sparse matrix stored row-wise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    field: Field,
    cols: usize,
    rows: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        SparseMatrix {
            field,
            cols,
            rows: vec![SparseVec::new(); rows],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.rows[i] = SparseVec::unit(i, field);
        }
        m
    }

    pub fn from_rows(field: Field, cols: usize, rows: Vec<SparseVec>) -> Result<Self, LinalgError> {
        for row in &rows {
            if let Some(max) = row.max_index() {
                if max >= cols {
                    return Err(LinalgError::IndexOutOfBounds {
                        index: max,
                        bound: cols,
                    });
                }
            }
        }
        Ok(SparseMatrix { field, cols, rows })
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(
        field: Field,
        rows: usize,
        columns: &[SparseVec],
    ) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col.iter() {
                if i >= rows {
                    return Err(LinalgError::IndexOutOfBounds {
                        index: i,
                        bound: rows,
                    });
                }
                m.rows[i].set(j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn from_dense(field: Field, data: &[Vec<i64>]) -> Self {
        let cols = data.first().map_or(0, |r| r.len());
        let rows = data
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .map(|(j, &x)| (j, field.from_i64(x)))
                    .collect()
            })
            .collect();
        SparseMatrix { field, cols, rows }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.rows[i]
            .get(j)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        assert!(
            i < self.nrows() && j < self.cols,
            "matrix index out of bounds"
        );
        self.rows[i].set(j, value);
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(SparseVec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(SparseVec::is_zero)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = SparseMatrix::zeros(self.field, self.cols, self.nrows());
        for (i, row) in self.rows.iter().enumerate() {
            for (j, x) in row.iter() {
                t.rows[j].set(i, x.clone());
            }
        }
        t
    }

    pub fn column(&self, j: usize) -> SparseVec {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.get(j).map(|x| (i, x.clone())))
            .collect()
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc = self.field.zero();
            for (j, x) in row.iter() {
                if let Some(y) = v.get(j) {
                    acc = &acc + &(x * y);
                }
            }
            out.set(i, acc);
        }
        out
    }

    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        if self.cols != other.nrows() {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.nrows(),
            });
        }
        let mut out = SparseMatrix::zeros(self.field, self.nrows(), other.cols);
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc = SparseVec::new();
            for (k, x) in row.iter() {
                acc.add_scaled(&other.rows[k], x);
            }
            out.rows[i] = acc;
        }
        Ok(out)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(SparseMatrix {
            field: self.field,
            cols: self.cols,
            rows,
        })
    }
}
