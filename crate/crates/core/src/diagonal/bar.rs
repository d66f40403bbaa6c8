use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::dgalg::{Algebra, Monomial};
use crate::dgmod::{Bimodule, Carrier, ModuleError};
use crate::exactlin::{Scalar, SparseMatrix, SparseVec};

/// One degree of `E_n`: normal-form tuples and their positions.
#[derive(Debug)]
pub struct BarDegree {
    pub basis: Vec<Vec<Monomial>>,
    index: HashMap<Vec<Monomial>, usize>,
}

impl BarDegree {
    pub fn index_of(&self, t: &[Monomial]) -> Option<usize> {
        self.index.get(t).copied()
    }
}

/// `E_n = B ⊗_A ⋯ ⊗_A B` with `n + 1` factors, as a DG `B`-bimodule.
///
/// Basis tuples `w_1 ⊗ ⋯ ⊗ w_n ⊗ m` have non-`A` monomials `w_i` in the first
/// `n` slots and any monomial `m` last; `A`-parts are pushed to the right.
/// `E_0 = B` and `E_1 = B^e`.
#[derive(Debug)]
pub struct BarSpace {
    alg: Arc<Algebra>,
    n: usize,
    cache: Mutex<HashMap<i64, Arc<BarDegree>>>,
}

impl BarSpace {
    pub fn new(alg: Arc<Algebra>, n: usize) -> BarSpace {
        BarSpace {
            alg,
            n,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn algebra_arc(&self) -> &Arc<Algebra> {
        &self.alg
    }

    /// Number of bar slots `n`; tuples have `n + 1` factors.
    pub fn slots(&self) -> usize {
        self.n
    }

    pub fn degree(&self, d: i64) -> Result<Arc<BarDegree>, ModuleError> {
        if let Some(g) = self.cache.lock().unwrap().get(&d) {
            return Ok(g.clone());
        }
        let mut basis = Vec::new();
        if d >= 0 {
            self.alg.check_degree(d)?;
            let mut cur = Vec::with_capacity(self.n + 1);
            self.enumerate(0, d, &mut cur, &mut basis)?;
        }
        let index = basis
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        let g = Arc::new(BarDegree { basis, index });
        self.cache.lock().unwrap().insert(d, g.clone());
        Ok(g)
    }

    fn enumerate(
        &self,
        slot: usize,
        left: i64,
        cur: &mut Vec<Monomial>,
        out: &mut Vec<Vec<Monomial>>,
    ) -> Result<(), ModuleError> {
        if slot == self.n {
            for m in self.alg.basis(left)? {
                let mut t = cur.clone();
                t.push(m.clone());
                out.push(t);
            }
            return Ok(());
        }
        for e in 0..=left {
            for w in self.alg.non_a_basis(e)? {
                cur.push(w.clone());
                self.enumerate(slot + 1, left - e, cur, out)?;
                cur.pop();
            }
        }
        Ok(())
    }

    /// Brings an arbitrary tuple to normal form: `±` the normal tuple, or `None` if it vanishes.
    pub fn normalize(&self, mut t: Vec<Monomial>) -> Option<(bool, Vec<Monomial>)> {
        let mut neg = false;
        for i in 0..t.len() - 1 {
            let (a, w) = self.alg.split_a(&t[i]);
            if a.is_one() {
                continue;
            }
            // a·w = (−1)^{|a||w|} w·a, then a moves into the next factor.
            if self.alg.monomial_degree(&a) % 2 != 0 && self.alg.monomial_degree(&w) % 2 != 0 {
                neg = !neg;
            }
            let (s, next) = self.alg.mul_monomials(&a, &t[i + 1])?;
            neg ^= s;
            t[i] = w;
            t[i + 1] = next;
        }
        Some((neg, t))
    }

    fn tuple_degree(&self, t: &[Monomial]) -> i64 {
        t.iter().map(|m| self.alg.monomial_degree(m)).sum()
    }

    /// Adds `c·t` (any tuple of total degree `d`) to `v`.
    pub fn add_tuple(
        &self,
        v: &mut SparseVec,
        d: i64,
        t: Vec<Monomial>,
        c: &Scalar,
    ) -> Result<(), ModuleError> {
        if let Some((neg, t)) = self.normalize(t) {
            let g = self.degree(d)?;
            let i = g.index_of(&t).expect("normal tuple of the stated degree");
            v.add_at(i, &c.clone().signed(neg));
        }
        Ok(())
    }

    /// Coordinates of a single tuple.
    pub fn tuple_vector(&self, t: Vec<Monomial>) -> Result<SparseVec, ModuleError> {
        let d = self.tuple_degree(&t);
        let mut v = SparseVec::new();
        self.add_tuple(&mut v, d, t, &self.alg.field().one())?;
        Ok(v)
    }

    /// `μ_i`: multiplies factors `i` and `i + 1` (1-based), mapping `E_n → E_{n−1}`.
    pub fn multiply_adjacent(
        &self,
        lower: &BarSpace,
        i: usize,
        d: i64,
        v: &SparseVec,
    ) -> Result<SparseVec, ModuleError> {
        assert!(i >= 1 && i <= self.n && lower.n + 1 == self.n);
        let g = self.degree(d)?;
        let mut out = SparseVec::new();
        for (j, c) in v.iter() {
            let t = &g.basis[j];
            if let Some((neg, m)) = self.alg.mul_monomials(&t[i - 1], &t[i]) {
                let mut u: Vec<Monomial> = t[..i - 1].to_vec();
                u.push(m);
                u.extend_from_slice(&t[i + 1..]);
                lower.add_tuple(&mut out, d, u, &c.clone().signed(neg))?;
            }
        }
        Ok(out)
    }

    pub fn multiply_adjacent_matrix(
        &self,
        lower: &BarSpace,
        i: usize,
        d: i64,
    ) -> Result<SparseMatrix, ModuleError> {
        let cols = (0..self.dim(d)?)
            .map(|j| self.multiply_adjacent(lower, i, d, &SparseVec::unit(j, self.alg.field())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SparseMatrix::from_columns(
            self.alg.field(),
            lower.dim(d)?,
            &cols,
        )?)
    }

    /// `x ⊗ y ↦ x_1⊗⋯⊗(x_last·y_1)⊗⋯⊗y_last`, mapping `E_m ⊗ E_n → E_{m+n}` (no sign).
    pub fn concatenate(
        &self,
        other: &BarSpace,
        result: &BarSpace,
        dx: i64,
        x: &SparseVec,
        dy: i64,
        y: &SparseVec,
    ) -> Result<SparseVec, ModuleError> {
        let (gx, gy) = (self.degree(dx)?, other.degree(dy)?);
        let mut out = SparseVec::new();
        for (i, a) in x.iter() {
            let s = &gx.basis[i];
            for (j, b) in y.iter() {
                let t = &gy.basis[j];
                if let Some((neg, m)) = self.alg.mul_monomials(&s[self.n], &t[0]) {
                    let mut u: Vec<Monomial> = s[..self.n].to_vec();
                    u.push(m);
                    u.extend_from_slice(&t[1..]);
                    result.add_tuple(&mut out, dx + dy, u, &(a * b).signed(neg))?;
                }
            }
        }
        Ok(out)
    }
}

impl Carrier for BarSpace {
    fn algebra(&self) -> &Algebra {
        &self.alg
    }

    fn dim(&self, d: i64) -> Result<usize, ModuleError> {
        Ok(self.degree(d)?.basis.len())
    }

    /// Koszul rule: `∂(u_1⊗⋯) = Σ_i (−1)^{|u_1|+⋯+|u_{i−1}|} u_1⊗⋯⊗∂u_i⊗⋯`.
    fn diff_basis(&self, d: i64, i: usize) -> Result<SparseVec, ModuleError> {
        let g = self.degree(d)?;
        let t = &g.basis[i];
        let mut out = SparseVec::new();
        let mut prefix = 0i64;
        for k in 0..t.len() {
            let sign = prefix % 2 != 0;
            for (m, c) in self.alg.diff_monomial(&t[k]).terms() {
                let mut u = t.clone();
                u[k] = m.clone();
                self.add_tuple(&mut out, d - 1, u, &c.clone().signed(sign))?;
            }
            prefix += self.alg.monomial_degree(&t[k]);
        }
        Ok(out)
    }

    fn act_basis(&self, d: i64, i: usize, m: &Monomial) -> Result<SparseVec, ModuleError> {
        let g = self.degree(d)?;
        let t = &g.basis[i];
        let target = d + self.alg.monomial_degree(m);
        self.alg.check_degree(target)?;
        let mut out = SparseVec::new();
        if let Some((neg, w)) = self.alg.mul_monomials(&t[self.n], m) {
            let mut u = t.clone();
            u[self.n] = w;
            self.add_tuple(&mut out, target, u, &self.alg.field().one().signed(neg))?;
        }
        Ok(out)
    }
}

impl Bimodule for BarSpace {
    fn act_left_basis(&self, d: i64, i: usize, m: &Monomial) -> Result<SparseVec, ModuleError> {
        let g = self.degree(d)?;
        let t = &g.basis[i];
        let target = d + self.alg.monomial_degree(m);
        self.alg.check_degree(target)?;
        let mut out = SparseVec::new();
        if let Some((neg, w)) = self.alg.mul_monomials(m, &t[0]) {
            let mut u = t.clone();
            u[0] = w;
            self.add_tuple(&mut out, target, u, &self.alg.field().one().signed(neg))?;
        }
        Ok(out)
    }
}
