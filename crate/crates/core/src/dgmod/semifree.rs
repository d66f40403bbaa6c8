use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::{BlockLayout, Carrier, ChainMap, ModuleError};
use crate::dgalg::{Algebra, Element, Monomial};
use crate::exactlin::SparseVec;

/// `Σ_λ e_λ·b_λ`, keyed by basis index.
pub type FreeElem = BTreeMap<usize, Element>;

pub(crate) fn free_add(acc: &mut FreeElem, k: usize, b: &Element) {
    let e = acc.entry(k).or_default();
    *e = e.add(b);
    if e.is_zero() {
        acc.remove(&k);
    }
}

/// A semifree right DG `B`-module with a finite ordered basis and
/// `∂e_λ = Σ_{μ<λ} e_μ·b_{μλ}`.
#[derive(Clone, Debug)]
pub struct SemifreeModule {
    alg: Arc<Algebra>,
    names: Vec<String>,
    degrees: Vec<i64>,
    columns: Vec<FreeElem>,
}

impl SemifreeModule {
    /// Validates triangularity, degrees and `∂² = 0`.
    pub fn new(
        alg: Arc<Algebra>,
        basis: Vec<(String, i64)>,
        entries: Vec<(usize, usize, Element)>,
    ) -> Result<SemifreeModule, ModuleError> {
        let (names, degrees): (Vec<_>, Vec<_>) = basis.into_iter().unzip();
        let mut columns = vec![FreeElem::new(); names.len()];
        for (mu, lambda, b) in entries {
            if lambda >= names.len() || mu >= names.len() {
                return Err(ModuleError::UnknownBasis(format!("#{}", mu.max(lambda))));
            }
            if mu >= lambda && !b.is_zero() {
                return Err(ModuleError::NotTriangular {
                    column: names[lambda].clone(),
                    row: names[mu].clone(),
                });
            }
            let want = degrees[lambda] - 1 - degrees[mu];
            if b.terms().any(|(m, _)| alg.monomial_degree(m) != want) {
                return Err(ModuleError::DegreeMismatch {
                    column: names[lambda].clone(),
                    row: names[mu].clone(),
                });
            }
            free_add(&mut columns[lambda], mu, &b);
        }
        let module = SemifreeModule {
            alg,
            names,
            degrees,
            columns,
        };
        for lambda in 0..module.rank() {
            if !module.diff_free(&module.columns[lambda]).is_empty() {
                return Err(ModuleError::DSquaredNonzero {
                    column: module.names[lambda].clone(),
                });
            }
        }
        Ok(module)
    }

    /// Accepts the basis in any order and re-sorts it stably so the differential
    /// becomes strictly lower triangular.
    pub fn from_unordered(
        alg: Arc<Algebra>,
        basis: Vec<(String, i64)>,
        entries: Vec<(usize, usize, Element)>,
    ) -> Result<SemifreeModule, ModuleError> {
        Ok(Self::from_unordered_with_order(alg, basis, entries)?.0)
    }

    /// Like [`SemifreeModule::from_unordered`], also returning the original
    /// index of each new basis position.
    pub fn from_unordered_with_order(
        alg: Arc<Algebra>,
        basis: Vec<(String, i64)>,
        entries: Vec<(usize, usize, Element)>,
    ) -> Result<(SemifreeModule, Vec<usize>), ModuleError> {
        let n = basis.len();
        let mut preds = vec![BTreeSet::new(); n];
        for (mu, lambda, b) in &entries {
            if *mu >= n || *lambda >= n {
                return Err(ModuleError::UnknownBasis(format!("#{}", mu.max(lambda))));
            }
            if !b.is_zero() {
                if mu == lambda {
                    return Err(ModuleError::TriangularityUnrepairable);
                }
                preds[*lambda].insert(*mu);
            }
        }
        let mut order = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        while order.len() < n {
            let next = (0..n).find(|&i| !placed[i] && preds[i].iter().all(|&p| placed[p]));
            let Some(i) = next else {
                return Err(ModuleError::TriangularityUnrepairable);
            };
            placed[i] = true;
            order.push(i);
        }
        let mut pos = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
        }
        let basis = order.iter().map(|&i| basis[i].clone()).collect();
        let entries = entries
            .into_iter()
            .map(|(mu, l, b)| (pos[mu], pos[l], b))
            .collect();
        Ok((SemifreeModule::new(alg, basis, entries)?, order))
    }

    /// `B^{⊕n}` placed in the given degrees, with zero differential.
    pub fn free(alg: Arc<Algebra>, degrees: &[i64]) -> SemifreeModule {
        let names = (0..degrees.len()).map(|i| format!("e{i}")).collect();
        SemifreeModule {
            alg,
            names,
            degrees: degrees.to_vec(),
            columns: vec![FreeElem::new(); degrees.len()],
        }
    }

    pub fn zero(alg: Arc<Algebra>) -> SemifreeModule {
        SemifreeModule::free(alg, &[])
    }

    pub fn algebra_arc(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.degrees.iter().copied().max()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.degrees.iter().copied().min()
    }

    /// `∂e_λ` as a combination of basis elements.
    pub fn column(&self, lambda: usize) -> &FreeElem {
        &self.columns[lambda]
    }

    /// `b_{μλ}`, the coefficient of `e_μ` in `∂e_λ`.
    pub fn entry(&self, mu: usize, lambda: usize) -> Option<&Element> {
        self.columns[lambda].get(&mu)
    }

    /// `∂(Σ e_λ b_λ) = Σ ∂(e_λ)·b_λ + (−1)^{|e_λ|} e_λ·d(b_λ)`.
    pub fn diff_free(&self, x: &FreeElem) -> FreeElem {
        let mut out = FreeElem::new();
        for (&lambda, b) in x {
            for (&mu, c) in &self.columns[lambda] {
                free_add(&mut out, mu, &self.alg.mul_unchecked(c, b));
            }
            let db = self.alg.diff(b);
            let db = if self.degrees[lambda] % 2 != 0 {
                db.negated()
            } else {
                db
            };
            free_add(&mut out, lambda, &db);
        }
        out
    }

    /// `Σ^i`: degrees raised by `i`, differential multiplied by `(−1)^i`.
    pub fn shift(&self, i: i64) -> SemifreeModule {
        let sign = self.alg.field().one().signed(i % 2 != 0);
        SemifreeModule {
            alg: self.alg.clone(),
            names: self.names.clone(),
            degrees: self.degrees.iter().map(|d| d + i).collect(),
            columns: self
                .columns
                .iter()
                .map(|c| c.iter().map(|(&k, b)| (k, b.scaled(&sign))).collect())
                .collect(),
        }
    }

    /// `self ⊕ other`, basis of `self` first.
    pub fn sum(&self, other: &SemifreeModule) -> Result<SemifreeModule, ModuleError> {
        if !Arc::ptr_eq(&self.alg, &other.alg) {
            return Err(ModuleError::AlgebraMismatch);
        }
        let off = self.rank();
        let mut columns = self.columns.clone();
        columns.extend(
            other
                .columns
                .iter()
                .map(|c| c.iter().map(|(&k, b)| (k + off, b.clone())).collect()),
        );
        let mut names: Vec<String> = self.names.clone();
        for n in &other.names {
            let mut n = n.clone();
            while names.contains(&n) {
                n.push('\'');
            }
            names.push(n);
        }
        let mut degrees = self.degrees.clone();
        degrees.extend(&other.degrees);
        Ok(SemifreeModule {
            alg: self.alg.clone(),
            names,
            degrees,
            columns,
        })
    }

    /// Mapping cone of a degree-0 chain map `f: N → M`: basis `σe_λ ⊔ M`,
    /// `∂σe_λ = −Σ σe_μ·b_{μλ} + f(e_λ)`.
    pub fn cone(f: &ChainMap) -> Result<SemifreeModule, ModuleError> {
        if f.shift() != 0 {
            return Err(ModuleError::InvalidChainMap {
                column: String::new(),
                reason: "the cone needs a degree-0 map".into(),
            });
        }
        let (n, m) = (f.source(), f.target());
        let off = n.rank();
        let mut basis: Vec<(String, i64)> = (0..n.rank())
            .map(|i| (format!("s_{}", n.name(i)), n.degree(i) + 1))
            .collect();
        for i in 0..m.rank() {
            let mut name = m.name(i).to_string();
            while basis.iter().any(|(b, _)| *b == name) {
                name.push('\'');
            }
            basis.push((name, m.degree(i)));
        }
        let mut entries = Vec::new();
        for lambda in 0..n.rank() {
            for (&mu, b) in n.column(lambda) {
                entries.push((mu, lambda, b.negated()));
            }
            for (&mu, b) in f.column(lambda) {
                entries.push((mu + off, lambda, b.clone()));
            }
        }
        for lambda in 0..m.rank() {
            for (&mu, b) in m.column(lambda) {
                entries.push((mu + off, lambda + off, b.clone()));
            }
        }
        SemifreeModule::from_unordered(n.alg.clone(), basis, entries)
    }

    pub(crate) fn layout(&self, d: i64) -> Result<BlockLayout, ModuleError> {
        let sizes = self
            .degrees
            .iter()
            .map(|&e| self.alg.dim(d - e))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BlockLayout::from_sizes(sizes))
    }

    /// Coordinates of a homogeneous element of degree `d`.
    pub fn coords(&self, x: &FreeElem, d: i64) -> Result<SparseVec, ModuleError> {
        let layout = self.layout(d)?;
        let mut v = SparseVec::new();
        for (&lambda, b) in x {
            for (m, c) in b.terms() {
                debug_assert_eq!(self.alg.monomial_degree(m), d - self.degrees[lambda]);
                let idx = self
                    .alg
                    .index_of(m)
                    .expect("monomial within the degree cap");
                v.add_at(layout.start(lambda) + idx, c);
            }
        }
        Ok(v)
    }

    pub fn free_elem(&self, v: &SparseVec, d: i64) -> Result<FreeElem, ModuleError> {
        let layout = self.layout(d)?;
        let mut out = FreeElem::new();
        for (i, c) in v.iter() {
            let (lambda, j) = layout.locate(i);
            let m = self.alg.basis(d - self.degrees[lambda])?[j].clone();
            free_add(&mut out, lambda, &Element::monomial(m, c.clone()));
        }
        Ok(out)
    }

    /// The basis element `e_λ` in degree-`|e_λ|` coordinates.
    pub fn generator(&self, lambda: usize) -> Result<SparseVec, ModuleError> {
        let layout = self.layout(self.degrees[lambda])?;
        let one = self.alg.one_monomial();
        Ok(SparseVec::unit(
            layout.start(lambda) + self.alg.index_of(&one).unwrap(),
            self.alg.field(),
        ))
    }

    pub fn format_free(&self, x: &FreeElem) -> String {
        if x.is_empty() {
            return "0".into();
        }
        x.iter()
            .map(|(&k, b)| {
                let s = self.alg.format_element(b);
                if b.num_terms() > 1 {
                    format!("{}*({})", self.names[k], s)
                } else if s == "1" {
                    self.names[k].clone()
                } else if s == "-1" {
                    format!("-{}", self.names[k])
                } else if let Some(rest) = s.strip_prefix('-') {
                    format!("-{}*{}", self.names[k], rest)
                } else {
                    format!("{}*{}", self.names[k], s)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl Carrier for SemifreeModule {
    fn algebra(&self) -> &Algebra {
        &self.alg
    }

    fn dim(&self, d: i64) -> Result<usize, ModuleError> {
        Ok(self.layout(d)?.total())
    }

    fn diff_basis(&self, d: i64, i: usize) -> Result<SparseVec, ModuleError> {
        let layout = self.layout(d)?;
        let (lambda, j) = layout.locate(i);
        let m = self.alg.basis(d - self.degrees[lambda])?[j].clone();
        let x = FreeElem::from([(lambda, Element::monomial(m, self.alg.field().one()))]);
        self.coords(&self.diff_free(&x), d - 1)
    }

    fn act_basis(&self, d: i64, i: usize, m: &Monomial) -> Result<SparseVec, ModuleError> {
        let layout = self.layout(d)?;
        let (lambda, j) = layout.locate(i);
        let u = &self.alg.basis(d - self.degrees[lambda])?[j];
        let target = d + self.alg.monomial_degree(m);
        let out_layout = self.layout(target)?;
        Ok(match self.alg.mul_monomials(u, m) {
            Some((neg, w)) => SparseVec::unit(
                out_layout.start(lambda) + self.alg.index_of(&w).unwrap(),
                self.alg.field(),
            )
            .scaled(&self.alg.field().one().signed(neg)),
            None => SparseVec::new(),
        })
    }
}
