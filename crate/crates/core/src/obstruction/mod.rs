//! The obstruction map `𝘄_N: N ⊗_B T → N ⊗_B T[1]`, its restriction
//! `χ_N: N → N ⊗_B ΣJ`, powers `χ^ℓ`, the class `ω_N` and the graded pieces
//! `Γ^n = Hom_𝒦(N, N ⊗_B T^n)`.
//!
//! `χ(e_λ) = Σ_μ (−1)^{|e_μ|} e_μ ⊗ σδ(b_{μλ})` and `𝘄(e_λ ⊗ t) = χ(e_λ)·t`.
//! The sign `(−1)^{|e_μ|}` moves `σ` past `e_μ`; without it `χ` fails to be a
//! chain map for generators in odd degree.

mod checks;

pub use checks::{BasisChangeReport, NilpotencyReport};

use std::sync::Arc;

use crate::dgalg::Monomial;
use crate::dgmod::{Carrier, ModuleError, SemifreeModule, Shifted, TensorCarrier};
use crate::diagonal::{Diagonal, TPower};
use crate::exactlin::{SparseMatrix, SparseVec};
use crate::homotopy::{HomSpace, HomotopyWitness};

/// `N ⊗_B T^n`.
pub type NT = TensorCarrier<TPower>;

/// Left composition with `ω` between homotopy classes, with its rank.
#[derive(Clone, Debug)]
pub struct OmegaAction {
    pub matrix: SparseMatrix,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

impl OmegaAction {
    pub fn surjective(&self) -> bool {
        self.rank == self.target_dim
    }

    pub fn injective(&self) -> bool {
        self.rank == self.source_dim
    }
}

#[derive(Clone, Debug)]
pub struct Obstruction {
    n: Arc<SemifreeModule>,
    diag: Arc<Diagonal>,
}

impl Obstruction {
    pub fn new(n: Arc<SemifreeModule>, diag: Arc<Diagonal>) -> Result<Obstruction, ModuleError> {
        if !Arc::ptr_eq(n.algebra_arc(), diag.algebra_arc()) {
            return Err(ModuleError::AlgebraMismatch);
        }
        Ok(Obstruction { n, diag })
    }

    pub fn module(&self) -> &Arc<SemifreeModule> {
        &self.n
    }

    pub fn diagonal(&self) -> &Arc<Diagonal> {
        &self.diag
    }

    pub fn tensor(&self, k: usize) -> NT {
        TensorCarrier::new(self.n.clone(), self.diag.t(k))
    }

    /// `χ(e_λ) ∈ (N ⊗ T^1)_{|e_λ|}` for every basis element.
    pub fn chi(&self) -> Result<Vec<SparseVec>, ModuleError> {
        let t1 = self.tensor(1);
        let field = self.n.algebra().field();
        (0..self.n.rank())
            .map(|lambda| {
                let d = self.n.degree(lambda);
                let mut out = SparseVec::new();
                for (&mu, b) in self.n.column(lambda) {
                    let bd = d - 1 - self.n.degree(mu);
                    let s = self.diag.sigma_delta(b, bd)?;
                    let sign = field.one().signed(self.n.degree(mu) % 2 != 0);
                    out.add_scaled(&t1.embed(d, mu, &s)?, &sign);
                }
                Ok(out)
            })
            .collect()
    }

    /// `𝘄: (N ⊗ T^k)_d → (N ⊗ T^{k+1})_d`.
    pub fn w_apply(&self, k: usize, d: i64, v: &SparseVec) -> Result<SparseVec, ModuleError> {
        let (src, dst) = (self.tensor(k), self.tensor(k + 1));
        let field = self.n.algebra().field();
        let mut out = SparseVec::new();
        for lambda in 0..self.n.rank() {
            let x = src.component(d, v, lambda)?;
            if x.is_zero() {
                continue;
            }
            let dx = d - self.n.degree(lambda);
            for (&mu, b) in self.n.column(lambda) {
                let bd = self.n.degree(lambda) - 1 - self.n.degree(mu);
                let s = self.diag.sigma_delta(b, bd)?;
                let prod = self.diag.t_multiply(1, bd + 1, &s, k, dx, &x)?;
                let sign = field.one().signed(self.n.degree(mu) % 2 != 0);
                out.add_scaled(&dst.embed(d, mu, &prod)?, &sign);
            }
        }
        Ok(out)
    }

    pub fn w_matrix(&self, k: usize, d: i64) -> Result<SparseMatrix, ModuleError> {
        let field = self.n.algebra().field();
        let cols = (0..self.tensor(k).dim(d)?)
            .map(|i| self.w_apply(k, d, &SparseVec::unit(i, field)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SparseMatrix::from_columns(
            field,
            self.tensor(k + 1).dim(d)?,
            &cols,
        )?)
    }

    /// `∂𝘄 = 𝘄∂` on every basis vector of `(N ⊗ T^k)_d`.
    pub fn w_is_chain_map(&self, k: usize, d: i64) -> Result<bool, ModuleError> {
        let (src, dst) = (self.tensor(k), self.tensor(k + 1));
        let field = self.n.algebra().field();
        for i in 0..src.dim(d)? {
            let e = SparseVec::unit(i, field);
            let lhs = dst.diff(d, &self.w_apply(k, d, &e)?)?;
            let rhs = self.w_apply(k, d - 1, &src.diff(d, &e)?)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `e_λ ⊗ 1 ∈ (N ⊗ T^0)_{|e_λ|}`.
    pub fn unit_image(&self, lambda: usize) -> Result<SparseVec, ModuleError> {
        let d = self.n.degree(lambda);
        let alg = self.n.algebra();
        let one = SparseVec::unit(alg.index_of(&alg.one_monomial()).unwrap(), alg.field());
        self.tensor(0).embed(d, lambda, &one)
    }

    /// `χ^ℓ = 𝘄^ℓ(− ⊗ 1)` by iterating [`Obstruction::w_apply`].
    pub fn chi_power_iterated(&self, l: usize) -> Result<Vec<SparseVec>, ModuleError> {
        (0..self.n.rank())
            .map(|lambda| {
                let d = self.n.degree(lambda);
                let mut v = self.unit_image(lambda)?;
                for k in 0..l {
                    v = self.w_apply(k, d, &v)?;
                }
                Ok(v)
            })
            .collect()
    }

    /// `χ^ℓ` from the closed form: a sum over chains `λ = μ_0 > μ_1 > ⋯ > μ_ℓ`
    /// of `e_{μ_ℓ} ⊗ σδ(b_ℓ) ⋯ σδ(b_1)` with `b_k = b_{μ_k μ_{k−1}}`, the
    /// tensor expanded directly in `E_ℓ`.
    pub fn chi_power(&self, l: usize) -> Result<Vec<SparseVec>, ModuleError> {
        let alg = self.n.algebra_arc().clone();
        let field = alg.field();
        let target = self.tensor(l);
        let bar = self.diag.bar(l);
        let jl = self.diag.j_power(l);
        let mut out = Vec::with_capacity(self.n.rank());
        for lambda in 0..self.n.rank() {
            let d = self.n.degree(lambda);
            let mut acc = SparseVec::new();
            let mut chains = vec![vec![lambda]];
            for _ in 0..l {
                let mut next = Vec::new();
                for c in &chains {
                    let last = *c.last().unwrap();
                    for &mu in self.n.column(last).keys() {
                        let mut c2 = c.clone();
                        c2.push(mu);
                        next.push(c2);
                    }
                }
                chains = next;
            }
            for chain in chains {
                let end = chain[l];
                // b_k for k = 1..=ℓ
                let bs: Vec<_> = (1..=l)
                    .map(|k| self.n.entry(chain[k], chain[k - 1]).unwrap())
                    .collect();
                let bdeg: Vec<i64> = (1..=l)
                    .map(|k| self.n.degree(chain[k - 1]) - 1 - self.n.degree(chain[k]))
                    .collect();
                let mut neg = false;
                for k in 1..=l {
                    neg ^= self.n.degree(chain[k]) % 2 != 0;
                    neg ^= (k - 1) % 2 == 1 && bdeg[k - 1] % 2 != 0;
                }
                let total: i64 = bdeg.iter().sum();
                let mut amb = SparseVec::new();
                // Multilinear expansion over the terms of each b_k and the two halves of δ.
                let mut partial: Vec<(Vec<Monomial>, crate::exactlin::Scalar)> =
                    vec![(vec![alg.one_monomial()], field.one())];
                for k in (1..=l).rev() {
                    let mut next = Vec::new();
                    for (tuple, c) in &partial {
                        for (m, s) in bs[k - 1].terms() {
                            // δ(m) = m ⊗ 1 − 1 ⊗ m, glued onto the tuple's last slot.
                            for (left, sign) in [(true, false), (false, true)] {
                                let (f, g) = if left {
                                    (m.clone(), alg.one_monomial())
                                } else {
                                    (alg.one_monomial(), m.clone())
                                };
                                let Some((s2, merged)) =
                                    alg.mul_monomials(tuple.last().unwrap(), &f)
                                else {
                                    continue;
                                };
                                let mut t = tuple.clone();
                                *t.last_mut().unwrap() = merged;
                                t.push(g);
                                next.push((t, (c * s).signed(sign ^ s2)));
                            }
                        }
                    }
                    partial = next;
                }
                for (tuple, c) in partial {
                    bar.add_tuple(&mut amb, total, tuple, &c)?;
                }
                let coords = jl.restrict(total, &amb)?;
                acc.add_scaled(&target.embed(d, end, &coords)?, &field.one().signed(neg));
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// `𝘄^+` from the splitting recipe: `ρ(e_λ) = e_λ ⊗ (1⊗1)` in `N ⊗ B^e`,
    /// apply the differential, project with `σ(x) = x − 1⊗π(x)` into
    /// `N ⊗ J`, then include into `N ⊗ ΣJ`.
    pub fn w_plus_via_sigma_rho(&self) -> Result<Vec<SparseVec>, ModuleError> {
        let alg = self.n.algebra_arc().clone();
        let field = alg.field();
        let env = self.diag.enveloping();
        let ne = TensorCarrier::new(self.n.clone(), env.clone());
        let t1 = self.tensor(1);
        let j = self.diag.ideal();
        let one = alg.one_monomial();
        let unit = env.tuple_vector(vec![one.clone(), one.clone()])?;
        (0..self.n.rank())
            .map(|lambda| {
                let d = self.n.degree(lambda);
                let rho = ne.embed(d, lambda, &unit)?;
                let drho = ne.diff(d, &rho)?;
                let mut out = SparseVec::new();
                for mu in 0..self.n.rank() {
                    let xd = d - 1 - self.n.degree(mu);
                    let x = ne.component(d - 1, &drho, mu)?;
                    if x.is_zero() {
                        continue;
                    }
                    let p = self.diag.projection_matrix(xd)?.mul_vec(&x);
                    let mut sx = x.clone();
                    for (i, c) in p.iter() {
                        let m = alg.basis(xd)?[i].clone();
                        env.add_tuple(&mut sx, xd, vec![one.clone(), m], &(-c.clone()))?;
                    }
                    let jc = j.restrict(xd, &sx)?;
                    let sign = field.one().signed(self.n.degree(mu) % 2 != 0);
                    out.add_scaled(&t1.embed(d, mu, &jc)?, &sign);
                }
                Ok(out)
            })
            .collect()
    }

    /// Homotopy-class space `Hom(N, Σ^m(N ⊗ T^k))`.
    pub fn hom_space(&self, k: usize, m: i64) -> Result<HomSpace, ModuleError> {
        HomSpace::new(&self.n, &Shifted::new(self.tensor(k), m))
    }

    /// A null-homotopy of `χ`, or `None` when `ω_N ≠ 0`.
    pub fn omega_is_zero(&self) -> Result<Option<HomotopyWitness>, ModuleError> {
        let space = self.hom_space(1, 0)?;
        space.null_homotopy(&space.assemble(&self.chi()?))
    }

    /// A null-homotopy of `χ^ℓ`, or `None`.
    pub fn chi_power_null(&self, l: usize) -> Result<Option<HomotopyWitness>, ModuleError> {
        let space = self.hom_space(l, 0)?;
        space.null_homotopy(&space.assemble(&self.chi_power(l)?))
    }

    /// `dim Γ^n`, zero for negative `n`.
    pub fn gamma_dim(&self, n: i64) -> Result<usize, ModuleError> {
        if n < 0 {
            return Ok(0);
        }
        Ok(self.hom_space(n as usize, 0)?.dim())
    }

    /// Images `g(e_λ)` in `N ⊗ T^k` of a map given in `Hom(N, Σ^m(N ⊗ T^j))`
    /// coordinates, pushed through `𝘄` `k − j` times.
    fn push(
        &self,
        j: usize,
        k: usize,
        m: i64,
        images: &[SparseVec],
    ) -> Result<Vec<SparseVec>, ModuleError> {
        images
            .iter()
            .enumerate()
            .map(|(lambda, x)| {
                let d = self.n.degree(lambda) - m;
                let mut v = x.clone();
                for step in j..k {
                    v = self.w_apply(step, d, &v)?;
                }
                Ok(v)
            })
            .collect()
    }

    /// Matrix of `Σ^m 𝘄` from `Hom_𝒦(N, Σ^m(N⊗T^k))` to `Hom_𝒦(N, Σ^m(N⊗T^{k+1}))`.
    pub fn omega_action_matrix(&self, k: usize, m: i64) -> Result<OmegaAction, ModuleError> {
        let src = self.hom_space(k, m)?;
        let dst = self.hom_space(k + 1, m)?;
        let field = self.n.algebra().field();
        let cols = src
            .class_representatives()
            .iter()
            .map(|g| {
                let img = self.push(k, k + 1, m, &src.split(g))?;
                dst.class_coords(&dst.assemble(&img))
                    .ok_or_else(|| crate::exactlin::LinalgError::VerificationFailed.into())
            })
            .collect::<Result<Vec<_>, ModuleError>>()?;
        let matrix = SparseMatrix::from_columns(field, dst.dim(), &cols)?;
        let rank = crate::exactlin::rank(&matrix);
        Ok(OmegaAction {
            matrix,
            source_dim: src.dim(),
            target_dim: dst.dim(),
            rank,
        })
    }

    /// `(rank of {χ^k ∘ g : g ∈ End_𝒦(N)}, dim Γ^k)`.
    pub fn end_generation(&self, k: usize) -> Result<(usize, usize), ModuleError> {
        let end = self.hom_space(0, 0)?;
        let dst = self.hom_space(k, 0)?;
        let mut coords = Vec::new();
        for g in end.class_representatives() {
            let img = self.push(0, k, 0, &end.split(g))?;
            coords.push(
                dst.class_coords(&dst.assemble(&img))
                    .ok_or(crate::exactlin::LinalgError::VerificationFailed)?,
            );
        }
        let m = SparseMatrix::from_columns(self.n.algebra().field(), dst.dim(), &coords)?;
        Ok((crate::exactlin::rank(&m), dst.dim()))
    }

    /// `(dim C^k_d, dim (N ⊗_A Σ^{k+1} J^{⊗k})_d)` for the cone `C` of `𝘄`,
    /// whose `k`-th component is `Σ(N⊗T^k) ⊕ N⊗T^{k+1}`.
    pub fn cone_component_dims(&self, k: i64, d: i64) -> Result<(usize, usize), ModuleError> {
        if k <= -2 {
            return Ok((0, 0));
        }
        if k == -1 {
            let dim = self.tensor(0).dim(d)?;
            return Ok((dim, self.n.dim(d)?));
        }
        let ku = k as usize;
        let computed = self.tensor(ku).dim(d - 1)? + self.tensor(ku + 1).dim(d)?;
        let carrier = TensorCarrier::new(
            self.n.clone(),
            Shifted::new(self.diag.b_tensor_j(ku), k + 1),
        );
        Ok((computed, carrier.dim(d)?))
    }
}
