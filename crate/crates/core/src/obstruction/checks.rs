use super::Obstruction;
use crate::dgmod::{Bimodule, Carrier, ChainMap, ModuleError, TensorCarrier};
use crate::exactlin::{kernel_basis, LinalgError, SparseMatrix, SparseVec};
use crate::homotopy::{HomSpace, HomotopyWitness};

/// Nilpotency indices `n_x` (least `n` with `𝘄^n(x) = 0`) over a basis of
/// `(N ⊗ T^i)_m` for each DG degree `m` in range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotencyReport {
    pub tensor_degree: usize,
    /// `(m, basis index, n_x)`; `n_x = None` when `𝘄^n(x)` survived past the horizon.
    pub indices: Vec<(i64, usize, Option<usize>)>,
    /// Elements exceeding `m − i + 1`.
    pub degree_bound_violations: usize,
    /// Elements exceeding `(top basis degree) − i + 1`.
    pub top_bound_violations: usize,
}

impl NilpotencyReport {
    pub fn all_nilpotent(&self) -> bool {
        self.indices.iter().all(|(_, _, n)| n.is_some())
    }

    pub fn max_index(&self) -> Option<usize> {
        self.indices.iter().filter_map(|(_, _, n)| *n).max()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChangeReport {
    /// The differential of `u(e_λ)` rewritten in the new basis equals `b`.
    pub same_differential: bool,
    /// `(u⊗1)𝘄 = 𝘄(u⊗1)` on `N ⊗ T^k` for each checked `k`.
    pub commutes: Vec<bool>,
}

impl BasisChangeReport {
    pub fn holds(&self) -> bool {
        self.same_differential && self.commutes.iter().all(|&c| c)
    }
}

impl Obstruction {
    /// Runs `𝘄` on every basis vector of `(N ⊗ T^i)_m` for `m ∈ degrees`.
    pub fn nilpotency(
        &self,
        i: usize,
        degrees: std::ops::RangeInclusive<i64>,
    ) -> Result<NilpotencyReport, ModuleError> {
        let field = self.n.algebra().field();
        let top = self.n.max_degree().unwrap_or(0);
        let mut report = NilpotencyReport {
            tensor_degree: i,
            indices: Vec::new(),
            degree_bound_violations: 0,
            top_bound_violations: 0,
        };
        for m in degrees {
            let dim = self.tensor(i).dim(m)?;
            let bound = m - i as i64 + 1;
            let horizon = bound.max(0) as usize + 2;
            for idx in 0..dim {
                let mut v = SparseVec::unit(idx, field);
                let mut n = 0;
                while !v.is_zero() && n <= horizon {
                    v = self.w_apply(i + n, m, &v)?;
                    n += 1;
                }
                let nx = v.is_zero().then_some(n);
                let exceeds = |b: i64| nx.is_none_or(|n| n as i64 > b);
                report.degree_bound_violations += exceeds(bound) as usize;
                report.top_bound_violations += exceeds(top - i as i64 + 1) as usize;
                report.indices.push((m, idx, nx));
            }
        }
        Ok(report)
    }

    /// `(f ⊗ 1)χ_N − χ_{N'} f` for a degree-0 chain map `f: N → N'`, with a
    /// null-homotopy when one exists.
    pub fn naturality_witness(
        &self,
        other: &Obstruction,
        f: &ChainMap,
    ) -> Result<Option<HomotopyWitness>, ModuleError> {
        if f.shift() != 0 {
            return Err(ModuleError::InvalidChainMap {
                column: String::new(),
                reason: "naturality needs a degree-0 map".into(),
            });
        }
        let field = self.n.algebra().field();
        let t1 = other.tensor(1);
        let chi_src = self.chi()?;
        let chi_dst = other.chi()?;
        let mut images = Vec::with_capacity(self.n.rank());
        for lambda in 0..self.n.rank() {
            let d = self.n.degree(lambda);
            // (f ⊗ 1)(Σ_μ e_μ ⊗ t_μ) = Σ_μ Σ_ν e'_ν ⊗ f_{νμ} t_μ
            let mut lhs = SparseVec::new();
            for mu in 0..self.n.rank() {
                let t = self.tensor(1).component(d, &chi_src[lambda], mu)?;
                if t.is_zero() {
                    continue;
                }
                let td = d - self.n.degree(mu);
                for (&nu, c) in f.column(mu) {
                    let moved = t1.factor().act_left(td, c, &t)?;
                    lhs.add_scaled(&t1.embed(d, nu, &moved)?, &field.one());
                }
            }
            // χ_{N'}(Σ_ν e'_ν f_{νλ}) = Σ_ν χ_{N'}(e'_ν)·f_{νλ}
            let mut rhs = SparseVec::new();
            for (&nu, c) in f.column(lambda) {
                rhs.add_scaled(&t1.act(other.n.degree(nu), &chi_dst[nu], c)?, &field.one());
            }
            lhs.add_scaled(&rhs, &-field.one());
            images.push(lhs);
        }
        let space = HomSpace::new(&self.n, &t1)?;
        let v = space.assemble(&images);
        if !space.is_chain_map(&v) {
            return Err(LinalgError::VerificationFailed.into());
        }
        space.null_homotopy(&v)
    }

    /// Degree-0 chain maps `N → N` that are strictly lower triangular in the
    /// generator order: `L(e_λ)` only involves `e_μ` with `μ < λ`.
    pub fn lower_triangular_chain_maps(&self) -> Result<Vec<SparseVec>, ModuleError> {
        let field = self.n.algebra().field();
        let space = HomSpace::new(&self.n, self.n.as_ref())?;
        let layout = space.map_layout();
        let mut rows: Vec<SparseVec> = space.constraints().rows().to_vec();
        for lambda in 0..self.n.rank() {
            let inner = self.n.layout(self.n.degree(lambda))?;
            for mu in lambda..self.n.rank() {
                for j in 0..inner.size(mu) {
                    rows.push(SparseVec::unit(
                        layout.start(lambda) + inner.start(mu) + j,
                        field,
                    ));
                }
            }
        }
        let m = SparseMatrix::from_rows(field, layout.total(), rows)?;
        Ok(kernel_basis(&m))
    }

    /// Changes basis by `u = c·1 + L` with `L` a lower-triangular chain map
    /// drawn from `coeff`, then checks that the differential in the new
    /// basis is again `b` and that `u ⊗ 1` commutes with `𝘄` on
    /// `(N ⊗ T^k)_d` for `k < max_k` and `d` up to `max_d`.
    pub fn basis_change_check(
        &self,
        coeff: &mut dyn FnMut() -> i64,
        max_k: usize,
        max_d: i64,
    ) -> Result<BasisChangeReport, ModuleError> {
        let alg = self.n.algebra();
        let field = alg.field();
        let space = HomSpace::new(&self.n, self.n.as_ref())?;
        let mut scale = coeff();
        if scale == 0 {
            scale = 1;
        }
        let mut uvec = SparseVec::new();
        for l in self.lower_triangular_chain_maps()? {
            uvec.add_scaled(&l, &field.from_i64(coeff()));
        }
        let mut u = space.split(&uvec);
        for (lambda, img) in u.iter_mut().enumerate() {
            img.add_scaled(&self.n.generator(lambda)?, &field.from_i64(scale));
        }
        let ucols: Vec<_> = u
            .iter()
            .enumerate()
            .map(|(l, x)| self.n.free_elem(x, self.n.degree(l)))
            .collect::<Result<_, _>>()?;
        let uf = ChainMap::new(self.n.clone(), self.n.clone(), 0, ucols)?;

        // Matrix of u in degree d: columns are u(e_λ·m).
        let u_matrix = |d: i64| -> Result<SparseMatrix, ModuleError> {
            let layout = self.n.layout(d)?;
            let mut cols = Vec::with_capacity(layout.total());
            for lambda in 0..self.n.rank() {
                for j in 0..layout.size(lambda) {
                    let m = &alg.basis(d - self.n.degree(lambda))?[j];
                    cols.push(self.n.act(
                        self.n.degree(lambda),
                        &u[lambda],
                        &alg.monomial_element(m),
                    )?);
                }
            }
            Ok(SparseMatrix::from_columns(field, layout.total(), &cols)?)
        };

        let mut same_differential = true;
        for lambda in 0..self.n.rank() {
            let d = self.n.degree(lambda);
            let du = self.n.diff(d, &u[lambda])?;
            let Some(y) = crate::exactlin::solve_sparse(&u_matrix(d - 1)?, &du)? else {
                same_differential = false;
                continue;
            };
            let b = self.n.coords(self.n.column(lambda), d - 1)?;
            same_differential &= y == b;
        }

        let min = self.n.min_degree().unwrap_or(0);
        let mut commutes = Vec::with_capacity(max_k);
        for k in 0..max_k {
            let src = self.tensor(k);
            let dst = self.tensor(k + 1);
            let mut ok = true;
            for d in min..=max_d {
                for i in 0..src.dim(d)? {
                    let e = SparseVec::unit(i, field);
                    let a = tensor_left(&uf, &dst, d, &self.w_apply(k, d, &e)?)?;
                    let b = self.w_apply(k, d, &tensor_left(&uf, &src, d, &e)?)?;
                    ok &= a == b;
                }
            }
            commutes.push(ok);
        }
        Ok(BasisChangeReport {
            same_differential,
            commutes,
        })
    }
}

/// `(u ⊗ 1)(e_λ ⊗ x) = Σ_ν e_ν ⊗ u_{νλ} x` for a degree-0 endomorphism `u`.
fn tensor_left<X: Bimodule>(
    u: &ChainMap,
    carrier: &TensorCarrier<X>,
    d: i64,
    v: &SparseVec,
) -> Result<SparseVec, ModuleError> {
    let n = carrier.module();
    let one = n.algebra().field().one();
    let mut out = SparseVec::new();
    for lambda in 0..n.rank() {
        let x = carrier.component(d, v, lambda)?;
        if x.is_zero() {
            continue;
        }
        for (&nu, c) in u.column(lambda) {
            let moved = carrier.factor().act_left(d - n.degree(lambda), c, &x)?;
            out.add_scaled(&carrier.embed(d, nu, &moved)?, &one);
        }
    }
    Ok(out)
}
