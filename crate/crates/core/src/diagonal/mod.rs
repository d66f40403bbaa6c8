//! The enveloping algebra `B^e = B ⊗_A B`, the diagonal ideal `J = ker π_B`,
//! the universal derivation `δ`, tensor powers `J^{⊗_B n}` and the diagonal
//! tensor algebra `T = ⊕_n (ΣJ)^{⊗_B n}`.
//!
//! Everything lives inside the bar spaces `E_n = B^{⊗_A (n+1)}`. Since `J` is
//! flat over `B`, `J^{⊗_B n}` embeds in `E_n` as the joint kernel of the
//! adjacent multiplications `μ_1, …, μ_n`. `T^n` is stored as `Σ^n J^{⊗n}`
//! with `σ^m x · σ^n y = (−1)^{n|x|} σ^{m+n}(x ⊗ y)`.

mod bar;
mod subspace;

pub use bar::{BarDegree, BarSpace};
pub use subspace::BarSubspace;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::dgalg::{Algebra, Element};
use crate::dgmod::{Carrier, ModuleError, Shifted};
use crate::exactlin::{SparseMatrix, SparseVec};

/// `T^n` as a DG bimodule.
pub type TPower = Shifted<Arc<BarSubspace>>;

#[derive(Debug)]
pub struct Diagonal {
    alg: Arc<Algebra>,
    bars: Mutex<Vec<Arc<BarSpace>>>,
    powers: Mutex<HashMap<usize, Arc<BarSubspace>>>,
    b_powers: Mutex<HashMap<usize, Arc<BarSubspace>>>,
}

impl Diagonal {
    pub fn new(alg: Arc<Algebra>) -> Diagonal {
        Diagonal {
            alg,
            bars: Mutex::new(Vec::new()),
            powers: Mutex::new(HashMap::new()),
            b_powers: Mutex::new(HashMap::new()),
        }
    }

    pub fn algebra_arc(&self) -> &Arc<Algebra> {
        &self.alg
    }

    /// `E_n` with `n + 1` tensor factors.
    pub fn bar(&self, n: usize) -> Arc<BarSpace> {
        let mut bars = self.bars.lock().unwrap();
        while bars.len() <= n {
            let k = bars.len();
            bars.push(Arc::new(BarSpace::new(self.alg.clone(), k)));
        }
        bars[n].clone()
    }

    pub fn enveloping(&self) -> Arc<BarSpace> {
        self.bar(1)
    }

    /// `J^{⊗_B n}`; `n = 0` gives `B`.
    pub fn j_power(&self, n: usize) -> Arc<BarSubspace> {
        if let Some(p) = self.powers.lock().unwrap().get(&n) {
            return p.clone();
        }
        let lower = (n > 0).then(|| self.bar(n - 1));
        let p = Arc::new(BarSubspace::new(self.bar(n), lower, 1..=n));
        self.powers.lock().unwrap().insert(n, p.clone());
        p
    }

    pub fn ideal(&self) -> Arc<BarSubspace> {
        self.j_power(1)
    }

    /// `B ⊗_A J^{⊗_B n}` inside `E_{n+1}`.
    pub fn b_tensor_j(&self, n: usize) -> Arc<BarSubspace> {
        if let Some(p) = self.b_powers.lock().unwrap().get(&n) {
            return p.clone();
        }
        let p = Arc::new(BarSubspace::new(
            self.bar(n + 1),
            Some(self.bar(n)),
            2..=n + 1,
        ));
        self.b_powers.lock().unwrap().insert(n, p.clone());
        p
    }

    /// `T^n = (ΣJ)^{⊗_B n}`.
    pub fn t(&self, n: usize) -> TPower {
        Shifted::new(self.j_power(n), n as i64)
    }

    /// Matrix of `π_B: (B^e)_d → B_d`.
    pub fn projection_matrix(&self, d: i64) -> Result<SparseMatrix, ModuleError> {
        self.bar(1).multiply_adjacent_matrix(&self.bar(0), 1, d)
    }

    /// `δ(b) = b ⊗ 1 − 1 ⊗ b` in `B^e` coordinates of degree `d`.
    pub fn delta(&self, b: &Element, d: i64) -> Result<SparseVec, ModuleError> {
        let env = self.bar(1);
        let one = self.alg.one_monomial();
        let mut v = SparseVec::new();
        for (m, c) in b.terms() {
            env.add_tuple(&mut v, d, vec![m.clone(), one.clone()], c)?;
            env.add_tuple(&mut v, d, vec![one.clone(), m.clone()], &(-c.clone()))?;
        }
        Ok(v)
    }

    /// `σδ(b) ∈ T^1_{d+1}` for `b ∈ B_d`.
    pub fn sigma_delta(&self, b: &Element, d: i64) -> Result<SparseVec, ModuleError> {
        self.ideal().restrict(d, &self.delta(b, d)?)
    }

    /// `(u_1⊗u_2)(v_1⊗v_2) = (−1)^{|v_1||u_2|} u_1v_1 ⊗ u_2v_2` in `B^e`.
    pub fn enveloping_mul(
        &self,
        dx: i64,
        x: &SparseVec,
        dy: i64,
        y: &SparseVec,
    ) -> Result<SparseVec, ModuleError> {
        let env = self.bar(1);
        let (gx, gy) = (env.degree(dx)?, env.degree(dy)?);
        let mut out = SparseVec::new();
        for (i, a) in x.iter() {
            let u = &gx.basis[i];
            for (j, b) in y.iter() {
                let v = &gy.basis[j];
                let (Some((s1, p1)), Some((s2, p2))) = (
                    self.alg.mul_monomials(&u[0], &v[0]),
                    self.alg.mul_monomials(&u[1], &v[1]),
                ) else {
                    continue;
                };
                let koszul = self.alg.monomial_degree(&v[0]) % 2 != 0
                    && self.alg.monomial_degree(&u[1]) % 2 != 0;
                env.add_tuple(
                    &mut out,
                    dx + dy,
                    vec![p1, p2],
                    &(a * b).signed(s1 ^ s2 ^ koszul),
                )?;
            }
        }
        Ok(out)
    }

    /// The product `T^m_{dx} × T^n_{dy} → T^{m+n}_{dx+dy}` on coordinates.
    pub fn t_multiply(
        &self,
        m: usize,
        dx: i64,
        x: &SparseVec,
        n: usize,
        dy: i64,
        y: &SparseVec,
    ) -> Result<SparseVec, ModuleError> {
        let (ix, iy) = (dx - m as i64, dy - n as i64);
        let ax = self.j_power(m).expand(ix, x)?;
        let ay = self.j_power(n).expand(iy, y)?;
        let prod = self
            .bar(m)
            .concatenate(&self.bar(n), &self.bar(m + n), ix, &ax, iy, &ay)?;
        let odd = n % 2 == 1 && ix % 2 != 0;
        let prod = if odd { prod.negated() } else { prod };
        self.j_power(m + n).restrict(ix + iy, &prod)
    }

    /// `(dim J_d, dim B_d, dim B^e_d)`: the terms of `0 → J → B^e → B → 0`.
    pub fn first_sequence_dims(&self, d: i64) -> Result<[usize; 3], ModuleError> {
        Ok([self.ideal().dim(d)?, self.alg.dim(d)?, self.bar(1).dim(d)?])
    }

    /// `(dim J^{⊗(n+1)}_d, dim (B⊗_A J^{⊗n})_d, dim J^{⊗n}_d)`: the terms of
    /// `0 → J^{⊗(n+1)} → B ⊗_A J^{⊗n} → J^{⊗n} → 0`.
    pub fn second_sequence_dims(&self, n: usize, d: i64) -> Result<[usize; 3], ModuleError> {
        Ok([
            self.j_power(n + 1).dim(d)?,
            self.b_tensor_j(n).dim(d)?,
            self.j_power(n).dim(d)?,
        ])
    }
}
