use std::sync::Arc;

use super::{ChainMap, FreeElem, ModuleError, SemifreeModule};
use crate::dgalg::{Element, Monomial};

/// `N|_A ⊗_A B` as a semifree `B`-module together with the counit `π_N`.
#[derive(Clone, Debug)]
pub struct BaseChange {
    pub module: Arc<SemifreeModule>,
    pub pi: ChainMap,
    /// `(λ, w)` for each basis element `e_λ w ⊗ 1`, in module order.
    pub generators: Vec<(usize, Monomial)>,
}

/// Builds `N|_A ⊗_A B` on the basis `e_λ w ⊗ 1` (`w` running over non-`A`
/// monomials). Fails with `CapExceeded` when `B` is not finite over `A`.
pub fn base_change(n: &Arc<SemifreeModule>) -> Result<BaseChange, ModuleError> {
    let alg = n.algebra_arc().clone();
    if !alg.finite_over_a() {
        return Err(ModuleError::CapExceeded {
            requested: i64::MAX,
            cap: alg.cap(),
        });
    }
    let mut gens = Vec::new();
    for lambda in 0..n.rank() {
        for d in 0..=alg.cap() {
            for w in alg.non_a_basis(d)? {
                gens.push((lambda, w.clone()));
            }
        }
    }
    let pos = |lambda: usize, w: &Monomial| {
        gens.iter()
            .position(|(l, v)| *l == lambda && v == w)
            .unwrap()
    };
    let basis = gens
        .iter()
        .map(|(l, w)| {
            let name = if w.is_one() {
                n.name(*l).to_string()
            } else {
                format!("{}*{}", n.name(*l), alg.format_monomial(w))
            };
            (name, n.degree(*l) + alg.monomial_degree(w))
        })
        .collect();
    let mut entries = Vec::new();
    for (g, (lambda, w)) in gens.iter().enumerate() {
        let x = FreeElem::from([(*lambda, Element::monomial(w.clone(), alg.field().one()))]);
        for (mu, b) in n.diff_free(&x) {
            for (m, c) in b.terms() {
                // e_μ·(a w') = (−1)^{|a||w'|} (e_μ w')·a
                let (a, w2) = alg.split_a(m);
                let odd = alg.monomial_degree(&a) % 2 != 0 && alg.monomial_degree(&w2) % 2 != 0;
                entries.push((pos(mu, &w2), g, Element::monomial(a, c.clone().signed(odd))));
            }
        }
    }
    let (module, order) = SemifreeModule::from_unordered_with_order(alg.clone(), basis, entries)?;
    let module = Arc::new(module);
    let generators: Vec<(usize, Monomial)> = order.iter().map(|&g| gens[g].clone()).collect();
    let columns = generators
        .iter()
        .map(|(l, w)| FreeElem::from([(*l, Element::monomial(w.clone(), alg.field().one()))]))
        .collect();
    let pi = ChainMap::new(module.clone(), n.clone(), 0, columns)?;
    Ok(BaseChange {
        module,
        pi,
        generators,
    })
}
