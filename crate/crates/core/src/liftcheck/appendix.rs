use std::sync::Arc;

use crate::dgmod::{homology_dim, AlgebraCarrier, ChainMap, ModuleError, SemifreeModule};
use crate::homotopy::{hom_k_dim, is_null_homotopic};
use crate::instance::Instance;

/// Negative-shift vanishing for one module, within the degree cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AppendixEntry {
    pub name: String,
    /// `(d, dim H_d(N))` for `d ≥ 1` with nonzero homology.
    pub positive_homology: Vec<(i64, usize)>,
    /// Highest degree whose homology was computed.
    pub homology_checked_to: i64,
    /// `(ℓ, dim Hom_𝒦(N, Σ^ℓ N))` for the checked `ℓ < 0`.
    pub self_shifts: Vec<(i64, usize)>,
    /// `(i, dim Hom_𝒦(N, Σ^i B))` for the checked `i < 0`.
    pub base_shifts: Vec<(i64, usize)>,
    /// For each supplied map `N → Σ^ℓ N` with `ℓ < 0`: `(name, ℓ, not null-homotopic)`.
    pub explicit_classes: Vec<(String, i64, bool)>,
}

impl AppendixEntry {
    /// `N → H_0(N)` is a quasi-isomorphism within the checked range.
    pub fn resolution_like(&self) -> bool {
        self.positive_homology.is_empty()
    }

    /// Resolutions have no negative self- or base-shifts; every other
    /// module passes vacuously.
    pub fn vanishing_holds(&self) -> bool {
        !self.resolution_like()
            || self
                .self_shifts
                .iter()
                .chain(&self.base_shifts)
                .all(|&(_, d)| d == 0)
    }

    /// The module carries a certified nonzero class in a negative shift
    /// together with positive homology.
    pub fn is_counterexample(&self) -> bool {
        !self.resolution_like()
            && self.explicit_classes.iter().any(|(_, l, nonzero)| {
                *nonzero && self.self_shifts.iter().any(|&(s, d)| s == *l && d >= 1)
            })
    }
}

fn within_cap<T>(r: Result<T, ModuleError>) -> Result<Option<T>, ModuleError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(ModuleError::CapExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn appendix_entry(
    name: &str,
    n: &Arc<SemifreeModule>,
    maps: &[(String, ChainMap)],
    max_shift: i64,
) -> Result<AppendixEntry, ModuleError> {
    let alg = n.algebra_arc();
    let mut positive_homology = Vec::new();
    let mut homology_checked_to = 0;
    for d in 1..alg.cap() {
        match within_cap(homology_dim(n.as_ref(), d))? {
            Some(0) => {}
            Some(h) => positive_homology.push((d, h)),
            None => break,
        }
        homology_checked_to = d;
    }
    let b = AlgebraCarrier(alg.clone());
    let mut self_shifts = Vec::new();
    let mut base_shifts = Vec::new();
    for l in 1..=max_shift {
        if let Some(d) = within_cap(hom_k_dim(n, n.as_ref(), -l))? {
            self_shifts.push((-l, d));
        }
        if let Some(d) = within_cap(hom_k_dim(n, &b, -l))? {
            base_shifts.push((-l, d));
        }
    }
    let mut explicit_classes = Vec::new();
    for (mname, f) in maps {
        if Arc::ptr_eq(f.source(), n) && Arc::ptr_eq(f.target(), n) && f.shift() < 0 {
            explicit_classes.push((mname.clone(), f.shift(), is_null_homotopic(f)?.is_none()));
        }
    }
    Ok(AppendixEntry {
        name: name.to_string(),
        positive_homology,
        homology_checked_to,
        self_shifts,
        base_shifts,
        explicit_classes,
    })
}

/// Runs [`appendix_entry`] on every module of every instance.
pub fn appendix_battery(
    corpus: &[(String, Instance)],
    max_shift: i64,
) -> Result<Vec<AppendixEntry>, ModuleError> {
    let mut out = Vec::new();
    for (file, inst) in corpus {
        for (mname, m) in &inst.modules {
            out.push(appendix_entry(
                &format!("{file}:{mname}"),
                m,
                &inst.maps,
                max_shift,
            )?);
        }
    }
    Ok(out)
}
