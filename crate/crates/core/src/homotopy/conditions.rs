use super::hom_k_dim;
use crate::dgmod::{AlgebraCarrier, ModuleError, SemifreeModule};

/// How condition (ii), perfectness of `N` over `A`, was settled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Perfectness {
    /// `A` is the degree-0 base ring and `B` is finite over it, so `N|_A`
    /// has a finite basis filtered by degree.
    Verified,
    /// `A` carries a nontrivial DG structure; no decision procedure applies.
    UserAsserted,
    /// `A` is the base ring but `B` is not finite over it.
    NotCertified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ar1Report {
    pub degrees_nonnegative: bool,
    pub perfectness: Perfectness,
    /// Shifts `1..=bound` were checked; larger shifts vanish for degree reasons.
    pub bound: i64,
    /// `(n, dim Hom_𝒦(N, Σ^n B))` for the first nonzero shift.
    pub first_failure: Option<(i64, usize)>,
}

impl Ar1Report {
    pub fn holds(&self) -> bool {
        self.degrees_nonnegative
            && self.perfectness != Perfectness::NotCertified
            && self.first_failure.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ar2Report {
    pub bound: i64,
    pub first_failure: Option<(i64, usize)>,
}

impl Ar2Report {
    pub fn holds(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// A map `N → Σ^n B` sends `e_λ` into `B_{|e_λ|−n}`, which vanishes once
/// `n` exceeds the top basis degree.
pub fn check_ar1(n: &SemifreeModule) -> Result<Ar1Report, ModuleError> {
    let alg = n.algebra_arc();
    let degrees_nonnegative = n.degrees().iter().all(|&d| d >= 0);
    let perfectness = if alg.a_prefix() > 0 {
        Perfectness::UserAsserted
    } else if alg.finite_over_a() {
        Perfectness::Verified
    } else {
        Perfectness::NotCertified
    };
    let bound = n.max_degree().unwrap_or(0).max(0);
    let b = AlgebraCarrier(alg.clone());
    let mut first_failure = None;
    for s in 1..=bound {
        let dim = hom_k_dim(n, &b, s)?;
        if dim != 0 {
            first_failure = Some((s, dim));
            break;
        }
    }
    Ok(Ar1Report {
        degrees_nonnegative,
        perfectness,
        bound,
        first_failure,
    })
}

/// A map `N → Σ^n N` lands in degrees `|e_λ|−n` below the bottom of `N`
/// once `n` exceeds the spread of basis degrees.
pub fn check_ar2(n: &SemifreeModule) -> Result<Ar2Report, ModuleError> {
    let bound = match (n.max_degree(), n.min_degree()) {
        (Some(hi), Some(lo)) => hi - lo,
        _ => 0,
    };
    let mut first_failure = None;
    for s in 1..=bound {
        let dim = hom_k_dim(n, n, s)?;
        if dim != 0 {
            first_failure = Some((s, dim));
            break;
        }
    }
    Ok(Ar2Report {
        bound,
        first_failure,
    })
}
