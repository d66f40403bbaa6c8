use std::sync::Arc;

use super::{splitting_search, summand_witness, LiftError, Splitting, SummandWitness};
use crate::dgmod::{ModuleError, SemifreeModule};
use crate::diagonal::Diagonal;
use crate::homotopy::{check_ar1, Ar1Report, HomotopyWitness};
use crate::obstruction::Obstruction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Condition {
    /// `π_N` splits.
    Splits,
    /// `ω_N = 0`.
    OmegaZero,
    /// `ω_N^ℓ = 0` for some `1 ≤ ℓ ≤ L`.
    OmegaNilpotent,
    /// `End_𝒦(N) → Γ` is onto through degree `L`.
    EndIsGamma,
    /// `Γ` vanishes from some degree on, within `L`.
    FinitelyGenerated,
    /// `Γ^i = 0` for all `1 ≤ i ≤ L`.
    AllPositiveVanish,
    /// `Γ^i = 0` for some `1 ≤ i ≤ L`.
    SomePositiveVanishes,
    /// `Hom_𝒦(N, N ⊗ ΣJ) = 0`.
    FirstPieceVanishes,
    /// `N` is a homotopy retract of some `B^{⊕m}`.
    Summand,
}

impl Condition {
    pub const ALL: [Condition; 9] = [
        Condition::Splits,
        Condition::OmegaZero,
        Condition::OmegaNilpotent,
        Condition::EndIsGamma,
        Condition::FinitelyGenerated,
        Condition::AllPositiveVanish,
        Condition::SomePositiveVanishes,
        Condition::FirstPieceVanishes,
        Condition::Summand,
    ];

    pub fn label(self) -> &'static str {
        ["i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix"][self as usize]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    /// No decision within the available bounds.
    Undecided(String),
}

impl Verdict {
    fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }

    pub fn decided(&self) -> Option<bool> {
        match self {
            Verdict::Holds => Some(true),
            Verdict::Fails => Some(false),
            Verdict::Undecided(_) => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LiftReport {
    pub ar1: Ar1Report,
    pub lbound: usize,
    pub verdicts: Vec<(Condition, Verdict)>,
    /// `dim Γ^n` for `0 ≤ n ≤ L`.
    pub gamma_dims: Vec<usize>,
    /// Least `ℓ ≤ L` with `χ^ℓ` null-homotopic.
    pub nilpotency_order: Option<usize>,
    pub splitting: Option<Splitting>,
    pub omega_witness: Option<HomotopyWitness>,
    pub summand: Option<SummandWitness>,
}

impl LiftReport {
    pub fn verdict(&self, c: Condition) -> &Verdict {
        &self.verdicts.iter().find(|(k, _)| *k == c).unwrap().1
    }

    /// Splitting and `ω = 0` agree; this needs no hypothesis on `N`.
    pub fn split_matches_omega(&self) -> bool {
        self.verdict(Condition::Splits).decided() == self.verdict(Condition::OmegaZero).decided()
    }

    /// All decided verdicts coincide.
    pub fn agreement(&self) -> bool {
        let mut decided = self.verdicts.iter().filter_map(|(_, v)| v.decided());
        match decided.next() {
            Some(first) => decided.all(|b| b == first),
            None => true,
        }
    }

    /// Every condition was decided and they coincide.
    pub fn all_decided_and_agree(&self) -> bool {
        self.verdicts.iter().all(|(_, v)| v.decided().is_some()) && self.agreement()
    }
}

/// Evaluates the nine conditions on `N` with tensor bound `lbound`.
pub fn naive_lift_battery(
    n: &Arc<SemifreeModule>,
    diag: &Arc<Diagonal>,
    lbound: usize,
) -> Result<LiftReport, ModuleError> {
    let ar1 = check_ar1(n)?;
    let ob = Obstruction::new(n.clone(), diag.clone())?;
    let splitting = match splitting_search(n) {
        Ok(s) => Some(s),
        Err(ModuleError::CapExceeded { .. }) if !n.algebra_arc().finite_over_a() => None,
        Err(e) => return Err(e),
    }
    .flatten();
    let split_verdict = if n.algebra_arc().finite_over_a() {
        Verdict::from_bool(splitting.is_some())
    } else {
        Verdict::Undecided("B is not finite over A".into())
    };
    let omega_witness = ob.omega_is_zero()?;
    let mut nilpotency_order = None;
    for l in 1..=lbound {
        if ob.chi_power_null(l)?.is_some() {
            nilpotency_order = Some(l);
            break;
        }
    }
    let gamma_dims = (0..=lbound as i64)
        .map(|k| ob.gamma_dim(k))
        .collect::<Result<Vec<_>, _>>()?;
    let positive = &gamma_dims[1..];
    let all_vanish = positive.iter().all(|&d| d == 0);
    let some_vanish = positive.contains(&0);
    let tail_vanishes = gamma_dims.last().is_none_or(|&d| d == 0) && lbound >= 1;

    let summand = match (&splitting, ar1.first_failure) {
        (Some(s), None) => match summand_witness(n, s) {
            Ok(w) => Some(w),
            Err(LiftError::FiltrationStuck { .. }) => None,
            Err(LiftError::Module(e)) => return Err(e),
        },
        _ => None,
    };
    let summand_verdict = match (&summand, &splitting, ar1.first_failure) {
        (Some(_), _, _) => Verdict::Holds,
        (None, Some(_), None) => Verdict::Undecided("filtration descent stuck".into()),
        _ => Verdict::Undecided("needs a splitting and Hom(N, Σ^r B) = 0 for r ≥ 1".into()),
    };
    let nil_verdict = if nilpotency_order.is_some() {
        Verdict::Holds
    } else {
        // Outside the bound the power could still vanish; within it we only
        // know it does not, which decides (iii) only under AR1.
        if ar1.holds() {
            Verdict::Fails
        } else {
            Verdict::Undecided(format!("no nilpotency up to {lbound}"))
        }
    };
    let verdicts = vec![
        (Condition::Splits, split_verdict),
        (
            Condition::OmegaZero,
            Verdict::from_bool(omega_witness.is_some()),
        ),
        (Condition::OmegaNilpotent, nil_verdict),
        (Condition::EndIsGamma, Verdict::from_bool(all_vanish)),
        (
            Condition::FinitelyGenerated,
            Verdict::from_bool(tail_vanishes),
        ),
        (Condition::AllPositiveVanish, Verdict::from_bool(all_vanish)),
        (
            Condition::SomePositiveVanishes,
            Verdict::from_bool(some_vanish),
        ),
        (
            Condition::FirstPieceVanishes,
            Verdict::from_bool(gamma_dims.get(1) == Some(&0)),
        ),
        (Condition::Summand, summand_verdict),
    ];
    Ok(LiftReport {
        ar1,
        lbound,
        verdicts,
        gamma_dims,
        nilpotency_order,
        splitting,
        omega_witness,
        summand,
    })
}
