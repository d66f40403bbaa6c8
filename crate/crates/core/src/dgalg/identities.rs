use super::{Algebra, AlgebraError, Element};

/// One of the DG algebra axioms, as checked on explicit elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    DSquared,
    GradedCommutative,
    Leibniz,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdentityReport {
    /// Number of individual equalities tested.
    pub checked: usize,
    /// The failing identity with a rendering of the offending inputs.
    pub failures: Vec<(Identity, String)>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }

    fn merge(&mut self, other: IdentityReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}

/// `d²x = 0` for each `x`, and commutativity and Leibniz for each pair
/// whose total degree stays within the cap.
pub fn check_identities(
    alg: &Algebra,
    singles: &[Element],
    pairs: &[(Element, Element)],
) -> Result<IdentityReport, AlgebraError> {
    let mut r = IdentityReport::default();
    for x in singles {
        r.checked += 1;
        if !alg.diff(&alg.diff(x)).is_zero() {
            r.failures.push((Identity::DSquared, alg.format_element(x)));
        }
    }
    for (x, y) in pairs {
        let (Some(dx), Some(dy)) = (alg.degree(x)?, alg.degree(y)?) else {
            continue;
        };
        if dx + dy > alg.cap() {
            continue;
        }
        let xy = alg.mul(x, y)?;
        let yx = alg.mul(y, x)?;
        let one = alg.field().one();
        r.checked += 2;
        if xy != yx.scaled(&one.clone().signed(dx * dy % 2 != 0)) {
            let shown = format!("{} , {}", alg.format_element(x), alg.format_element(y));
            r.failures.push((Identity::GradedCommutative, shown));
        }
        let mut rhs = alg.mul(&alg.diff(x), y)?;
        rhs.add_scaled(&alg.mul(x, &alg.diff(y))?, &one.signed(dx % 2 != 0));
        if alg.diff(&xy) != rhs {
            let shown = format!("{} , {}", alg.format_element(x), alg.format_element(y));
            r.failures.push((Identity::Leibniz, shown));
        }
    }
    Ok(r)
}

/// [`check_identities`] on every basis monomial up to the cap and every
/// pair of them with total degree within the cap.
pub fn check_identities_on_basis(alg: &Algebra) -> Result<IdentityReport, AlgebraError> {
    let mut monos = Vec::new();
    for d in 0..=alg.cap() {
        monos.extend(alg.basis(d)?.iter().map(|m| alg.monomial_element(m)));
    }
    let mut r = check_identities(alg, &monos, &[])?;
    for (i, x) in monos.iter().enumerate() {
        let pairs: Vec<_> = monos[i..].iter().map(|y| (x.clone(), y.clone())).collect();
        r.merge(check_identities(alg, &[], &pairs)?);
    }
    Ok(r)
}
