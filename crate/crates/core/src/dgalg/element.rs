use std::collections::BTreeMap;

use crate::exactlin::{Field, Scalar};

/// Exponent vector `[base power, x_1, …, x_n]`. Odd variables carry exponent 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars + 1])
    }

    pub fn base_power(&self) -> u32 {
        self.0[0]
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0[var + 1]
    }

    pub fn nvars(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

/// A finite linear combination of normal-form monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub fn zero() -> Element {
        Element::default()
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Element {
        let mut e = Element::zero();
        e.add_term(m, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                let s = &*x + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element, c: &Scalar) {
        for (m, x) in &other.terms {
            self.add_term(m.clone(), x * c);
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (m, x) in &other.terms {
            out.add_term(m.clone(), x.clone());
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.negated())
    }

    pub fn scaled(&self, c: &Scalar) -> Element {
        let mut out = Element::zero();
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn negated(&self) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), -x.clone()))
                .collect(),
        }
    }

    /// The field of the coefficients, if any term is present.
    pub fn field(&self) -> Option<Field> {
        self.terms.values().next().map(Scalar::field)
    }
}
