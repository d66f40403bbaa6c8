use std::collections::HashMap;
use std::fmt::Write as _;

use super::{AlgebraError, Element, Monomial};
use crate::exactlin::{Field, Scalar, SparseVec};

/// The degree-0 coefficient ring: the field itself or `k[a]/(a^m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseRing {
    Field,
    Truncated { generator: String, order: u32 },
}

impl BaseRing {
    /// Smallest power of the generator that vanishes (1 for a field).
    pub fn order(&self) -> u32 {
        match self {
            BaseRing::Field => 1,
            BaseRing::Truncated { order, .. } => *order,
        }
    }

    pub fn generator(&self) -> Option<&str> {
        match self {
            BaseRing::Field => None,
            BaseRing::Truncated { generator, .. } => Some(generator),
        }
    }
}

/// One variable: its name, degree and differential. The differential is a list
/// of `(coefficient, exponents)` terms, exponents ordered `[base, x_1, …]` and
/// zero-padded on the right.
#[derive(Clone, Debug)]
pub struct VarSpec {
    pub name: String,
    pub degree: u32,
    pub diff: Vec<(Scalar, Vec<u32>)>,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub field: Field,
    pub base: BaseRing,
    pub vars: Vec<VarSpec>,
    /// The first `a_prefix` variables generate `A` over the base ring.
    pub a_prefix: usize,
    /// Largest degree for which bases are tabulated.
    pub cap: i64,
}

/// A validated DG algebra `B` together with its prefix subalgebra `A`.
#[derive(Debug)]
pub struct Algebra {
    field: Field,
    base: BaseRing,
    order: u32,
    names: Vec<String>,
    degrees: Vec<u32>,
    diffs: Vec<Element>,
    a_prefix: usize,
    cap: i64,
    bases: Vec<Vec<Monomial>>,
    non_a: Vec<Vec<Monomial>>,
    index: HashMap<Monomial, usize>,
}

fn ill(variable: &str, reason: impl Into<String>) -> AlgebraError {
    AlgebraError::IllFormedPresentation {
        variable: variable.to_string(),
        reason: reason.into(),
    }
}

impl Algebra {
    pub fn build(pres: Presentation) -> Result<Algebra, AlgebraError> {
        let order = pres.base.order();
        if order == 0 {
            return Err(ill(
                pres.base.generator().unwrap_or("base"),
                "nilpotency order must be at least 1",
            ));
        }
        if pres.a_prefix > pres.vars.len() {
            return Err(ill("a_prefix", "prefix is longer than the variable list"));
        }
        let n = pres.vars.len();
        let mut alg = Algebra {
            field: pres.field,
            base: pres.base.clone(),
            order,
            names: pres.vars.iter().map(|v| v.name.clone()).collect(),
            degrees: pres.vars.iter().map(|v| v.degree).collect(),
            diffs: Vec::with_capacity(n),
            a_prefix: pres.a_prefix,
            cap: pres.cap.max(0),
            bases: Vec::new(),
            non_a: Vec::new(),
            index: HashMap::new(),
        };
        for (i, v) in pres.vars.iter().enumerate() {
            if v.degree == 0 {
                return Err(ill(&v.name, "variables must have positive degree"));
            }
            if alg.names[..i].contains(&v.name) || Some(v.name.as_str()) == pres.base.generator() {
                return Err(ill(&v.name, "duplicate name"));
            }
            let mut d = Element::zero();
            for (c, exps) in &v.diff {
                if c.field() != pres.field {
                    return Err(ill(&v.name, "coefficient from a different field"));
                }
                if exps.len() > n + 1 || exps.iter().skip(i + 1).any(|&e| e != 0) {
                    return Err(ill(
                        &v.name,
                        "differential must only involve earlier variables",
                    ));
                }
                let mut m = exps.clone();
                m.resize(n + 1, 0);
                let m = Monomial(m);
                if !alg.is_normal(&m) {
                    continue;
                }
                if alg.monomial_degree(&m) != v.degree as i64 - 1 {
                    return Err(ill(
                        &v.name,
                        format!("differential must have degree {}", v.degree - 1),
                    ));
                }
                d.add_term(m, c.clone());
            }
            alg.diffs.push(d);
        }
        for i in 0..n {
            let dd = alg.diff(&alg.diffs[i].clone());
            if !dd.is_zero() {
                return Err(ill(&alg.names[i], "d² is nonzero"));
            }
        }
        for d in 0..=alg.cap {
            let b = alg.enumerate(d);
            for (i, m) in b.iter().enumerate() {
                alg.index.insert(m.clone(), i);
            }
            let non_a = b.iter().filter(|m| alg.is_non_a(m)).cloned().collect();
            alg.bases.push(b);
            alg.non_a.push(non_a);
        }
        Ok(alg)
    }

    fn enumerate(&self, d: i64) -> Vec<Monomial> {
        fn rec(alg: &Algebra, var: usize, left: i64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if var == alg.degrees.len() {
                if left == 0 {
                    out.push(Monomial(cur.clone()));
                }
                return;
            }
            let deg = alg.degrees[var] as i64;
            let max = if deg % 2 == 1 {
                1.min(left / deg)
            } else {
                left / deg
            };
            for e in 0..=max {
                cur[var + 1] = e as u32;
                rec(alg, var + 1, left - e * deg, cur, out);
            }
            cur[var + 1] = 0;
        }
        let mut out = Vec::new();
        let mut cur = vec![0; self.degrees.len() + 1];
        for p in 0..self.order {
            cur[0] = p;
            rec(self, 0, d, &mut cur, &mut out);
        }
        out.sort();
        out
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn base(&self) -> &BaseRing {
        &self.base
    }

    pub fn nvars(&self) -> usize {
        self.degrees.len()
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn var_degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn var_diff(&self, i: usize) -> &Element {
        &self.diffs[i]
    }

    pub fn a_prefix(&self) -> usize {
        self.a_prefix
    }

    pub fn cap(&self) -> i64 {
        self.cap
    }

    fn is_odd_var(&self, i: usize) -> bool {
        self.degrees[i] % 2 == 1
    }

    fn is_normal(&self, m: &Monomial) -> bool {
        m.base_power() < self.order
            && (0..self.nvars()).all(|i| !self.is_odd_var(i) || m.exponent(i) <= 1)
    }

    pub fn monomial_degree(&self, m: &Monomial) -> i64 {
        (0..self.nvars())
            .map(|i| m.exponent(i) as i64 * self.degrees[i] as i64)
            .sum()
    }

    /// `m` lies in `A`: no variable beyond the prefix occurs.
    pub fn is_a_monomial(&self, m: &Monomial) -> bool {
        (self.a_prefix..self.nvars()).all(|i| m.exponent(i) == 0)
    }

    /// `m` is a product of non-`A` variables only (the unit included).
    pub fn is_non_a(&self, m: &Monomial) -> bool {
        m.base_power() == 0 && (0..self.a_prefix).all(|i| m.exponent(i) == 0)
    }

    /// Splits `m = a·w` with `a ∈ A` and `w` a non-`A` monomial (no sign arises).
    pub fn split_a(&self, m: &Monomial) -> (Monomial, Monomial) {
        let mut a = m.clone();
        let mut w = m.clone();
        for i in 0..=self.nvars() {
            if i == 0 || i <= self.a_prefix {
                w.0[i] = 0;
            } else {
                a.0[i] = 0;
            }
        }
        (a, w)
    }

    /// `B` is finite over `A` exactly when every non-`A` variable is odd.
    pub fn finite_over_a(&self) -> bool {
        (self.a_prefix..self.nvars()).all(|i| self.is_odd_var(i))
    }

    pub fn one_monomial(&self) -> Monomial {
        Monomial::one(self.nvars())
    }

    pub fn one(&self) -> Element {
        Element::monomial(self.one_monomial(), self.field.one())
    }

    pub fn constant(&self, c: Scalar) -> Element {
        Element::monomial(self.one_monomial(), c)
    }

    /// The monomial `m` as an element with coefficient one.
    pub fn monomial_element(&self, m: &Monomial) -> Element {
        Element::monomial(m.clone(), self.field.one())
    }

    pub fn var(&self, i: usize) -> Element {
        let mut m = self.one_monomial();
        m.0[i + 1] = 1;
        Element::monomial(m, self.field.one())
    }

    /// The generator `a` of the base ring (zero over a field).
    pub fn base_gen(&self) -> Element {
        let mut m = self.one_monomial();
        m.0[0] = 1;
        if !self.is_normal(&m) {
            return Element::zero();
        }
        Element::monomial(m, self.field.one())
    }

    /// `u·v = ±w`, or `None` when the product vanishes. The flag is `true` for `−`.
    pub fn mul_monomials(&self, u: &Monomial, v: &Monomial) -> Option<(bool, Monomial)> {
        let n = self.nvars();
        let mut w = Vec::with_capacity(n + 1);
        w.push(u.base_power() + v.base_power());
        if w[0] >= self.order {
            return None;
        }
        let mut odd_u_above = 0usize;
        let mut sign = false;
        for i in (0..n).rev() {
            let (a, b) = (u.exponent(i), v.exponent(i));
            if self.is_odd_var(i) {
                if a + b > 1 {
                    return None;
                }
                if b == 1 && odd_u_above % 2 == 1 {
                    sign = !sign;
                }
                odd_u_above += a as usize;
            }
        }
        for i in 0..n {
            w.push(u.exponent(i) + v.exponent(i));
        }
        Some((sign, Monomial(w)))
    }

    fn check_owner(&self, x: &Element) -> Result<(), AlgebraError> {
        match x.terms().next() {
            Some((m, c)) if m.0.len() != self.nvars() + 1 || c.field() != self.field => {
                Err(AlgebraError::OwnerMismatch)
            }
            _ => Ok(()),
        }
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
        self.check_owner(x)?;
        self.check_owner(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    pub(crate) fn mul_unchecked(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::zero();
        for (u, a) in x.terms() {
            for (v, b) in y.terms() {
                if let Some((neg, w)) = self.mul_monomials(u, v) {
                    out.add_term(w, (a * b).signed(neg));
                }
            }
        }
        out
    }

    /// `m·x` for a monomial `m`.
    pub fn mul_monomial_left(&self, m: &Monomial, x: &Element) -> Element {
        let mut out = Element::zero();
        for (v, b) in x.terms() {
            if let Some((neg, w)) = self.mul_monomials(m, v) {
                out.add_term(w, b.clone().signed(neg));
            }
        }
        out
    }

    /// `x·m` for a monomial `m`.
    pub fn mul_monomial_right(&self, x: &Element, m: &Monomial) -> Element {
        let mut out = Element::zero();
        for (u, a) in x.terms() {
            if let Some((neg, w)) = self.mul_monomials(u, m) {
                out.add_term(w, a.clone().signed(neg));
            }
        }
        out
    }

    /// The differential of a monomial, by the Leibniz rule over its factors in order.
    pub fn diff_monomial(&self, m: &Monomial) -> Element {
        let n = self.nvars();
        let mut out = Element::zero();
        let mut prefix = self.one_monomial();
        prefix.0[0] = m.base_power();
        let mut prefix_deg = 0i64;
        for i in 0..n {
            let e = m.exponent(i);
            if e == 0 {
                continue;
            }
            let mut suffix = self.one_monomial();
            for j in i + 1..n {
                suffix.0[j + 1] = m.exponent(j);
            }
            let mut power = prefix.clone();
            power.0[i + 1] = e - 1;
            // d(x^e) = e·x^{e−1}·dx; x^{e−1} is even or trivial, so it commutes past dx
            let coeff = self.field.from_i64(e as i64).signed(prefix_deg % 2 == 1);
            let core = self.mul_monomial_left(&power, &self.diffs[i]);
            let term = self.mul_monomial_right(&core, &suffix);
            out.add_scaled(&term, &coeff);
            prefix.0[i + 1] = e;
            prefix_deg += e as i64 * self.degrees[i] as i64;
        }
        out
    }

    pub fn diff(&self, x: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in x.terms() {
            out.add_scaled(&self.diff_monomial(m), c);
        }
        out
    }

    /// Common degree of all terms; `None` for the zero element.
    pub fn degree(&self, x: &Element) -> Result<Option<i64>, AlgebraError> {
        let mut deg = None;
        for (m, _) in x.terms() {
            let d = self.monomial_degree(m);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Err(AlgebraError::NotHomogeneous),
                _ => {}
            }
        }
        Ok(deg)
    }

    pub fn check_degree(&self, d: i64) -> Result<(), AlgebraError> {
        if d > self.cap {
            return Err(AlgebraError::CapExceeded {
                requested: d,
                cap: self.cap,
            });
        }
        Ok(())
    }

    /// The k-basis of `B_d` in lexicographic exponent order.
    pub fn basis(&self, d: i64) -> Result<&[Monomial], AlgebraError> {
        if d < 0 {
            return Ok(&[]);
        }
        self.check_degree(d)?;
        Ok(&self.bases[d as usize])
    }

    pub fn dim(&self, d: i64) -> Result<usize, AlgebraError> {
        Ok(self.basis(d)?.len())
    }

    /// Non-`A` monomials of degree `d`: a basis of `B` as a free `A`-module.
    pub fn non_a_basis(&self, d: i64) -> Result<&[Monomial], AlgebraError> {
        if d < 0 {
            return Ok(&[]);
        }
        self.check_degree(d)?;
        Ok(&self.non_a[d as usize])
    }

    /// Position of a normal-form monomial within the basis of its degree.
    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of a homogeneous element in the basis of its degree.
    pub fn to_vec(&self, x: &Element) -> SparseVec {
        x.terms()
            .map(|(m, c)| {
                (
                    self.index_of(m).expect("monomial within the degree cap"),
                    c.clone(),
                )
            })
            .collect()
    }

    pub fn from_vec(&self, v: &SparseVec, d: i64) -> Result<Element, AlgebraError> {
        let basis = self.basis(d)?;
        let mut out = Element::zero();
        for (i, c) in v.iter() {
            out.add_term(basis[i].clone(), c.clone());
        }
        Ok(out)
    }

    /// The element of degree `d` with the given integer coordinates (extra entries ignored).
    pub fn element_from_coeffs(&self, d: i64, coeffs: &[i64]) -> Result<Element, AlgebraError> {
        let basis = self.basis(d)?;
        let mut out = Element::zero();
        for (m, &c) in basis.iter().zip(coeffs) {
            out.add_term(m.clone(), self.field.from_i64(c));
        }
        Ok(out)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        let mut push = |name: &str, e: u32| match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        };
        if let Some(g) = self.base.generator() {
            push(g, m.base_power());
        }
        for i in 0..self.nvars() {
            push(&self.names[i], m.exponent(i));
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    pub fn format_element(&self, x: &Element) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in x.terms().enumerate() {
            let c = c.to_string();
            let (neg, mag) = match c.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, c),
            };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = self.format_monomial(m);
            match (mag.as_str(), mono.as_str()) {
                (_, "1") => s.push_str(&mag),
                ("1", _) => s.push_str(&mono),
                _ => {
                    let _ = write!(s, "{mag}*{mono}");
                }
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(name: &str, degree: u32, diff: Vec<(Scalar, Vec<u32>)>) -> VarSpec {
        VarSpec {
            name: name.into(),
            degree,
            diff,
        }
    }

    fn exterior(f: Field) -> Algebra {
        Algebra::build(Presentation {
            field: f,
            base: BaseRing::Field,
            vars: vec![spec("y", 1, vec![])],
            a_prefix: 0,
            cap: 8,
        })
        .unwrap()
    }

    fn tate(f: Field) -> Algebra {
        // R⟨X, Y | dX = a, dY = aX⟩ over R = k[a]/(a²)
        Algebra::build(Presentation {
            field: f,
            base: BaseRing::Truncated {
                generator: "a".into(),
                order: 2,
            },
            vars: vec![
                spec("X", 1, vec![(f.one(), vec![1])]),
                spec("Y", 2, vec![(f.one(), vec![1, 1])]),
            ],
            a_prefix: 0,
            cap: 8,
        })
        .unwrap()
    }

    #[test]
    fn base_field_only() {
        let alg = Algebra::build(Presentation {
            field: Field::Rational,
            base: BaseRing::Field,
            vars: vec![],
            a_prefix: 0,
            cap: 4,
        })
        .unwrap();
        assert_eq!(alg.dim(0).unwrap(), 1);
        assert_eq!(alg.dim(1).unwrap(), 0);
    }

    #[test]
    fn exterior_bases() {
        let alg = exterior(Field::Rational);
        assert_eq!(alg.dim(0).unwrap(), 1);
        assert_eq!(alg.dim(1).unwrap(), 1);
        assert_eq!(alg.dim(2).unwrap(), 0);
        let y = alg.var(0);
        assert!(alg.mul(&y, &y).unwrap().is_zero());
        let one = alg.one();
        let p = alg.mul(&one.add(&y), &one.sub(&y)).unwrap();
        assert_eq!(p, one);
    }

    #[test]
    fn truncated_base_basis() {
        let alg = Algebra::build(Presentation {
            field: Field::Rational,
            base: BaseRing::Truncated {
                generator: "q".into(),
                order: 2,
            },
            vars: vec![],
            a_prefix: 0,
            cap: 2,
        })
        .unwrap();
        assert_eq!(alg.basis(0).unwrap().len(), 2);
        assert!(alg.mul(&alg.base_gen(), &alg.base_gen()).unwrap().is_zero());
    }

    #[test]
    fn tate_differentials() {
        let f = Field::Rational;
        let alg = tate(f);
        let (x, y, a) = (alg.var(0), alg.var(1), alg.base_gen());
        // d(aX) = a² = 0
        assert!(alg.diff(&alg.mul(&a, &x).unwrap()).is_zero());
        // d(XY) = aY − X·aX = aY
        let xy = alg.mul(&x, &y).unwrap();
        assert_eq!(alg.diff(&xy), alg.mul(&a, &y).unwrap());
        // X·Y = Y·X since Y is even
        assert_eq!(xy, alg.mul(&y, &x).unwrap());
        assert_eq!(alg.basis(3).unwrap().len(), 2); // XY, aXY
    }

    #[test]
    fn even_variable_powers() {
        let f = Field::Rational;
        let alg = tate(f);
        let y = alg.var(1);
        let y2 = alg.mul(&y, &y).unwrap();
        // d(Y²) = 2·Y·aX
        let expected = alg
            .mul(&alg.mul(&y, &alg.base_gen()).unwrap(), &alg.var(0))
            .unwrap()
            .scaled(&f.from_i64(2));
        assert_eq!(alg.diff(&y2), expected);
    }

    #[test]
    fn rejects_bad_presentations() {
        let f = Field::Rational;
        let wrong_degree = Algebra::build(Presentation {
            field: f,
            base: BaseRing::Truncated {
                generator: "a".into(),
                order: 2,
            },
            vars: vec![spec("X", 2, vec![(f.one(), vec![1])])],
            a_prefix: 0,
            cap: 4,
        });
        assert!(
            matches!(wrong_degree, Err(AlgebraError::IllFormedPresentation { ref variable, .. }) if variable == "X")
        );

        // dY = X·Z with dX = dZ = a gives d²Y = aZ − aX ≠ 0
        let bad_square = Algebra::build(Presentation {
            field: f,
            base: BaseRing::Truncated {
                generator: "a".into(),
                order: 2,
            },
            vars: vec![
                spec("X", 1, vec![(f.one(), vec![1])]),
                spec("Z", 1, vec![(f.one(), vec![1])]),
                spec("Y", 3, vec![(f.one(), vec![0, 1, 1])]),
            ],
            a_prefix: 0,
            cap: 4,
        });
        assert!(
            matches!(bad_square, Err(AlgebraError::IllFormedPresentation { ref variable, .. }) if variable == "Y")
        );

        let later = Algebra::build(Presentation {
            field: f,
            base: BaseRing::Field,
            vars: vec![
                spec("X", 1, vec![(f.one(), vec![0, 0, 1])]),
                spec("Y", 1, vec![]),
            ],
            a_prefix: 0,
            cap: 4,
        });
        assert!(later.is_err());
    }

    #[test]
    fn degree_cap_is_enforced() {
        let alg = exterior(Field::Rational);
        assert!(matches!(
            alg.basis(9),
            Err(AlgebraError::CapExceeded {
                requested: 9,
                cap: 8
            })
        ));
    }

    #[test]
    fn split_into_a_and_free_parts() {
        let f = Field::Rational;
        let alg = Algebra::build(Presentation {
            field: f,
            base: BaseRing::Truncated {
                generator: "a".into(),
                order: 2,
            },
            vars: vec![spec("X", 1, vec![(f.one(), vec![1])]), spec("Y", 1, vec![])],
            a_prefix: 1,
            cap: 4,
        })
        .unwrap();
        let m = Monomial(vec![1, 1, 1]);
        let (a, w) = alg.split_a(&m);
        assert_eq!(a, Monomial(vec![1, 1, 0]));
        assert_eq!(w, Monomial(vec![0, 0, 1]));
        assert!(alg.finite_over_a());
        assert_eq!(alg.non_a_basis(1).unwrap().len(), 1);
    }

    #[test]
    fn formatting() {
        let alg = tate(Field::Rational);
        let x = alg
            .mul(&alg.base_gen(), &alg.var(0))
            .unwrap()
            .sub(&alg.var(0).scaled(&Field::Rational.from_i64(2)));
        assert_eq!(alg.format_element(&x), "-2*X + a*X");
    }
}
