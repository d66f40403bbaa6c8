//! The line-oriented instance format.
//!
//! ```text
//! [base]
//! field = Q                # or Fp, Fp:<p>
//! ring = k[a]/(a^2)        # or k
//!
//! [algebra]
//! var X 1 = a
//! a_prefix = 0
//!
//! [module N]
//! gen e0 0
//! gen e1 1
//! d e1 = e0*a
//!
//! [map f]
//! from N
//! to N
//! shift -1
//! e0 -> e1*a
//!
//! [limits]
//! max_degree = 16
//! max_tensor = 4
//! lbound = 4
//! ```
//!
//! A module section either lists generators and differentials or holds one
//! construction line: `free D…`, `cone MAP`, `sum M…` or `shift M I`.

mod expr;

use std::path::Path;
use std::sync::Arc;

use thiserror::Error;

use crate::dgalg::{Algebra, BaseRing, Element, Presentation, VarSpec};
use crate::dgmod::{ChainMap, FreeElem, SemifreeModule};
use crate::exactlin::{Field, Scalar};
pub use expr::{parse as parse_expr, Ast};

/// The default prime of the `Fp` backend.
pub const DEFAULT_PRIME: u64 = 2_147_483_629;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {message}")]
    Semantic { line: usize, message: String },
    #[error("cannot read instance: {0}")]
    Io(String),
}

impl InstanceError {
    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        InstanceError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn semantic(line: usize, message: impl ToString) -> Self {
        InstanceError::Semantic {
            line,
            message: message.to_string(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Degree cap for algebra bases and every graded computation.
    pub max_degree: i64,
    /// Largest tensor power `L` examined by the battery.
    pub max_tensor: usize,
    /// Largest power `ℓ` tried for nilpotency of the obstruction.
    pub lbound: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_degree: 16,
            max_tensor: 4,
            lbound: 4,
        }
    }
}

/// Command-line overrides applied on top of the file.
#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    pub field: Option<Field>,
    pub max_degree: Option<i64>,
    pub max_tensor: Option<usize>,
    pub lbound: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub field: Field,
    pub algebra: Arc<Algebra>,
    pub modules: Vec<(String, Arc<SemifreeModule>)>,
    pub maps: Vec<(String, ChainMap)>,
    pub limits: Limits,
}

impl Instance {
    pub fn module(&self, name: &str) -> Option<&Arc<SemifreeModule>> {
        self.modules.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn map(&self, name: &str) -> Option<&ChainMap> {
        self.maps.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    /// The module analysed by default: the last one defined.
    pub fn primary(&self) -> Option<(&str, &Arc<SemifreeModule>)> {
        self.modules.last().map(|(n, m)| (n.as_str(), m))
    }
}

/// `Q`, `Fp` (the default prime) or `Fp:<p>`.
pub fn parse_field(s: &str) -> Result<Field, String> {
    match s.trim() {
        "Q" | "QQ" => Ok(Field::Rational),
        "Fp" => Field::prime(DEFAULT_PRIME).map_err(|e| e.to_string()),
        other => {
            let p = other
                .strip_prefix("Fp:")
                .ok_or_else(|| format!("unknown field `{other}` (expected Q, Fp or Fp:<p>)"))?;
            let p: u64 = p.parse().map_err(|_| format!("`{p}` is not an integer"))?;
            Field::prime(p).map_err(|e| e.to_string())
        }
    }
}

struct Line {
    no: usize,
    /// Column of the first character of `text`.
    col: usize,
    text: String,
}

struct Section {
    line: usize,
    kind: String,
    arg: Option<String>,
    body: Vec<Line>,
}

fn split_sections(src: &str) -> Result<Vec<Section>, InstanceError> {
    let mut sections: Vec<Section> = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let no = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let col = content.chars().take_while(|c| c.is_whitespace()).count() + 1;
        if let Some(head) = trimmed.strip_prefix('[') {
            let head = head.strip_suffix(']').ok_or_else(|| {
                InstanceError::syntax(no, col + trimmed.chars().count(), "expected `]`")
            })?;
            let mut words = head.split_whitespace();
            let kind = words.next().unwrap_or("").to_string();
            let arg = words.next().map(str::to_string);
            if words.next().is_some() {
                return Err(InstanceError::syntax(
                    no,
                    col,
                    "section headers take at most one name",
                ));
            }
            match (kind.as_str(), &arg) {
                ("base" | "algebra" | "limits", None) | ("module" | "map", Some(_)) => {}
                _ => {
                    return Err(InstanceError::syntax(
                        no,
                        col,
                        format!("unknown section `[{head}]`"),
                    ))
                }
            }
            sections.push(Section {
                line: no,
                kind,
                arg,
                body: Vec::new(),
            });
        } else {
            let sec = sections.last_mut().ok_or_else(|| {
                InstanceError::syntax(no, col, "content before the first section")
            })?;
            sec.body.push(Line {
                no,
                col,
                text: trimmed.to_string(),
            });
        }
    }
    Ok(sections)
}

fn key_value(l: &Line) -> Result<(&str, &str), InstanceError> {
    let (k, v) = l
        .text
        .split_once('=')
        .ok_or_else(|| InstanceError::syntax(l.no, l.col, "expected `key = value`"))?;
    Ok((k.trim(), v.trim()))
}

fn parse_int<T: std::str::FromStr>(l: &Line, s: &str) -> Result<T, InstanceError> {
    s.trim()
        .parse()
        .map_err(|_| InstanceError::syntax(l.no, l.col, format!("`{s}` is not a valid integer")))
}

/// Column of the text following `prefix` inside the line.
fn col_after(l: &Line, prefix_len: usize) -> usize {
    let rest = &l.text[prefix_len..];
    l.col
        + l.text[..prefix_len].chars().count()
        + (rest.chars().count() - rest.trim_start().chars().count())
}

fn parse_ring(l: &Line, v: &str) -> Result<BaseRing, InstanceError> {
    let compact: String = v.chars().filter(|c| !c.is_whitespace()).collect();
    if compact == "k" {
        return Ok(BaseRing::Field);
    }
    let bad = || {
        InstanceError::syntax(
            l.no,
            l.col,
            format!("expected `k` or `k[a]/(a^N)`, found `{v}`"),
        )
    };
    let inner = compact.strip_prefix("k[").ok_or_else(bad)?;
    let (gen, rest) = inner.split_once(']').ok_or_else(bad)?;
    let rel = rest
        .strip_prefix("/(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(bad)?;
    let (g2, order) = rel.split_once('^').ok_or_else(bad)?;
    if g2 != gen || gen.is_empty() {
        return Err(bad());
    }
    let order: u32 = order.parse().map_err(|_| bad())?;
    Ok(BaseRing::Truncated {
        generator: gen.to_string(),
        order,
    })
}

/// Value of an expression: a scalar-algebra element or a module element.
enum Val {
    Alg(Element),
    Free(FreeElem),
}

struct Scope<'a> {
    alg: &'a Algebra,
    module: Option<&'a SemifreeModule>,
    line: usize,
}

impl Scope<'_> {
    fn err(&self, msg: impl ToString) -> InstanceError {
        InstanceError::semantic(self.line, msg)
    }

    fn scalar(&self, n: i64, d: i64) -> Result<Scalar, InstanceError> {
        self.alg.field().from_ratio(n, d).map_err(|e| self.err(e))
    }

    fn eval(&self, ast: &Ast) -> Result<Val, InstanceError> {
        let alg = self.alg;
        Ok(match ast {
            Ast::Num(n, d) => Val::Alg(alg.constant(self.scalar(*n, *d)?)),
            Ast::Name(s, col) => {
                if let Some(i) = self.module.and_then(|m| m.index_of(s)) {
                    Val::Free(FreeElem::from([(i, alg.one())]))
                } else if let Some(i) = alg.var_index(s) {
                    Val::Alg(alg.var(i))
                } else if alg.base().generator() == Some(s.as_str()) {
                    Val::Alg(alg.base_gen())
                } else {
                    return Err(InstanceError::syntax(
                        self.line,
                        *col,
                        format!("unknown name `{s}`"),
                    ));
                }
            }
            Ast::Pow(b, e) => match self.eval(b)? {
                Val::Alg(x) => {
                    let mut acc = alg.one();
                    for _ in 0..*e {
                        acc = alg.mul(&acc, &x).map_err(|e| self.err(e))?;
                    }
                    Val::Alg(acc)
                }
                Val::Free(_) => return Err(self.err("cannot raise a module element to a power")),
            },
            Ast::Neg(x) => match self.eval(x)? {
                Val::Alg(x) => Val::Alg(x.negated()),
                Val::Free(x) => Val::Free(x.into_iter().map(|(k, b)| (k, b.negated())).collect()),
            },
            Ast::Sum(ts) => {
                let mut acc = Val::Alg(Element::zero());
                for t in ts {
                    acc = self.add(acc, self.eval(t)?)?;
                }
                acc
            }
            Ast::Product(fs) => {
                let mut acc = Val::Alg(alg.one());
                for f in fs {
                    acc = self.mul(acc, self.eval(f)?)?;
                }
                acc
            }
        })
    }

    fn add(&self, x: Val, y: Val) -> Result<Val, InstanceError> {
        Ok(match (x, y) {
            (Val::Alg(a), Val::Alg(b)) => Val::Alg(a.add(&b)),
            (Val::Free(mut a), Val::Free(b)) => {
                for (k, v) in b {
                    crate::dgmod::free_add_into(&mut a, k, &v);
                }
                Val::Free(a)
            }
            (Val::Alg(a), Val::Free(b)) | (Val::Free(b), Val::Alg(a)) if a.is_zero() => {
                Val::Free(b)
            }
            _ => return Err(self.err("cannot add a module element and an algebra element")),
        })
    }

    fn mul(&self, x: Val, y: Val) -> Result<Val, InstanceError> {
        let alg = self.alg;
        Ok(match (x, y) {
            (Val::Alg(a), Val::Alg(b)) => Val::Alg(alg.mul(&a, &b).map_err(|e| self.err(e))?),
            (Val::Free(v), Val::Alg(b)) => {
                let mut out = FreeElem::new();
                for (k, c) in v {
                    let p = alg.mul(&c, &b).map_err(|e| self.err(e))?;
                    crate::dgmod::free_add_into(&mut out, k, &p);
                }
                Val::Free(out)
            }
            (Val::Alg(a), Val::Free(v)) => {
                // a·(e_λ c) = (−1)^{|a|(|e_λ|+|c|)} e_λ·(c a)
                let module = self.module.expect("module elements need a module scope");
                let mut out = FreeElem::new();
                for (m, s) in a.terms() {
                    let am = Element::monomial(m.clone(), s.clone());
                    for (&k, c) in &v {
                        for (m2, s2) in c.terms() {
                            let cm = Element::monomial(m2.clone(), s2.clone());
                            let deg = module.degree(k) + alg.monomial_degree(m2);
                            let odd = alg.monomial_degree(m) % 2 != 0 && deg % 2 != 0;
                            let p = alg.mul(&cm, &am).map_err(|e| self.err(e))?;
                            let p = if odd { p.negated() } else { p };
                            crate::dgmod::free_add_into(&mut out, k, &p);
                        }
                    }
                }
                Val::Free(out)
            }
            (Val::Free(_), Val::Free(_)) => {
                return Err(self.err("cannot multiply two module elements"))
            }
        })
    }

    fn algebra_expr(&self, src: &str, col: usize) -> Result<Element, InstanceError> {
        match self.eval(&expr::parse(src.trim_start(), self.line, col)?)? {
            Val::Alg(x) => Ok(x),
            Val::Free(_) => Err(self.err("expected an algebra element")),
        }
    }

    fn module_expr(&self, src: &str, col: usize) -> Result<FreeElem, InstanceError> {
        match self.eval(&expr::parse(src.trim_start(), self.line, col)?)? {
            Val::Free(x) => Ok(x),
            Val::Alg(x) if x.is_zero() => Ok(FreeElem::new()),
            Val::Alg(_) => Err(self.err("expected a module element")),
        }
    }
}

pub fn parse_instance_file(path: &Path, opts: &ParseOptions) -> Result<Instance, InstanceError> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| InstanceError::Io(format!("{}: {e}", path.display())))?;
    parse_instance(&src, opts)
}

pub fn parse_instance(src: &str, opts: &ParseOptions) -> Result<Instance, InstanceError> {
    let sections = split_sections(src)?;
    let mut field = None;
    let mut base = BaseRing::Field;
    let mut limits = Limits::default();
    for sec in &sections {
        match sec.kind.as_str() {
            "base" => {
                for l in &sec.body {
                    match key_value(l)? {
                        ("field", v) => {
                            field =
                                Some(parse_field(v).map_err(|e| InstanceError::semantic(l.no, e))?)
                        }
                        ("ring", v) => base = parse_ring(l, v)?,
                        (k, _) => {
                            return Err(InstanceError::syntax(
                                l.no,
                                l.col,
                                format!("unknown key `{k}`"),
                            ))
                        }
                    }
                }
            }
            "limits" => {
                for l in &sec.body {
                    match key_value(l)? {
                        ("max_degree", v) => limits.max_degree = parse_int(l, v)?,
                        ("max_tensor", v) => limits.max_tensor = parse_int(l, v)?,
                        ("lbound", v) => limits.lbound = parse_int(l, v)?,
                        (k, _) => {
                            return Err(InstanceError::syntax(
                                l.no,
                                l.col,
                                format!("unknown key `{k}`"),
                            ))
                        }
                    }
                }
            }
            _ => {}
        }
    }
    let field = opts.field.or(field).unwrap_or(Field::Rational);
    if let Some(d) = opts.max_degree {
        limits.max_degree = d;
    }
    if let Some(t) = opts.max_tensor {
        limits.max_tensor = t;
    }
    if let Some(l) = opts.lbound {
        limits.lbound = l;
    }

    let algebra = Arc::new(build_algebra(&sections, field, base, limits.max_degree)?);
    let mut inst = Instance {
        field,
        algebra,
        modules: Vec::new(),
        maps: Vec::new(),
        limits,
    };
    for sec in &sections {
        let name = sec.arg.clone().unwrap_or_default();
        let taken = inst.module(&name).is_some() || inst.map(&name).is_some();
        match sec.kind.as_str() {
            "module" | "map" if taken => {
                return Err(InstanceError::semantic(
                    sec.line,
                    format!("`{name}` is defined twice"),
                ));
            }
            "module" => {
                let m = build_module(&inst, sec)?;
                inst.modules.push((name, Arc::new(m)));
            }
            "map" => {
                let f = build_map(&inst, sec)?;
                inst.maps.push((name, f));
            }
            _ => {}
        }
    }
    Ok(inst)
}

fn build_algebra(
    sections: &[Section],
    field: Field,
    base: BaseRing,
    cap: i64,
) -> Result<Algebra, InstanceError> {
    let mut vars: Vec<VarSpec> = Vec::new();
    let mut a_prefix = 0;
    let mut last_line = 0;
    for sec in sections.iter().filter(|s| s.kind == "algebra") {
        last_line = sec.line;
        for l in &sec.body {
            last_line = l.no;
            if let Some(rest) = l.text.strip_prefix("var ") {
                let (head, diff) = match rest.split_once('=') {
                    Some((h, d)) => (h, Some(d)),
                    None => (rest, None),
                };
                let words: Vec<&str> = head.split_whitespace().collect();
                if words.len() != 2 {
                    return Err(InstanceError::syntax(
                        l.no,
                        l.col,
                        "expected `var NAME DEGREE [= DIFF]`",
                    ));
                }
                let degree: u32 = parse_int(l, words[1])?;
                let diff = match diff {
                    None => Vec::new(),
                    Some(src) => {
                        let col = col_after(l, l.text.len() - src.len());
                        let partial = Algebra::build(Presentation {
                            field,
                            base: base.clone(),
                            vars: vars.clone(),
                            a_prefix: 0,
                            cap: degree as i64 - 1,
                        })
                        .map_err(|e| InstanceError::semantic(l.no, e))?;
                        let scope = Scope {
                            alg: &partial,
                            module: None,
                            line: l.no,
                        };
                        let x = scope.algebra_expr(src, col)?;
                        x.terms().map(|(m, c)| (c.clone(), m.0.clone())).collect()
                    }
                };
                vars.push(VarSpec {
                    name: words[0].to_string(),
                    degree,
                    diff,
                });
            } else {
                match key_value(l)? {
                    ("a_prefix", v) => a_prefix = parse_int(l, v)?,
                    (k, _) => {
                        return Err(InstanceError::syntax(
                            l.no,
                            l.col,
                            format!("unknown key `{k}`"),
                        ))
                    }
                }
            }
        }
    }
    Algebra::build(Presentation {
        field,
        base,
        vars,
        a_prefix,
        cap,
    })
    .map_err(|e| InstanceError::semantic(last_line, e))
}

fn lookup_module<'a>(
    inst: &'a Instance,
    l: &Line,
    name: &str,
) -> Result<&'a Arc<SemifreeModule>, InstanceError> {
    inst.module(name)
        .ok_or_else(|| InstanceError::semantic(l.no, format!("unknown module `{name}`")))
}

fn build_module(inst: &Instance, sec: &Section) -> Result<SemifreeModule, InstanceError> {
    let alg = &inst.algebra;
    let first = sec.body.first();
    if let Some(l) = first {
        let words: Vec<&str> = l.text.split_whitespace().collect();
        let construction = match words[0] {
            "free" => Some(
                words[1..]
                    .iter()
                    .map(|w| parse_int(l, w))
                    .collect::<Result<Vec<i64>, _>>()
                    .map(|d| SemifreeModule::free(alg.clone(), &d))?,
            ),
            "cone" if words.len() == 2 => {
                let f = inst.map(words[1]).ok_or_else(|| {
                    InstanceError::semantic(l.no, format!("unknown map `{}`", words[1]))
                })?;
                Some(SemifreeModule::cone(f).map_err(|e| InstanceError::semantic(l.no, e))?)
            }
            "sum" if words.len() >= 2 => {
                let mut acc = SemifreeModule::zero(alg.clone());
                for w in &words[1..] {
                    acc = acc
                        .sum(lookup_module(inst, l, w)?)
                        .map_err(|e| InstanceError::semantic(l.no, e))?;
                }
                Some(acc)
            }
            "shift" if words.len() == 3 => {
                Some(lookup_module(inst, l, words[1])?.shift(parse_int(l, words[2])?))
            }
            "cone" | "sum" | "shift" => {
                return Err(InstanceError::syntax(l.no, l.col, "malformed construction"))
            }
            _ => None,
        };
        if let Some(m) = construction {
            if let Some(extra) = sec.body.get(1) {
                return Err(InstanceError::syntax(
                    extra.no,
                    extra.col,
                    "a construction must be the only line",
                ));
            }
            return Ok(m);
        }
    }

    let mut basis: Vec<(String, i64)> = Vec::new();
    for l in &sec.body {
        if let Some(rest) = l.text.strip_prefix("gen ") {
            let words: Vec<&str> = rest.split_whitespace().collect();
            if words.len() != 2 {
                return Err(InstanceError::syntax(
                    l.no,
                    l.col,
                    "expected `gen NAME DEGREE`",
                ));
            }
            if basis.iter().any(|(n, _)| n == words[0]) {
                return Err(InstanceError::semantic(
                    l.no,
                    format!("generator `{}` is listed twice", words[0]),
                ));
            }
            basis.push((words[0].to_string(), parse_int(l, words[1])?));
        }
    }
    // A provisional module carries the generator names and degrees for parsing.
    let scope_module = SemifreeModule::new(alg.clone(), basis.clone(), Vec::new())
        .expect("a free module is valid");
    let mut entries = Vec::new();
    let mut last = sec.line;
    for l in &sec.body {
        last = l.no;
        if l.text.starts_with("gen ") {
            continue;
        }
        let Some(rest) = l.text.strip_prefix("d ") else {
            return Err(InstanceError::syntax(
                l.no,
                l.col,
                "expected `gen NAME DEGREE` or `d NAME = EXPR`",
            ));
        };
        let (lhs, rhs) = rest
            .split_once('=')
            .ok_or_else(|| InstanceError::syntax(l.no, l.col, "expected `d NAME = EXPR`"))?;
        let lambda = scope_module.index_of(lhs.trim()).ok_or_else(|| {
            InstanceError::semantic(l.no, format!("unknown generator `{}`", lhs.trim()))
        })?;
        let scope = Scope {
            alg,
            module: Some(&scope_module),
            line: l.no,
        };
        let x = scope.module_expr(rhs, col_after(l, l.text.len() - rhs.len()))?;
        for (mu, b) in x {
            entries.push((mu, lambda, b));
        }
    }
    SemifreeModule::from_unordered(alg.clone(), basis, entries)
        .map_err(|e| InstanceError::semantic(last, e))
}

fn build_map(inst: &Instance, sec: &Section) -> Result<ChainMap, InstanceError> {
    let mut from = None;
    let mut to = None;
    let mut shift = 0i64;
    for l in &sec.body {
        if l.text.contains("->") {
            continue;
        }
        let words: Vec<&str> = l.text.split_whitespace().collect();
        match words.as_slice() {
            ["from", m] => from = Some(lookup_module(inst, l, m)?.clone()),
            ["to", m] => to = Some(lookup_module(inst, l, m)?.clone()),
            ["shift", s] => shift = parse_int(l, s)?,
            _ => {
                return Err(InstanceError::syntax(
                    l.no,
                    l.col,
                    "expected `from M`, `to N`, `shift S` or `GEN -> EXPR`",
                ))
            }
        }
    }
    let missing =
        |what: &str| InstanceError::semantic(sec.line, format!("map needs a `{what}` line"));
    let source = from.ok_or_else(|| missing("from"))?;
    let target = to.ok_or_else(|| missing("to"))?;
    let mut columns = vec![FreeElem::new(); source.rank()];
    for l in sec.body.iter().filter(|l| l.text.contains("->")) {
        let (lhs, rhs) = l.text.split_once("->").unwrap();
        let lambda = source.index_of(lhs.trim()).ok_or_else(|| {
            InstanceError::semantic(l.no, format!("unknown source generator `{}`", lhs.trim()))
        })?;
        let scope = Scope {
            alg: &inst.algebra,
            module: Some(&target),
            line: l.no,
        };
        columns[lambda] = scope.module_expr(rhs, col_after(l, l.text.len() - rhs.len()))?;
    }
    ChainMap::new(source, target, shift, columns).map_err(|e| InstanceError::semantic(sec.line, e))
}

#[cfg(test)]
mod tests;
