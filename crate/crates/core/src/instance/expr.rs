//! A tiny arithmetic grammar: sums of signed products of integers,
//! fractions, names, powers and parenthesised sums.

use super::InstanceError;

#[derive(Clone, Debug, PartialEq)]
pub enum Ast {
    Num(i64, i64),
    Name(String, usize),
    Pow(Box<Ast>, u32),
    Neg(Box<Ast>),
    Sum(Vec<Ast>),
    Product(Vec<Ast>),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Sym(char),
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
}

fn lex(src: &str, line: usize, col0: usize) -> Result<Vec<(Tok, usize)>, InstanceError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n = s
                .parse()
                .map_err(|_| InstanceError::syntax(line, col, "integer literal too large"))?;
            out.push((Tok::Int(n), col));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len()
                && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
            {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*/^()·".contains(c) {
            out.push((Tok::Sym(if c == '·' { '*' } else { c }), col));
            i += 1;
        } else {
            return Err(InstanceError::syntax(
                line,
                col,
                format!("unexpected character `{c}`"),
            ));
        }
    }
    Ok(out)
}

/// Parses `src`, which starts at 1-based column `col0` of `line`.
pub fn parse(src: &str, line: usize, col0: usize) -> Result<Ast, InstanceError> {
    let toks = lex(src, line, col0)?;
    let mut p = Lexer {
        toks,
        pos: 0,
        line,
        end_col: col0 + src.chars().count(),
    };
    let ast = p.sum()?;
    if let Some((_, col)) = p.toks.get(p.pos) {
        return Err(InstanceError::syntax(
            line,
            *col,
            "unexpected trailing input",
        ));
    }
    Ok(ast)
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Ast, InstanceError> {
        let mut terms = Vec::new();
        let mut neg = self.eat('-');
        if !neg {
            self.eat('+');
        }
        loop {
            let t = self.product()?;
            terms.push(if neg { Ast::Neg(Box::new(t)) } else { t });
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Ast::Sum(terms)
        })
    }

    fn product(&mut self) -> Result<Ast, InstanceError> {
        let mut factors = vec![self.power()?];
        while self.eat('*') {
            factors.push(self.power()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            Ast::Product(factors)
        })
    }

    fn power(&mut self) -> Result<Ast, InstanceError> {
        let base = self.atom()?;
        if self.eat('^') {
            let col = self.col();
            match self.toks.get(self.pos) {
                Some((Tok::Int(n), _)) if *n >= 0 && *n <= u32::MAX as i64 => {
                    let n = *n as u32;
                    self.pos += 1;
                    Ok(Ast::Pow(Box::new(base), n))
                }
                _ => Err(InstanceError::syntax(
                    self.line,
                    col,
                    "expected a non-negative exponent",
                )),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Ast, InstanceError> {
        let col = self.col();
        match self.toks.get(self.pos).cloned() {
            Some((Tok::Int(n), _)) => {
                self.pos += 1;
                if self.eat('/') {
                    let col = self.col();
                    match self.toks.get(self.pos) {
                        Some((Tok::Int(d), _)) if *d != 0 => {
                            let d = *d;
                            self.pos += 1;
                            Ok(Ast::Num(n, d))
                        }
                        _ => Err(InstanceError::syntax(
                            self.line,
                            col,
                            "expected a nonzero denominator",
                        )),
                    }
                } else {
                    Ok(Ast::Num(n, 1))
                }
            }
            Some((Tok::Ident(s), c)) => {
                self.pos += 1;
                Ok(Ast::Name(s, c))
            }
            Some((Tok::Sym('('), _)) => {
                self.pos += 1;
                let inner = self.sum()?;
                if !self.eat(')') {
                    return Err(InstanceError::syntax(self.line, self.col(), "expected `)`"));
                }
                Ok(inner)
            }
            Some((Tok::Sym('-'), _)) => {
                self.pos += 1;
                Ok(Ast::Neg(Box::new(self.power()?)))
            }
            _ => Err(InstanceError::syntax(
                self.line,
                col,
                "expected a number, name or `(`",
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_products_and_sums() {
        let a = parse("2*x - y^2 + 1/3", 1, 1).unwrap();
        match a {
            Ast::Sum(ts) => assert_eq!(ts.len(), 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse("e0*(a + y)", 1, 1).unwrap(),
            Ast::Product(_)
        ));
    }

    #[test]
    fn reports_columns() {
        let err = parse("x + $", 4, 10).unwrap_err();
        assert_eq!(
            err,
            InstanceError::syntax(4, 14, "unexpected character `$`")
        );
        let err = parse("x +", 2, 1).unwrap_err();
        assert!(matches!(
            err,
            InstanceError::Syntax {
                line: 2,
                column: 4,
                ..
            }
        ));
    }
}
