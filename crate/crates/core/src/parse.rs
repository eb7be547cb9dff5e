//! Text syntax for polynomials and module elements.
//!
//! Expressions use `+ - * / ^` and parentheses over integer literals and the
//! ring's variable names. Division is allowed by nonzero constants only. A
//! module element is `[f1, f2, ...]`; anything else is a rank-one element.

use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::coeff::{FieldSpec, Scalar};
use crate::error::{Error, Result};
use crate::polymod::{ModuleElement, Monomial, Polynomial};

/// A polynomial ring: coefficient field plus named variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    field: FieldSpec,
    vars: Vec<String>,
}

impl Ring {
    pub fn new(field: FieldSpec, vars: &[&str]) -> Result<Self> {
        Ring::from_names(field, vars.iter().map(|s| s.to_string()).collect())
    }

    pub fn from_names(field: FieldSpec, vars: Vec<String>) -> Result<Self> {
        for (i, v) in vars.iter().enumerate() {
            let valid = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::usage(format!("invalid variable name '{v}'")));
            }
            if vars[..i].contains(v) {
                return Err(Error::usage(format!("variable {v} declared twice")));
            }
        }
        Ok(Ring { field, vars })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::term(Monomial::var(self.nvars(), i), self.field.one())
    }

    pub fn constant(&self, c: Scalar) -> Polynomial {
        Polynomial::constant(c, self.nvars())
    }

    pub fn poly(&self, text: &str) -> Result<Polynomial> {
        self.poly_at(text, 1, 1)
    }

    pub fn element(&self, text: &str) -> Result<ModuleElement> {
        self.element_at(text, 1, 1)
    }

    /// Parses a polynomial located at `line`, `column` of a larger document.
    pub fn poly_at(&self, text: &str, line: usize, column: usize) -> Result<Polynomial> {
        let mut p = Parser::new(self, text, line, column);
        let out = p.expr()?;
        p.expect_end()?;
        Ok(out)
    }

    pub fn element_at(&self, text: &str, line: usize, column: usize) -> Result<ModuleElement> {
        let mut p = Parser::new(self, text, line, column);
        p.skip_ws();
        let out = if p.peek() == Some('[') {
            p.bump();
            let mut comps = vec![p.expr()?];
            loop {
                p.skip_ws();
                match p.peek() {
                    Some(',') => {
                        p.bump();
                        comps.push(p.expr()?);
                    }
                    Some(']') => {
                        p.bump();
                        break;
                    }
                    _ => return Err(p.error("expected ',' or ']'")),
                }
            }
            ModuleElement::new(comps)
        } else {
            ModuleElement::from_poly(p.expr()?)
        };
        p.expect_end()?;
        Ok(out)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (name, &e) in self.vars.iter().zip(m.exponents()) {
            match e {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }

    /// Canonical text, terms in descending degrevlex order.
    pub fn format_poly(&self, p: &Polynomial) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in p.terms().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { -c } else { c.clone() };
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if m.is_one() {
                let _ = write!(out, "{abs}");
            } else if abs.is_one() {
                out.push_str(&self.format_monomial(m));
            } else {
                let _ = write!(out, "{abs}*{}", self.format_monomial(m));
            }
        }
        out
    }

    /// Rank-one elements print as plain polynomials.
    pub fn format_element(&self, m: &ModuleElement) -> String {
        if m.rank() == 1 {
            return self.format_poly(m.component(0));
        }
        let comps: Vec<String> = m.components().iter().map(|p| self.format_poly(p)).collect();
        format!("[{}]", comps.join(", "))
    }
}

struct Parser<'a> {
    ring: &'a Ring,
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
}

impl<'a> Parser<'a> {
    fn new(ring: &'a Ring, text: &str, line: usize, column: usize) -> Self {
        Parser {
            ring,
            chars: text.chars().collect(),
            pos: 0,
            line,
            column,
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        self.error_at(self.pos, msg)
    }

    fn error_at(&self, pos: usize, msg: impl Into<String>) -> Error {
        Error::syntax(self.line, self.column + pos, msg)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        let mut acc = match self.peek() {
            Some('-') => {
                self.bump();
                -&self.term()?
            }
            Some('+') => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some('-') => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.bump();
                    acc = &acc * &self.power()?;
                }
                Some('/') => {
                    self.bump();
                    self.skip_ws();
                    let at = self.pos;
                    let d = self.power()?;
                    let c = constant_value(&d, self.ring.nvars())
                        .ok_or_else(|| self.error_at(at, "division by a non-constant"))?;
                    let inv = c
                        .and_then(|c| c.inv().ok())
                        .ok_or_else(|| self.error_at(at, "division by zero"))?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.bump();
        self.skip_ws();
        let at = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.error_at(at, "malformed exponent"));
        }
        let e: u32 = digits
            .parse()
            .map_err(|_| self.error_at(at, "malformed exponent"))?;
        Ok(base.pow(e, self.ring.nvars(), self.ring.field))
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn atom(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        let at = self.pos;
        match self.peek() {
            Some('(') => {
                self.bump();
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.bump();
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let n: BigInt = digits.parse().expect("digits parse as an integer");
                Ok(self.ring.constant(self.ring.field.from_bigint(&n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                while self
                    .peek()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[at..self.pos].iter().collect();
                match self.ring.var_index(&name) {
                    Some(i) => Ok(self.ring.var(i)),
                    None => Err(self.error_at(at, format!("unknown variable {name}"))),
                }
            }
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// `Some(Some(c))` for a nonzero constant, `Some(None)` for zero.
fn constant_value(p: &Polynomial, nvars: usize) -> Option<Option<Scalar>> {
    if p.is_zero() {
        return Some(None);
    }
    let one = Monomial::one(nvars);
    (p.len() == 1)
        .then(|| p.coefficient(&one).cloned().map(Some))
        .flatten()
}
