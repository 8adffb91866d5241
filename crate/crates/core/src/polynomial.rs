//! Real polynomials in several variables, applied coordinatewise to curves.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One monomial `c · x₁^e₁ ⋯ x_N^e_N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    #[serde(rename = "c")]
    pub coef: f64,
    #[serde(rename = "e")]
    pub exps: Vec<u32>,
}

impl Term {
    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    fn is_constant(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }
}

/// A polynomial in `arity` variables stored as a list of terms.
///
/// When `constant_term_allowed` is false no term may have the all-zero exponent
/// vector; generators of free algebras are tested with such polynomials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    arity: usize,
    constant_term_allowed: bool,
    terms: Vec<Term>,
}

/// Closed real interval used for range propagation.
pub type Interval = (f64, f64);

impl Polynomial {
    pub fn new(arity: usize, terms: Vec<Term>, constant_term_allowed: bool) -> Result<Self> {
        let p = Polynomial {
            arity,
            constant_term_allowed,
            terms,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.arity == 0 {
            return Err(Error::Structure("polynomial arity must be at least 1".into()));
        }
        for (i, t) in self.terms.iter().enumerate() {
            if t.exps.len() != self.arity {
                return Err(Error::Structure(format!(
                    "term {i} has {} exponents, polynomial arity is {}",
                    t.exps.len(),
                    self.arity
                )));
            }
            if !t.coef.is_finite() {
                return Err(Error::Structure(format!("term {i} has non-finite coefficient")));
            }
            if !self.constant_term_allowed && t.is_constant() {
                return Err(Error::Structure(format!(
                    "term {i} is a constant term but constant terms are not allowed"
                )));
            }
        }
        Ok(())
    }

    /// The coordinate projection `x_index` in `arity` variables.
    pub fn variable(index: usize, arity: usize) -> Self {
        let mut exps = vec![0; arity];
        exps[index] = 1;
        Polynomial {
            arity,
            constant_term_allowed: false,
            terms: vec![Term { coef: 1.0, exps }],
        }
    }

    /// A single monomial `coef · Π x_i^exps[i]`.
    pub fn monomial(coef: f64, exps: Vec<u32>) -> Result<Self> {
        let allow = exps.iter().all(|&e| e == 0);
        Polynomial::new(exps.len(), vec![Term { coef, exps }], allow)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn constant_term_allowed(&self) -> bool {
        self.constant_term_allowed
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(Term::degree).max().unwrap_or(0)
    }

    /// True when no term carries the all-zero exponent vector.
    pub fn has_no_constant_term(&self) -> bool {
        self.terms.iter().all(|t| !t.is_constant() || t.coef == 0.0)
    }

    /// Returns the same polynomial with the constant-term flag cleared, failing if
    /// a constant term is present.
    pub fn without_constant_term(mut self) -> Result<Self> {
        self.terms.retain(|t| t.coef != 0.0);
        self.constant_term_allowed = false;
        self.validate()?;
        Ok(self)
    }

    /// Whether the polynomial is the zero polynomial after collecting like terms.
    pub fn is_zero(&self) -> bool {
        self.clone().normalized().terms.is_empty()
    }

    /// Whether variable `index` occurs with a nonzero coefficient.
    pub fn mentions(&self, index: usize) -> bool {
        self.clone()
            .normalized()
            .terms
            .iter()
            .any(|t| t.exps[index] > 0)
    }

    /// Evaluates at a point. Each monomial is accumulated left to right as
    /// `c · x₁ ⋯ x₁ · x₂ ⋯`, so symmetric cancellations are exact.
    pub fn eval(&self, xs: &[f64]) -> f64 {
        debug_assert_eq!(xs.len(), self.arity);
        let mut total = 0.0;
        for t in &self.terms {
            let mut acc = t.coef;
            for (&x, &e) in xs.iter().zip(&t.exps) {
                for _ in 0..e {
                    acc *= x;
                }
            }
            total += acc;
        }
        total
    }

    /// Conservative enclosure of the range over a box of argument intervals.
    pub fn eval_interval(&self, xs: &[Interval]) -> Interval {
        let mut total = (0.0, 0.0);
        for t in &self.terms {
            let mut acc = (t.coef, t.coef);
            for (&x, &e) in xs.iter().zip(&t.exps) {
                if e > 0 {
                    acc = interval_mul(acc, interval_pow(x, e));
                }
            }
            total = (total.0 + acc.0, total.1 + acc.1);
        }
        total
    }

    /// Bound on `|d/dt P(x₁(t), …, x_N(t))|` given `|x_i| ≤ magnitudes[i]` and
    /// `|x_i'| ≤ rates[i]`.
    pub fn rate_bound(&self, magnitudes: &[f64], rates: &[f64]) -> f64 {
        let mut total = 0.0;
        for t in &self.terms {
            let c = t.coef.abs();
            for i in 0..self.arity {
                let ei = t.exps[i];
                if ei == 0 || rates[i] == 0.0 {
                    continue;
                }
                let mut acc = c * f64::from(ei) * rates[i];
                for (j, (&m, &e)) in magnitudes.iter().zip(&t.exps).enumerate() {
                    let power = if j == i { e - 1 } else { e };
                    acc *= m.powi(power as i32);
                }
                total += acc;
            }
        }
        total
    }

    /// Collects like terms and drops zero coefficients.
    pub fn normalized(mut self) -> Self {
        self.terms.sort_by(|a, b| b.exps.cmp(&a.exps));
        let mut out: Vec<Term> = Vec::with_capacity(self.terms.len());
        for t in self.terms {
            match out.last_mut() {
                Some(last) if last.exps == t.exps => last.coef += t.coef,
                _ => out.push(t),
            }
        }
        out.retain(|t| t.coef != 0.0);
        self.terms = out;
        self
    }

    fn constant(c: f64, arity: usize) -> Self {
        Polynomial {
            arity,
            constant_term_allowed: true,
            terms: vec![Term {
                coef: c,
                exps: vec![0; arity],
            }],
        }
    }

    fn add(mut self, other: Polynomial) -> Self {
        self.terms.extend(other.terms);
        self.constant_term_allowed |= other.constant_term_allowed;
        self.normalized()
    }

    fn neg(mut self) -> Self {
        for t in &mut self.terms {
            t.coef = -t.coef;
        }
        self
    }

    fn mul(&self, other: &Polynomial) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(Term {
                    coef: a.coef * b.coef,
                    exps: a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect(),
                });
            }
        }
        Polynomial {
            arity: self.arity,
            constant_term_allowed: self.constant_term_allowed && other.constant_term_allowed,
            terms,
        }
        .normalized()
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Polynomial::constant(1.0, self.arity);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn widen(mut self, arity: usize) -> Self {
        for t in &mut self.terms {
            t.exps.resize(arity, 0);
        }
        self.arity = arity;
        self
    }

    /// Parses expressions over `+ - * ^`, parentheses, decimal or rational
    /// literals (`3/4`) and variables `x, y, z` or `x1, x2, …`.
    ///
    /// The arity is the larger of `min_arity` and the highest variable used.
    /// The result is expanded and normalized; the constant-term flag is set only
    /// when a nonzero constant term survives.
    pub fn parse(src: &str, min_arity: usize) -> Result<Self> {
        let mut parser = Parser {
            src: src.as_bytes(),
            pos: 0,
            style: None,
            max_var: None,
        };
        let raw = parser.expr()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        let arity = min_arity.max(parser.max_var.map_or(0, |v| v + 1)).max(1);
        let mut p = raw.into_polynomial(arity);
        p.constant_term_allowed = !p.has_no_constant_term();
        Ok(p)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let sign = if t.coef < 0.0 { "-" } else { "+" };
            if k == 0 {
                if t.coef < 0.0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let c = t.coef.abs();
            let mut factors = Vec::new();
            if c != 1.0 || t.is_constant() {
                factors.push(format!("{c}"));
            }
            for (i, &e) in t.exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    _ => factors.push(format!("x{}^{e}", i + 1)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

fn interval_mul(a: Interval, b: Interval) -> Interval {
    let c = [a.0 * b.0, a.0 * b.1, a.1 * b.0, a.1 * b.1];
    (
        c.iter().copied().fold(f64::INFINITY, f64::min),
        c.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    )
}

fn interval_pow(x: Interval, e: u32) -> Interval {
    let lo = x.0.powi(e as i32);
    let hi = x.1.powi(e as i32);
    if e % 2 == 0 && x.0 <= 0.0 && x.1 >= 0.0 {
        (0.0, lo.max(hi))
    } else {
        (lo.min(hi), lo.max(hi))
    }
}

/// Arity-free expression tree produced by the parser.
enum Expr {
    Const(f64),
    Var(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    fn into_polynomial(self, arity: usize) -> Polynomial {
        match self {
            Expr::Const(c) => Polynomial::constant(c, arity).normalized(),
            Expr::Var(i) => Polynomial::variable(i, arity),
            Expr::Add(a, b) => a.into_polynomial(arity).add(b.into_polynomial(arity)),
            Expr::Sub(a, b) => a
                .into_polynomial(arity)
                .add(b.into_polynomial(arity).neg()),
            Expr::Mul(a, b) => a.into_polynomial(arity).mul(&b.into_polynomial(arity)),
            Expr::Neg(a) => a.into_polynomial(arity).neg(),
            Expr::Pow(a, e) => a.into_polynomial(arity).pow(e),
        }
        .widen(arity)
    }
}

#[derive(PartialEq, Clone, Copy)]
enum VarStyle {
    Letters,
    Indexed,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    style: Option<VarStyle>,
    max_var: Option<usize>,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.eat(b'*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat(b'+') {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            let e: u32 = std::str::from_utf8(digits)
                .ok()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Parse {
                    position: start,
                    message: "expected a nonnegative integer exponent".into(),
                })?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> &[u8] {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn number(&mut self) -> Result<f64> {
        let start = self.pos;
        self.digits();
        if self.pos < self.src.len() && self.src[self.pos] == b'.' {
            self.pos += 1;
            self.digits();
        }
        if self.pos < self.src.len() && matches!(self.src[self.pos], b'e' | b'E') {
            let save = self.pos;
            self.pos += 1;
            if self.pos < self.src.len() && matches!(self.src[self.pos], b'+' | b'-') {
                self.pos += 1;
            }
            if self.digits().is_empty() {
                self.pos = save;
            }
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse::<f64>().ok())
            .ok_or_else(|| Error::Parse {
                position: start,
                message: "malformed number".into(),
            })
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let num = self.number()?;
                // A `/` directly between two literals forms a rational literal.
                let save = self.pos;
                if self.eat(b'/') {
                    if matches!(self.peek(), Some(d) if d.is_ascii_digit()) {
                        let den = self.number()?;
                        if den == 0.0 {
                            return Err(self.error("zero denominator"));
                        }
                        return Ok(Expr::Const(num / den));
                    }
                    self.pos = save;
                    return Err(self.error("division is only allowed between literals"));
                }
                Ok(Expr::Const(num))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                self.pos += 1;
                let suffix = self.digits().to_vec();
                let (style, index) = match (c, suffix.is_empty()) {
                    (b'x', true) => (VarStyle::Letters, 0),
                    (b'y', true) => (VarStyle::Letters, 1),
                    (b'z', true) => (VarStyle::Letters, 2),
                    (b'x', false) => {
                        let k: usize = std::str::from_utf8(&suffix)
                            .ok()
                            .and_then(|s| s.parse().ok())
                            .filter(|&k| k >= 1)
                            .ok_or_else(|| Error::Parse {
                                position: start,
                                message: "variable index must be at least 1".into(),
                            })?;
                        (VarStyle::Indexed, k - 1)
                    }
                    _ => {
                        return Err(Error::Parse {
                            position: start,
                            message: format!("unknown variable '{}'", c as char),
                        })
                    }
                };
                if let Some(existing) = self.style {
                    if existing != style {
                        return Err(Error::Parse {
                            position: start,
                            message: "cannot mix x,y,z with x1,x2,... variables".into(),
                        });
                    }
                }
                self.style = Some(style);
                self.max_var = Some(self.max_var.map_or(index, |m| m.max(index)));
                Ok(Expr::Var(index))
            }
            _ => Err(self.error("expected a number, variable or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_expands() {
        let p = Polynomial::parse("x^2*y - x*y^2", 0).unwrap();
        assert_eq!(p.arity(), 2);
        assert!(p.has_no_constant_term());
        assert_eq!(p.eval(&[2.0, 3.0]), 12.0 - 18.0);
        let q = Polynomial::parse("(x + 1)^2 - 1", 0).unwrap();
        assert_eq!(q.eval(&[3.0]), 15.0);
        assert!(q.has_no_constant_term());
        let r = Polynomial::parse("3/4*x1*x3", 0).unwrap();
        assert_eq!(r.arity(), 3);
        assert_eq!(r.eval(&[2.0, 9.0, 2.0]), 3.0);
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert!(matches!(
            Polynomial::parse("x + w", 0),
            Err(Error::Parse { position: 4, .. })
        ));
        assert!(Polynomial::parse("x * (y", 0).is_err());
        assert!(Polynomial::parse("x / y", 0).is_err());
        assert!(Polynomial::parse("x + x2", 0).is_err());
        assert!(Polynomial::parse("x^-1", 0).is_err());
    }

    #[test]
    fn constant_flag_enforced() {
        let t = Term {
            coef: 1.0,
            exps: vec![0, 0],
        };
        assert!(Polynomial::new(2, vec![t.clone()], false).is_err());
        assert!(Polynomial::new(2, vec![t], true).is_ok());
        assert!(Polynomial::parse("x + 1", 0)
            .unwrap()
            .without_constant_term()
            .is_err());
    }

    #[test]
    fn symmetric_cancellation_is_exact() {
        let p = Polynomial::parse("x^2*y - x*y^2", 0).unwrap();
        for &v in &[0.1, 0.3333333, -0.77, 1e-3, 0.999999] {
            assert_eq!(p.eval(&[v, v]), 0.0);
        }
    }

    #[test]
    fn interval_enclosure_contains_values() {
        let p = Polynomial::parse("x^2 - 3*x*y + y^3", 0).unwrap();
        let (lo, hi) = p.eval_interval(&[(-0.5, 1.0), (-1.0, 0.25)]);
        for i in 0..=20 {
            for j in 0..=20 {
                let x = -0.5 + 1.5 * i as f64 / 20.0;
                let y = -1.0 + 1.25 * j as f64 / 20.0;
                let v = p.eval(&[x, y]);
                assert!(lo <= v && v <= hi);
            }
        }
    }

    #[test]
    fn display_round_trips_through_parser() {
        let p = Polynomial::parse("2*x1^3 - x2*x3 + 0.5*x1", 0).unwrap();
        let q = Polynomial::parse(&p.to_string(), 0).unwrap();
        assert_eq!(p, q);
    }
}
