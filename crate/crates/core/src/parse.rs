//! Element grammar shared by every ring:
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom | '(' expr ')'
//! atom   := INT ['/' INT] | 'e^' INT | 'v' INT | IDENT ['^' INT]
//! ```
//!
//! Whitespace is insignificant. Products are evaluated left to right with the
//! ring's own multiplication, so `v2*v1` and `w*v1` mean what they say.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ParseError;
use crate::ring::rational::format_rational;
use crate::ring::ParseElement;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    Number(BigRational),
    /// `e^k`, a power of the distinguished root of unity.
    Root(i64),
    /// `v_i`, one-based.
    Generator(usize),
    /// A commuting or skew indeterminate with its exponent.
    Var { name: String, power: usize },
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Number(q) => write!(f, "{}", format_rational(q)),
            Atom::Root(k) => write!(f, "e^{}", k),
            Atom::Generator(i) => write!(f, "v{}", i),
            Atom::Var { name, power } => write!(f, "{}^{}", name, power),
        }
    }
}

#[derive(Debug, Clone)]
enum Factor {
    Atom(Atom, usize),
    Group(Expr),
}

#[derive(Debug, Clone)]
struct Expr {
    terms: Vec<(bool, Vec<Factor>)>,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::new(self.pos, msg))
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn signed_small(&mut self) -> Result<i64, ParseError> {
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let at = self.pos;
        let n: i64 = self
            .digits()?
            .try_into()
            .map_err(|_| ParseError::new(at, "exponent out of range"))?;
        Ok(if negative { -n } else { n })
    }

    fn small(&mut self) -> Result<usize, ParseError> {
        let at = self.pos;
        self.digits()?.try_into().map_err(|_| ParseError::new(at, "integer out of range"))
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut terms = Vec::new();
        let mut negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            terms.push((negative, self.term()?));
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    negative = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negative = true;
                }
                _ => break,
            }
        }
        Ok(Expr { terms })
    }

    fn term(&mut self) -> Result<Vec<Factor>, ParseError> {
        let mut factors = vec![self.factor()?];
        while self.peek() == Some(b'*') {
            self.pos += 1;
            factors.push(self.factor()?);
        }
        Ok(factors)
    }

    fn factor(&mut self) -> Result<Factor, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(Factor::Group(inner))
            }
            Some(c) if c.is_ascii_digit() => {
                let at = self.pos;
                let num = self.digits()?;
                let den = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let d = self.digits()?;
                    if d.is_zero() {
                        return Err(ParseError::new(at, "zero denominator"));
                    }
                    d
                } else {
                    BigInt::one()
                };
                Ok(Factor::Atom(Atom::Number(BigRational::new(num, den)), at))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let at = self.pos;
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string();
                if name == "v" {
                    let idx = self.small()?;
                    if idx == 0 {
                        return Err(ParseError::new(at, "generators are numbered from 1"));
                    }
                    return Ok(Factor::Atom(Atom::Generator(idx), at));
                }
                let has_power = self.peek() == Some(b'^');
                if has_power {
                    self.pos += 1;
                }
                if name == "e" {
                    let k = if has_power { self.signed_small()? } else { 1 };
                    return Ok(Factor::Atom(Atom::Root(k), at));
                }
                let power = if has_power { self.small()? } else { 1 };
                Ok(Factor::Atom(Atom::Var { name, power }, at))
            }
            Some(c) => self.err(format!("unexpected '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

fn evaluate<R: ParseElement>(ring: &R, expr: &Expr) -> Result<R::Elem, ParseError> {
    let mut acc = ring.zero();
    for (negative, factors) in &expr.terms {
        let mut prod = ring.one();
        for f in factors {
            let value = match f {
                Factor::Atom(atom, at) => {
                    ring.interpret_atom(atom).map_err(|m| ParseError::new(*at, m))?
                }
                Factor::Group(inner) => evaluate(ring, inner)?,
            };
            prod = ring.mul(&prod, &value);
        }
        acc = if *negative { ring.sub(&acc, &prod) } else { ring.add(&acc, &prod) };
    }
    Ok(acc)
}

/// Parse `text` into an element of `ring`.
pub fn parse_with<R: ParseElement>(ring: &R, text: &str) -> Result<R::Elem, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let expr = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    evaluate(ring, &expr)
}

/// Join `(coefficient, monomial)` pairs into `1 + 3/2*v1*v2 - v3` form.
/// An empty monomial marks a scalar term; zero coefficients are skipped.
pub fn join_terms(terms: &[(BigRational, String)]) -> String {
    let mut out = String::new();
    for (q, mono) in terms.iter().filter(|(q, _)| !q.is_zero()) {
        let negative = q.is_negative();
        let abs = q.abs();
        let body = if mono.is_empty() {
            format_rational(&abs)
        } else if abs.is_one() {
            mono.clone()
        } else {
            format!("{}*{}", format_rational(&abs), mono)
        };
        match (out.is_empty(), negative) {
            (true, false) => out.push_str(&body),
            (true, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (false, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (false, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
