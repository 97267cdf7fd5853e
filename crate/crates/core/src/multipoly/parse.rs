//! Text grammar for polynomials.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' uint]
//! atom   := uint ['/' uint] | 'e' | ident | '(' expr ')'
//! ```
//!
//! `e` denotes the adjoined field generator (ε for Q(ε)). Whitespace is
//! ignored. Multiplication is always written out.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::{Polynomial, VarTable};
use crate::field::{Field, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at byte {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("the field has no generator `e` (byte {pos})")]
    NoGenerator { pos: usize },
}

pub fn parse<F: Field>(text: &str, vars: &Arc<VarTable>) -> Result<Polynomial<F>, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, vars };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(out)
}

/// Variable names in order of first appearance, `e` excluded.
pub fn infer_variables(text: &str) -> Vec<String> {
    let bytes = text.as_bytes();
    let mut out: Vec<String> = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let name = &text[start..i];
            if name != "e" && !out.iter().any(|n| n == name) {
                out.push(name.to_string());
            }
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
        } else {
            i += 1;
        }
    }
    out
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a Arc<VarTable>,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax { pos: self.pos, msg: msg.into() }
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

    fn expr<F: Field>(&mut self) -> Result<Polynomial<F>, ParseError> {
        let mut acc = Polynomial::zero(self.vars);
        let mut first = true;
        loop {
            let negative = self.eat(b'-');
            if !negative && !self.eat(b'+') && !first {
                break;
            }
            first = false;
            let t = self.term()?;
            acc = if negative { &acc - &t } else { &acc + &t };
        }
        Ok(acc)
    }

    fn term<F: Field>(&mut self) -> Result<Polynomial<F>, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor<F: Field>(&mut self) -> Result<Polynomial<F>, ParseError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let k = self.uint()?;
            let k: u32 = k.try_into().map_err(|_| self.error("exponent too large"))?;
            Ok(base.pow(k))
        } else {
            Ok(base)
        }
    }

    fn uint(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an unsigned integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }

    fn atom<F: Field>(&mut self) -> Result<Polynomial<F>, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.uint()?;
                let value = if self.eat(b'/') {
                    self.skip_ws();
                    let den = self.uint()?;
                    if den.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    Rat::new(num, den)
                } else {
                    Rat::from_integer(num)
                };
                Ok(Polynomial::constant(self.vars, F::from_rational(value)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
                if name == "e" {
                    return F::generator()
                        .map(|g| Polynomial::constant(self.vars, g))
                        .ok_or(ParseError::NoGenerator { pos: start });
                }
                match self.vars.index_of(name) {
                    Some(i) => Ok(Polynomial::var(self.vars, i)),
                    None => Err(ParseError::UnknownVariable { name: name.to_string(), pos: start }),
                }
            }
            Some(c) => Err(self.error(format!("unexpected `{}`", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclofield::CycNum;
    use crate::multipoly::Monomial;

    type P = Polynomial<CycNum>;

    #[test]
    fn parses_the_fermat_cubic() {
        let vars = VarTable::y4();
        assert_eq!(parse::<CycNum>("Y1^3+Y2^3+Y3^3+Y4^3", &vars).unwrap(), P::f4());
        assert!(parse::<CycNum>("0", &vars).unwrap().is_zero());
        assert_eq!(parse::<CycNum>(" - 0 ", &vars).unwrap(), P::zero(&vars));
    }

    #[test]
    fn coefficients_with_generator() {
        let vars = VarTable::y4();
        let q = parse::<CycNum>("Y1-e*Y4", &vars).unwrap();
        assert_eq!(q.coefficient(&Monomial::var(4, 3, 1)), CycNum::from_ints(0, -1));
        let c = parse::<CycNum>("(-1/2+3*e)", &vars).unwrap();
        assert_eq!(c.constant_value().unwrap(), CycNum::new(Rat::new((-1).into(), 2.into()), Rat::from_integer(3.into())));
        assert_eq!(parse::<CycNum>("e^3", &vars).unwrap(), P::one(&vars));
    }

    #[test]
    fn reports_errors_with_positions() {
        let vars = VarTable::y4();
        assert_eq!(
            parse::<CycNum>("Y1+Z9", &vars),
            Err(ParseError::UnknownVariable { name: "Z9".into(), pos: 3 })
        );
        assert!(matches!(parse::<CycNum>("Y1 Y2", &vars), Err(ParseError::Syntax { pos: 3, .. })));
        assert!(matches!(parse::<CycNum>("Y1+", &vars), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse::<CycNum>("(Y1", &vars), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse::<CycNum>("1/0", &vars), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn infers_variables_in_order() {
        assert_eq!(infer_variables("u3*Y1 + e*u1 - 2*Y1^2"), ["u3", "Y1", "u1"]);
    }
}
