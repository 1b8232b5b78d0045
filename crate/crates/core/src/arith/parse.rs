//! Parser for univariate polynomial expressions with rational coefficients.
//!
//! Grammar: sums of products of powers of atoms, where an atom is an integer,
//! the variable, or a parenthesized expression. Division is accepted only by
//! nonzero constants. Implicit multiplication (`3T`, `2(T+1)`) is accepted.

use num_traits::Zero;

use super::{Field, Integer, Polynomial, Rational};
use crate::error::{Error, Result};

pub fn parse_polynomial(src: &str, var: &str) -> Result<Polynomial<Rational>> {
    let mut p = Parser {
        chars: src.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
        vars: variables(var),
    };
    let out = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(p.error("unexpected input"));
    }
    Ok(out)
}

fn variables(var: &str) -> Vec<char> {
    let mut v: Vec<char> = var.chars().collect();
    for c in v.clone() {
        v.push(c.to_ascii_lowercase());
        v.push(c.to_ascii_uppercase());
    }
    v
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    vars: Vec<char>,
}

impl Parser {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {}", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial<Rational>> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -self.term()?
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                '-' => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial<Rational>> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc * self.power()?;
                }
                Some('/') => {
                    self.pos += 1;
                    let d = self.power()?;
                    if d.degree() != Some(0) {
                        return Err(self.error("division by a non-constant"));
                    }
                    let inv = d.coeff(0).inv().expect("nonzero constant");
                    acc = acc.scale(&inv);
                }
                Some(c) if c == '(' || c.is_ascii_digit() || self.vars.contains(&c) => {
                    acc = acc * self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial<Rational>> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| self.error("exponent out of range"))?;
            if e > 1000 {
                return Err(self.error("exponent out of range"));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<Integer> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<Polynomial<Rational>> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Polynomial::constant(Rational::from_integer(n)))
            }
            Some(c) if self.vars.contains(&c) => {
                self.pos += 1;
                Ok(Polynomial::x())
            }
            Some('-') => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            _ => Err(self.error("expected a term")),
        }
    }
}

/// Parses and rejects the zero polynomial.
pub fn parse_nonzero_polynomial(src: &str, var: &str) -> Result<Polynomial<Rational>> {
    let p = parse_polynomial(src, var)?;
    if p.is_zero() || p.coeffs().iter().all(Zero::is_zero) {
        return Err(Error::InvalidInput("polynomial is zero".into()));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(cs: &[i64]) -> Polynomial<Rational> {
        Polynomial::from_i64s(cs)
    }

    #[test]
    fn parses_family_polynomial() {
        let k = parse_polynomial("189T^6-567T^5+630T^4-315T^3+630T^2-567T+189", "T").unwrap();
        assert_eq!(k, qp(&[189, -567, 630, -315, 630, -567, 189]));
        let k2 = parse_polynomial("189*t^6 - 567*t^5 + 630*t^4 - 315*t^3 + 630*t^2 - 567*t + 189", "T")
            .unwrap();
        assert_eq!(k, k2);
    }

    #[test]
    fn products_powers_and_fractions() {
        assert_eq!(parse_polynomial("(T+1)^2 - 2T", "T").unwrap(), qp(&[1, 0, 1]));
        assert_eq!(parse_polynomial("-(x-1)(x+1)", "x").unwrap(), qp(&[1, 0, -1]));
        let half = parse_polynomial("T/2 + 1/2", "T").unwrap();
        assert_eq!(half * qp(&[2]), qp(&[1, 1]));
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_polynomial("T^", "T").is_err());
        assert!(parse_polynomial("(T+1", "T").is_err());
        assert!(parse_polynomial("1/T", "T").is_err());
        assert!(parse_polynomial("T + y", "T").is_err());
        assert!(parse_nonzero_polynomial("T - T", "T").is_err());
    }
}
