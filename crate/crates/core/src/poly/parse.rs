//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar: `+ - * ^`, parentheses, integer and rational literals (`21/4`),
//! and declared variable names. `^` takes a natural-number exponent.

use super::mpoly::MPoly;
use crate::error::{Error, Result};
use crate::order::Rat;

pub fn parse_poly(text: &str, vars: &[&str]) -> Result<MPoly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
    };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(poly)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
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

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut negate = false;
        while self.peek() == Some(b'-') {
            self.bump();
            negate = !negate;
        }
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.bump();
            acc = acc.mul(&self.factor()?)?;
        }
        if negate {
            acc = acc.neg();
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MPoly> {
        let mut base = self.atom()?;
        while self.peek() == Some(b'^') {
            self.bump();
            let e = self.natural()?;
            base = base.pow(e)?;
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly> {
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.bump();
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.natural()? as i64;
                // A `/` directly after an integer literal is a rational literal.
                if self.peek() == Some(b'/') {
                    self.bump();
                    let d = self.natural()? as i64;
                    if d == 0 {
                        return Err(self.err("zero denominator in literal"));
                    }
                    Ok(MPoly::constant(self.vars, Rat::new(n, d)))
                } else {
                    Ok(MPoly::constant(self.vars, Rat::int(n)))
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if !self.vars.contains(&name) {
                    self.pos = start;
                    return Err(Error::UnknownVariable(name.to_string()));
                }
                MPoly::var(self.vars, name)
            }
            Some(_) => Err(self.err("expected `(`, a literal, or a variable")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn natural(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("number too large"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_polynomials() {
        let p2 = parse_poly("y^2 - x^5", &["x", "y"]).unwrap();
        assert_eq!(p2.to_string(), "y^2 - x^5");
        let p3 = parse_poly("(y^2-x^5)^2 - x^8*y", &["x", "y"]).unwrap();
        assert_eq!(p3.degree_in("y"), 4);
        assert_eq!(p3.num_terms(), 4);
    }

    #[test]
    fn zero_and_literals() {
        assert!(parse_poly("0", &["x"]).unwrap().is_zero());
        let c = parse_poly("21/4", &["x"]).unwrap();
        assert_eq!(c.coeff(&[0]), Rat::new(21, 4));
        let q = parse_poly("1/2*x + 1/2*x", &["x"]).unwrap();
        assert_eq!(q, parse_poly("x", &["x"]).unwrap());
    }

    #[test]
    fn errors_carry_position() {
        match parse_poly("x + ", &["x"]) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(
            parse_poly("x + w", &["x"]),
            Err(Error::UnknownVariable(v)) if v == "w"
        ));
    }

    #[test]
    fn print_parse_round_trip() {
        for s in ["y^2 - x^5", "x^10 - 2*x^5*y^2 + y^4", "3*x - 1/2"] {
            let p = parse_poly(s, &["x", "y"]).unwrap();
            let q = parse_poly(&p.to_string(), &["x", "y"]).unwrap();
            assert_eq!(p, q);
        }
    }

    #[test]
    fn unary_minus() {
        let p = parse_poly("-x^2 - -3", &["x"]).unwrap();
        assert_eq!(p, parse_poly("3 - x^2", &["x"]).unwrap());
    }
}
