//! Rational functions as normalized fractions of sparse polynomials.
//!
//! Only content (scalar) normalization is performed: the denominator is made
//! primitive with positive leading coefficient. Equality is decided by
//! cross-multiplication, so full multivariate gcd cancellation is never
//! needed for zero tests.

use super::mpoly::MPoly;
use crate::error::Result;
use crate::order::Rat;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Serialize, Deserialize)]
pub struct RatFunc {
    pub num: MPoly,
    pub den: MPoly,
}

impl RatFunc {
    pub fn new(num: MPoly, den: MPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut rf = RatFunc { num, den };
        rf.normalize();
        rf
    }

    pub fn from_poly(p: MPoly) -> Self {
        let one = MPoly::one(&p.vars().iter().map(|s| s.as_str()).collect::<Vec<_>>());
        RatFunc::new(p, one)
    }

    pub fn constant(c: Rat) -> Self {
        RatFunc::new(MPoly::constant(&[], c), MPoly::one(&[]))
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            let one = MPoly::one(&self.den.vars().iter().map(|s| s.as_str()).collect::<Vec<_>>());
            self.den = one;
            return;
        }
        let c = self.den.content();
        let inv = Rat::one() / c;
        self.den = self.den.scale(&inv);
        self.num = self.num.scale(&inv);
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &RatFunc) -> Result<RatFunc> {
        let num = self.num.mul(&other.den)?.add(&other.num.mul(&self.den)?);
        let den = self.den.mul(&other.den)?;
        Ok(RatFunc::new(num, den))
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RatFunc) -> Result<RatFunc> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> Result<RatFunc> {
        Ok(RatFunc::new(
            self.num.mul(&other.num)?,
            self.den.mul(&other.den)?,
        ))
    }

    pub fn inv(&self) -> Option<RatFunc> {
        if self.is_zero() {
            return None;
        }
        Some(RatFunc::new(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: &Rat) -> RatFunc {
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Equality by cross-multiplication: a/b = c/d iff ad - cb = 0.
    pub fn alg_eq(&self, other: &RatFunc) -> bool {
        self.num
            .mul(&other.den)
            .and_then(|l| other.num.mul(&self.den).map(|r| l.sub(&r).is_zero()))
            .unwrap_or(false)
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.alg_eq(other)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.total_degree() == 0 && self.den.num_terms() == 1 {
            let c = self
                .den
                .terms()
                .next()
                .map(|(_, c)| c.clone())
                .unwrap_or_else(Rat::one);
            if c == Rat::one() {
                return write!(f, "{}", self.num);
            }
        }
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    #[test]
    fn cross_multiplication_equality() {
        let xy = parse_poly("x*y", &["x", "y"]).unwrap();
        let x = parse_poly("x", &["x", "y"]).unwrap();
        let y = parse_poly("y", &["x", "y"]).unwrap();
        let x2 = parse_poly("x^2", &["x", "y"]).unwrap();
        // xy/x = x^2 y / x^2 without any gcd cancellation
        let a = RatFunc::new(xy.clone(), x.clone());
        let b = RatFunc::new(x2.mul(&y).unwrap(), x2.clone());
        assert!(a.alg_eq(&b));
        assert_eq!(a, b);
        // xy/x equals y without cancellation, and differs from x
        assert!(a.alg_eq(&RatFunc::from_poly(y)));
        assert!(!a.alg_eq(&RatFunc::from_poly(x)));
    }

    #[test]
    fn arithmetic() {
        let x = RatFunc::from_poly(parse_poly("x", &["x", "y"]).unwrap());
        let y = RatFunc::from_poly(parse_poly("y", &["x", "y"]).unwrap());
        let z = y.mul(&x.inv().unwrap()).unwrap();
        let sum = z.add(&z).unwrap();
        let two_z = z.scale(&Rat::int(2));
        assert!(sum.alg_eq(&two_z));
        assert!(z.sub(&z).unwrap().is_zero());
    }

    #[test]
    fn denominator_normalized() {
        let num = parse_poly("y", &["x", "y"]).unwrap();
        let den = parse_poly("-2*x", &["x", "y"]).unwrap();
        let rf = RatFunc::new(num, den);
        // content -2 moved out: denominator becomes x
        assert_eq!(rf.den, parse_poly("x", &["x", "y"]).unwrap());
        assert_eq!(rf.num, parse_poly("-1/2*y", &["x", "y"]).unwrap());
    }
}
