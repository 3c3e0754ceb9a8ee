//! Arbitrary-precision rationals in canonical form.

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

/// Exact rational number. Always stored with gcd(|num|, den) = 1 and den > 0;
/// the canonical zero is 0/1. Serializes as the string `"n"` or `"n/d"`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new<N: Into<BigInt>, D: Into<BigInt>>(num: N, den: D) -> Self {
        let den = den.into();
        assert!(!den.is_zero(), "zero denominator");
        Rat(BigRational::new(num.into(), den))
    }

    pub fn int<N: Into<BigInt>>(n: N) -> Self {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rat(self.0.recip())
    }

    pub fn pow(&self, k: i32) -> Self {
        Rat(self.0.pow(k))
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// 2-adic valuation of the denominator: the exponent e with den = odd * 2^e.
    pub fn denom_two_exp(&self) -> u32 {
        let mut d = self.denom().clone();
        let mut e = 0u32;
        let two = BigInt::from(2);
        while (&d % &two).is_zero() {
            d /= &two;
            e += 1;
        }
        e
    }

    /// True when the denominator is a power of two (including 2^0).
    pub fn is_dyadic(&self) -> bool {
        let mut d = self.denom().clone();
        let two = BigInt::from(2);
        while (&d % &two).is_zero() {
            d /= &two;
        }
        d.is_one()
    }

    pub fn to_f64(&self) -> f64 {
        let n = self.numer();
        let d = self.denom();
        num::ToPrimitive::to_f64(n).unwrap_or(f64::NAN) / num::ToPrimitive::to_f64(d).unwrap_or(f64::NAN)
    }

    pub fn from_u64_pair(n: i64, d: u64) -> Self {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Rat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|e| format!("bad numerator: {e}"))?;
                let d: BigInt = d.trim().parse().map_err(|e| format!("bad denominator: {e}"))?;
                if d.is_zero() {
                    return Err("zero denominator".into());
                }
                Ok(Rat::new(n, d))
            }
            None => {
                let n: BigInt = s.parse().map_err(|e| format!("bad integer: {e}"))?;
                Ok(Rat::int(n))
            }
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((self.0).$method(&rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a Rat> for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(&self.0 / &rhs.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        self.0 *= &rhs.0;
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::int(n)
    }
}

/// gcd of two nonnegative rationals: the generator of the subgroup of Q they span.
pub fn rat_gcd(a: &Rat, b: &Rat) -> Rat {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    // gcd(p/q, r/s) = gcd(p*s, r*q) / (q*s)
    let num = num::Integer::gcd(&(a.numer() * b.denom()), &(b.numer() * a.denom()));
    Rat::new(num.abs(), a.denom() * b.denom())
}

/// Sign of a BigInt as -1, 0, 1.
pub fn bigint_sign(n: &BigInt) -> i32 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let r = Rat::new(4, -6);
        assert_eq!(r.to_string(), "-2/3");
        assert_eq!(r.denom(), &BigInt::from(3));
        assert_eq!(Rat::new(0, 5), Rat::zero());
    }

    #[test]
    fn parse_round_trip() {
        for s in ["21/4", "-1/8", "0", "7", "-3"] {
            let r: Rat = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
    }

    #[test]
    fn gcd_over_q() {
        let g = rat_gcd(&Rat::new(5, 2), &Rat::one());
        assert_eq!(g, Rat::new(1, 2));
        let g = rat_gcd(&rat_gcd(&Rat::one(), &Rat::new(5, 2)), &Rat::new(21, 4));
        assert_eq!(g, Rat::new(1, 4));
    }

    #[test]
    fn dyadic_denominator() {
        assert_eq!(Rat::new(21, 4).denom_two_exp(), 2);
        assert!(Rat::new(21, 4).is_dyadic());
        assert!(!Rat::new(1, 3).is_dyadic());
        assert_eq!(Rat::int(5).denom_two_exp(), 0);
    }
}
