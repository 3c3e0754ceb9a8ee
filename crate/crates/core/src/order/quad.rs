//! The real quadratic extension Q(sqrt 2), with exact sign determination.
//!
//! Elements are written a + b*sqrt(2). Comparisons never touch floating
//! point: the sign of a + b*sqrt(2) is decided by comparing a^2 with 2*b^2
//! and inspecting the signs of a and b.

use super::rat::Rat;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// a + b*sqrt(2) with exact rational parts. The representation is unique.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadRat {
    pub a: Rat,
    pub b: Rat,
}

impl QuadRat {
    pub fn new(a: Rat, b: Rat) -> Self {
        QuadRat { a, b }
    }

    pub fn rational(a: Rat) -> Self {
        QuadRat { a, b: Rat::zero() }
    }

    /// sqrt(2) itself, the fixed irrational alpha used by the rank-2 examples.
    pub fn alpha() -> Self {
        QuadRat { a: Rat::zero(), b: Rat::one() }
    }

    pub fn zero() -> Self {
        QuadRat::rational(Rat::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign: -1, 0, or 1.
    pub fn sign(&self) -> i32 {
        let sa = if self.a.is_zero() { 0 } else if self.a.is_positive() { 1 } else { -1 };
        let sb = if self.b.is_zero() { 0 } else if self.b.is_positive() { 1 } else { -1 };
        match (sa, sb) {
            (0, 0) => 0,
            (s, 0) | (0, s) => s,
            (1, 1) => 1,
            (-1, -1) => -1,
            _ => {
                // Opposite signs: compare a^2 with 2 b^2; the larger magnitude wins.
                let a2 = &self.a * &self.a;
                let b2 = &(&self.b * &self.b) * &Rat::int(2);
                match a2.cmp(&b2) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    // a^2 = 2 b^2 with a,b nonzero is impossible over Q.
                    Ordering::Equal => unreachable!("sqrt(2) is irrational"),
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * std::f64::consts::SQRT_2
    }
}

impl PartialOrd for QuadRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadRat {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.clone() - other.clone();
        match diff.sign() {
            0 => Ordering::Equal,
            s if s > 0 => Ordering::Greater,
            _ => Ordering::Less,
        }
    }
}

impl Add for QuadRat {
    type Output = QuadRat;
    fn add(self, rhs: QuadRat) -> QuadRat {
        QuadRat { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl Sub for QuadRat {
    type Output = QuadRat;
    fn sub(self, rhs: QuadRat) -> QuadRat {
        QuadRat { a: self.a - rhs.a, b: self.b - rhs.b }
    }
}

impl Mul for QuadRat {
    type Output = QuadRat;
    fn mul(self, rhs: QuadRat) -> QuadRat {
        // (a + b s)(c + d s) = (ac + 2bd) + (ad + bc) s, s = sqrt(2)
        let a = &self.a * &rhs.a + &(&self.b * &rhs.b) * &Rat::int(2);
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        QuadRat { a, b }
    }
}

impl Neg for QuadRat {
    type Output = QuadRat;
    fn neg(self) -> QuadRat {
        QuadRat { a: -self.a, b: -self.b }
    }
}

impl fmt::Display for QuadRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}a", self.b);
        }
        if self.b.is_negative() {
            write!(f, "{}{}a", self.a, self.b)
        } else {
            write!(f, "{}+{}a", self.a, self.b)
        }
    }
}

impl fmt::Debug for QuadRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_cases() {
        // 3 - 2*sqrt(2) > 0 since 9 > 8
        assert_eq!(QuadRat::new(Rat::int(3), Rat::int(-2)).sign(), 1);
        // 1 - sqrt(2) < 0
        assert_eq!(QuadRat::new(Rat::one(), Rat::int(-1)).sign(), -1);
        // -7/5 + sqrt(2) > 0 since 2 > 49/25
        assert_eq!(QuadRat::new(Rat::new(-7, 5), Rat::one()).sign(), 1);
        assert_eq!(QuadRat::zero().sign(), 0);
    }

    #[test]
    fn alpha_exceeds_one() {
        assert!(QuadRat::alpha() > QuadRat::rational(Rat::one()));
        assert!(QuadRat::alpha() < QuadRat::rational(Rat::new(3, 2)));
    }

    #[test]
    fn arithmetic() {
        let s = QuadRat::alpha();
        let sq = s.clone() * s.clone();
        assert_eq!(sq, QuadRat::rational(Rat::int(2)));
    }
}
