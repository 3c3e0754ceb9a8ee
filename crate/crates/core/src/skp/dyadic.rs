//! The dyadic value sequence beta_0 = 1, beta_{i+1} = 2 beta_i + 2^{-(i+1)},
//! whose group is the union of the 2^{-i} Z.

use crate::order::Rat;
use num::BigInt;

/// beta_i by the closed form (1/3)(2^{i+2} - 2^{-i}). Agrees with the
/// recursion for all i (tested exhaustively in the acceptance suite).
pub fn dyadic_beta(i: u32) -> Rat {
    // (2^(2i+2) - 1) / (3 * 2^i)
    let num = (BigInt::from(1) << (2 * i + 2)) - 1;
    let den = BigInt::from(3) * (BigInt::from(1) << i);
    Rat::new(num, den)
}

/// beta_i by the recursion beta_{i+1} = 2 beta_i + 2^{-(i+1)}.
pub fn dyadic_beta_recursive(i: u32) -> Rat {
    let mut b = Rat::one();
    for k in 0..i {
        b = Rat::int(2) * b + Rat::new(BigInt::from(1), BigInt::from(1) << (k + 1));
    }
    b
}

/// Exact membership in M_0 = sum of N*beta_i.
///
/// The identity 2 beta_i = beta_{i-1} + 2^{i+1} beta_0 rewrites any
/// representation, without leaving the naturals, into one with l_i in {0,1}
/// for i >= 1. In that normal form the denominator exponent of the value is
/// the largest index used, so for q with denominator exponent d >= 1 a
/// representation exists iff one exists that uses beta_d exactly once.
/// Greedy subtraction from the top is therefore sound and complete.
pub fn in_m0(q: &Rat) -> bool {
    if q.is_negative() {
        return false;
    }
    if !q.is_dyadic() {
        return false;
    }
    let mut q = q.clone();
    loop {
        let d = q.denom_two_exp();
        if d == 0 {
            // Integers >= 0 are sums of beta_0 = 1.
            return !q.is_negative() && q.is_integer();
        }
        q = q - dyadic_beta(d);
        if q.is_negative() {
            return false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_values() {
        assert_eq!(dyadic_beta(0), Rat::one());
        assert_eq!(dyadic_beta(1), Rat::new(5, 2));
        assert_eq!(dyadic_beta(2), Rat::new(21, 4));
        assert_eq!(dyadic_beta(3), Rat::new(85, 8));
        assert_eq!(dyadic_beta(4), Rat::new(341, 16));
    }

    #[test]
    fn recursion_matches_closed_form() {
        for i in 0..=30 {
            assert_eq!(dyadic_beta(i), dyadic_beta_recursive(i));
        }
    }

    #[test]
    fn doubling_identity() {
        // 2 beta_i = beta_{i-1} + 2^{i+1} beta_0
        for i in 1..=30 {
            let lhs = Rat::int(2) * dyadic_beta(i);
            let rhs = dyadic_beta(i - 1) + Rat::int(1i64 << (i + 1));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn m0_membership() {
        // brute-force oracle over multiplicity vectors below 8
        let mut table = std::collections::BTreeSet::new();
        for l0 in 0..=8i64 {
            for l1 in 0..=3i64 {
                for l2 in 0..=1i64 {
                    for l3 in 0..=1i64 {
                        let v = Rat::int(l0)
                            + Rat::int(l1) * dyadic_beta(1)
                            + Rat::int(l2) * dyadic_beta(2)
                            + Rat::int(l3) * dyadic_beta(3);
                        if v <= Rat::int(8) {
                            table.insert(v);
                        }
                    }
                }
            }
        }
        // scan a fine dyadic grid and compare against the oracle
        for num in 0..(8 * 16) {
            let q = Rat::new(num, 16);
            assert_eq!(in_m0(&q), table.contains(&q), "disagreement at {q}");
        }
        assert!(!in_m0(&Rat::new(1, 3)));
        assert!(!in_m0(&Rat::new(-1, 2)));
    }
}
