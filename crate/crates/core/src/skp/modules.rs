//! Value modules M_n of the dyadic valuation: closed-form enumeration,
//! membership, and new-generator witnesses.
//!
//! M_n is the set of values on {a_0 + a_1 z + ... + a_n z^n | a_k in K[x,y]}
//! with z = y/x, computed through the identity nu(sum a_k z^k) =
//! nu(sum a_k x^(n-k) y^k) - n. Its closed form is U_n together with the
//! shifted copies (beta_j - n) + M_0 for j >= n.
//!
//! U_n consists of the integer combinations sum_{j<n} l_j beta_j + l_0 that
//! are actually attained. Attainment holds exactly when the monomial
//! x^(l_0) prod P_j^(l_j) can absorb x^n, i.e. when both l_0 >= -n and
//! l_0 >= -sum_{j>=1} l_j 2^(j-1) (the order of the product must reach n;
//! distinct standard monomials have distinct lowest forms x^(l_0) y^(binary),
//! so no cancellation can lower the order requirement).

use super::dyadic::{dyadic_beta, in_m0};
use crate::error::{Error, Result};
use crate::order::Rat;
use serde::Serialize;
use std::collections::BTreeSet;

/// Elements of U_n below the bound.
pub fn un_elements(n: u32, bound: &Rat) -> Vec<Rat> {
    let mut out = BTreeSet::new();
    // multiplicities l_1..l_{n-1}; enumerate combinations with value < bound + n
    let limit = bound + &Rat::from_u64_pair(n as i64, 1);
    let mut stack: Vec<(usize, Rat, i64)> = vec![(1, Rat::zero(), 0)];
    while let Some((j, partial, ord)) = stack.pop() {
        if j < n as usize {
            // l_j ranges while partial value stays under the limit
            let beta = dyadic_beta(j as u32);
            let mut l = 0i64;
            let mut v = partial.clone();
            while v < limit {
                stack.push((j + 1, v.clone(), ord + l * (1i64 << (j - 1))));
                v += &beta;
                l += 1;
            }
        } else {
            // l_0 >= -n and l_0 >= -ord
            let lo = -((n as i64).min(ord));
            let mut v = partial + Rat::int(lo);
            while &v < bound {
                if !v.is_negative() {
                    out.insert(v.clone());
                }
                v += &Rat::one();
            }
        }
    }
    out.into_iter().collect()
}

/// Closed-form table of M_n below the bound (n >= 1): U_n plus the shifts
/// (beta_j - n) + M_0 over j >= n, each intersected with [0, bound).
pub fn module_mn(n: u32, bound: &Rat) -> Vec<Rat> {
    assert!(n >= 1);
    let mut out: BTreeSet<Rat> = un_elements(n, bound).into_iter().collect();
    let mut j = n;
    loop {
        let shift = dyadic_beta(j) - Rat::from_u64_pair(n as i64, 1);
        if &shift >= bound {
            break;
        }
        // shift + M_0 elements below bound: walk the dyadic grid
        let width = bound - &shift;
        let mut m0: BTreeSet<Rat> = BTreeSet::new();
        collect_m0_below(&width, &mut m0);
        for v in m0 {
            out.insert(&shift + &v);
        }
        j += 1;
    }
    out.into_iter().collect()
}

/// All elements of M_0 below the bound, by frontier closure over the betas.
fn collect_m0_below(bound: &Rat, out: &mut BTreeSet<Rat>) {
    let mut frontier = vec![Rat::zero()];
    out.insert(Rat::zero());
    while let Some(v) = frontier.pop() {
        let mut i = 0;
        loop {
            let next = &v + &dyadic_beta(i);
            if &next >= bound {
                break; // betas increase, so later indices are out too
            }
            if out.insert(next.clone()) {
                frontier.push(next);
            }
            i += 1;
        }
    }
}

/// Exact membership in M_n.
pub fn is_in_mn(q: &Rat, n: u32) -> bool {
    if n == 0 {
        return in_m0(q);
    }
    if q.is_negative() || !q.is_dyadic() {
        return false;
    }
    // U_n: bounded search over l_1..l_{n-1}
    let un = un_elements(n, &(q + &Rat::one()));
    if un.contains(q) {
        return true;
    }
    // shifts
    let mut j = n;
    loop {
        let shift = dyadic_beta(j) - Rat::from_u64_pair(n as i64, 1);
        if &shift > q {
            return false;
        }
        if in_m0(&(q - &shift)) {
            return true;
        }
        j += 1;
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessEntry {
    pub j: u32,
    pub value: Rat,
    /// 2-adic denominator exponent of the value: exactly j.
    pub denom_exp: u32,
    /// The earlier module layer lies on the 2^-(j-1) grid below this value,
    /// so denominator 2^j certifies novelty.
    pub certificate: String,
    pub in_module: bool,
    pub new_generator: bool,
}

/// For n <= j <= j_max certify that beta_j - n is in M_n but not in the
/// module layer generated by U_n and the shifts with index below j.
///
/// Membership: P_j / x^n realizes the value since ord(P_j) = 2^(j-1) >= n.
/// Novelty: an element of the earlier layer equal to beta_j - n would give
/// beta_j - beta_k in M_0 for some k < j, impossible because the denominator
/// of beta_j - beta_k is exactly 2^j while every element of M_0 with
/// denominator 2^j is at least beta_j; U_n is excluded on denominators alone.
pub fn new_generator_witness(n: u32, j_max: u32) -> Result<Vec<WitnessEntry>> {
    if n < 1 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    let mut out = Vec::new();
    for j in n..=j_max {
        let target = dyadic_beta(j) - Rat::from_u64_pair(n as i64, 1);
        let denom_exp = target.denom_two_exp();
        if denom_exp != j {
            return Err(Error::Invariant(format!(
                "beta_{j} - {n} should have denominator exponent {j}, got {denom_exp}"
            )));
        }
        // ord(P_j) = 2^(j-1) >= n holds for all j >= n >= 1
        let in_module = (1u64 << (j - 1)) >= n as u64 && is_in_mn(&target, n);
        // exact non-membership in the earlier layer
        let mut new_generator = denom_exp > n.saturating_sub(1); // vs U_n
        for k in n..j {
            let residual = &target - &(dyadic_beta(k) - Rat::from_u64_pair(n as i64, 1));
            if in_m0(&residual) {
                new_generator = false;
                break;
            }
        }
        out.push(WitnessEntry {
            j,
            value: target,
            denom_exp,
            certificate: format!(
                "denominator 2^{j}; earlier layer below this value lies in 2^-({}) Z",
                j.saturating_sub(1)
            ),
            in_module,
            new_generator,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MPoly;
    use crate::skp::{nu_bar, skp_build, VARS};

    fn rats(entries: &[(i64, i64)]) -> Vec<Rat> {
        entries.iter().map(|&(n, d)| Rat::new(n, d)).collect()
    }

    #[test]
    fn m1_below_two() {
        assert_eq!(
            module_mn(1, &Rat::int(2)),
            rats(&[(0, 1), (1, 1), (3, 2)])
        );
    }

    #[test]
    fn m1_below_nine_halves() {
        // U_1 = N, the shift 3/2 + M_0, and beta_2 - 1 = 17/4
        let got = module_mn(1, &Rat::new(9, 2));
        let expect = rats(&[
            (0, 1),
            (1, 1),
            (3, 2),
            (2, 1),
            (5, 2),
            (3, 1),
            (7, 2),
            (4, 1),
            (17, 4),
        ]);
        let mut expect = expect;
        expect.sort();
        assert_eq!(got, expect);
    }

    #[test]
    fn m2_below_one() {
        assert_eq!(module_mn(2, &Rat::one()), rats(&[(0, 1)]));
    }

    #[test]
    fn mn_closed_form_equals_brute_force() {
        // Brute force: values nu(g) - n over products g = x^(l0) prod P_j^(l_j)
        // with ord(g) >= n, valued through the standard-expansion machinery.
        // Products with value below 6 + n only involve P_1..P_3 and l_0 <= 9
        // (beta_3 = 85/8 > 9 caps l_3 at 0; documented degree bound D = 24).
        let kps = skp_build(4).unwrap();
        let bound = Rat::int(6);
        for n in 1..=3u32 {
            let mut brute: BTreeSet<Rat> = BTreeSet::new();
            let limit = &bound + &Rat::int(n as i64);
            for l0 in 0..=10u32 {
                for l1 in 0..=4u32 {
                    for l2 in 0..=2u32 {
                        for l3 in 0..=1u32 {
                            let value = Rat::int(l0 as i64)
                                + Rat::from_u64_pair(l1 as i64, 1) * dyadic_beta(1).clone()
                                + Rat::from_u64_pair(l2 as i64, 1) * dyadic_beta(2).clone()
                                + Rat::from_u64_pair(l3 as i64, 1) * dyadic_beta(3).clone();
                            if value >= limit {
                                continue;
                            }
                            let ord = l0 + l1 + 2 * l2 + 4 * l3;
                            if ord < n {
                                continue;
                            }
                            // build the product and value it independently
                            let mut g = MPoly::monomial(&VARS, &[l0, 0], Rat::one());
                            for (idx, l) in [(1, l1), (2, l2), (3, l3)] {
                                if l > 0 {
                                    g = g.mul(&kps.poly(idx).pow(l).unwrap()).unwrap();
                                }
                            }
                            let v = nu_bar(&g, &kps).unwrap();
                            assert_eq!(v, value, "product value mismatch");
                            brute.insert(v - Rat::int(n as i64));
                        }
                    }
                }
            }
            let brute: Vec<Rat> = brute.into_iter().collect();
            let closed = module_mn(n, &bound);
            assert_eq!(closed, brute, "closed form disagrees with brute force at n={n}");
        }
    }

    #[test]
    fn membership_consistent_with_table() {
        for n in 1..=3u32 {
            let table = module_mn(n, &Rat::int(6));
            for num in 0..(6 * 8) {
                let q = Rat::new(num, 8);
                assert_eq!(
                    is_in_mn(&q, n),
                    table.contains(&q),
                    "membership mismatch at {q}, n={n}"
                );
            }
        }
    }

    #[test]
    fn witnesses_for_n1() {
        let w = new_generator_witness(1, 3).unwrap();
        let values: Vec<Rat> = w.iter().map(|e| e.value.clone()).collect();
        assert_eq!(values, rats(&[(3, 2), (17, 4), (77, 8)]));
        assert!(w.iter().all(|e| e.in_module && e.new_generator));
    }

    #[test]
    fn witnesses_for_n2() {
        let w = new_generator_witness(2, 2).unwrap();
        assert_eq!(w[0].value, Rat::new(13, 4));
        assert_eq!(w[0].denom_exp, 2);
        assert!(w[0].in_module && w[0].new_generator);
    }
}
