//! Order-preserving embedding of N^m (lex) into m-fold sums of a strictly
//! increasing bounded sequence.
//!
//! Given lambda_0 < lambda_1 < ... with exact limit L, index functions
//! sigma_i are chosen minimally so that
//!     lambda_{k} + L < lambda_{k+1} + lambda_{sigma}
//! holds at each nesting level (k the current offset); the map
//!     (a_1,...,a_m) -> lambda_{a_1+1} + sum_i lambda_{sigma_{i-1}+a_i+1}
//! is then strictly increasing for the lex order on the grid, and every
//! value is by construction a sum of exactly m sequence terms.

use crate::error::{Error, Result};
use crate::order::Rat;
use serde::Serialize;

/// A strictly increasing rational sequence with a computable exact limit.
#[derive(Clone, Debug, Serialize)]
pub enum LambdaRule {
    /// lambda_i = 1 - p^{-i}, limit 1.
    OneMinusPow { p: u64 },
}

impl LambdaRule {
    pub fn eval(&self, i: u64) -> Rat {
        match self {
            LambdaRule::OneMinusPow { p } => {
                let mut pi = Rat::one();
                let pr = Rat::from_u64_pair(*p as i64, 1);
                for _ in 0..i {
                    pi = pi * pr.clone();
                }
                Rat::one() - pi.recip()
            }
        }
    }

    pub fn limit(&self) -> Rat {
        match self {
            LambdaRule::OneMinusPow { .. } => Rat::one(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OmegaEntry {
    pub point: Vec<u32>,
    pub value: Rat,
    /// Indices of the m sequence terms summed to produce the value.
    pub witness: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OmegaTable {
    pub m: u32,
    pub grid: u32,
    pub entries: Vec<OmegaEntry>,
}

/// Minimal sigma with lambda_k + L < lambda_{k+1} + lambda_sigma.
fn sigma(rule: &LambdaRule, k: u64, cap: u64) -> Result<u64> {
    let lhs = rule.eval(k) + rule.limit();
    let base = rule.eval(k + 1);
    for s in 0..cap {
        if lhs < base.clone() + rule.eval(s) {
            return Ok(s);
        }
    }
    Err(Error::Domain(format!(
        "no sigma index below cap {cap}; sequence may not converge"
    )))
}

/// Tabulate the embedding on {0..grid}^m in lex order.
pub fn omega_embedding(rule: &LambdaRule, m: u32, grid: u32, sigma_cap: u64) -> Result<OmegaTable> {
    assert!(m >= 1);
    let mut entries = Vec::new();
    let mut point = vec![0u32; m as usize];
    loop {
        // Walk the nesting: offset_1 = a_1; offset_{i} = sigma(prev)+a_i.
        let mut witness = Vec::with_capacity(m as usize);
        let mut offset = point[0] as u64;
        witness.push(offset + 1);
        let mut value = rule.eval(offset + 1);
        for i in 1..m as usize {
            let s = sigma(rule, offset, sigma_cap)?;
            offset = s + point[i] as u64;
            witness.push(offset + 1);
            value = value + rule.eval(offset + 1);
        }
        entries.push(OmegaEntry {
            point: point.clone(),
            value,
            witness,
        });
        // lex increment
        let mut i = m as usize;
        loop {
            if i == 0 {
                return Ok(OmegaTable { m, grid, entries });
            }
            i -= 1;
            if point[i] < grid {
                point[i] += 1;
                for p in point.iter_mut().skip(i + 1) {
                    *p = 0;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_case_is_the_sequence() {
        let rule = LambdaRule::OneMinusPow { p: 2 };
        let t = omega_embedding(&rule, 1, 5, 1000).unwrap();
        assert_eq!(t.entries.len(), 6);
        for (a, e) in t.entries.iter().enumerate() {
            assert_eq!(e.value, rule.eval(a as u64 + 1));
        }
        for w in t.entries.windows(2) {
            assert!(w[0].value < w[1].value);
        }
    }

    #[test]
    fn m2_grid10_preserves_lex_order() {
        let rule = LambdaRule::OneMinusPow { p: 2 };
        let t = omega_embedding(&rule, 2, 10, 1000).unwrap();
        assert_eq!(t.entries.len(), 121);
        for w in t.entries.windows(2) {
            assert!(
                w[0].value < w[1].value,
                "order violated between {:?} and {:?}",
                w[0].point,
                w[1].point
            );
        }
        // every value is a sum of exactly 2 sequence terms, below 2*limit
        for e in &t.entries {
            assert_eq!(e.witness.len(), 2);
            let recomputed: Rat = e
                .witness
                .iter()
                .fold(Rat::zero(), |acc, &i| acc + rule.eval(i));
            assert_eq!(recomputed, e.value);
            assert!(e.value < Rat::int(2));
        }
    }

    #[test]
    fn first_value_uses_minimal_sigma() {
        // at (0,0): sigma_1(0) is minimal with lambda_0 + 1 < lambda_1 + lambda_s,
        // which for lambda_i = 1 - 2^-i gives s = 2, so the value is
        // lambda_1 + lambda_3 = 1/2 + 7/8
        let rule = LambdaRule::OneMinusPow { p: 2 };
        let t = omega_embedding(&rule, 2, 2, 1000).unwrap();
        assert_eq!(t.entries[0].point, vec![0, 0]);
        assert_eq!(t.entries[0].witness, vec![1, 3]);
        assert_eq!(t.entries[0].value, Rat::new(1, 2) + Rat::new(7, 8));
    }
}
