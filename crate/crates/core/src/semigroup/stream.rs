//! Generator streams: finite lists or named rules producing the i-th
//! generator on demand.

use crate::error::{Error, Result};
use crate::order::{GroupElem, Rat};
use crate::skp::dyadic_beta;
use serde::{Deserialize, Serialize};

/// Integer sequence rules used by the rank-2 monomial example.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SeqRule {
    /// a_i = base^i
    Pow { base: u64 },
    /// b_i = i
    Linear,
    /// b_i = coeff*i + offset
    Affine { coeff: i64, offset: i64 },
}

impl SeqRule {
    pub fn eval(&self, i: u32) -> i64 {
        match self {
            SeqRule::Pow { base } => (*base as i64).pow(i),
            SeqRule::Linear => i as i64,
            SeqRule::Affine { coeff, offset } => coeff * i as i64 + offset,
        }
    }

    pub fn parse(s: &str) -> Result<SeqRule> {
        if s == "linear" {
            return Ok(SeqRule::Linear);
        }
        if let Some(b) = s.strip_prefix("pow:") {
            let base = b
                .parse()
                .map_err(|_| Error::Domain(format!("bad pow base `{b}`")))?;
            return Ok(SeqRule::Pow { base });
        }
        Err(Error::Domain(format!(
            "unknown sequence rule `{s}` (expected `linear` or `pow:<base>`)"
        )))
    }
}

/// A named generator rule. Rules are deterministic; indices start at 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", content = "params", rename_all = "kebab-case")]
pub enum Rule {
    /// Rank 1, the dyadic plane-valuation values: i-th generator is beta_{i-1}.
    DyadicBeta,
    /// Rank 1: depth generators 1 - 1/p^i followed by depth generators
    /// 2 - 1/q^i. Finite by construction.
    Spq { p: u64, q: u64, depth: u32 },
    /// Rank 2 lex: gamma_1 = (0,1), gamma_2 = (1,0), gamma_3 = (b_3, -a_3),
    /// gamma_i = (b_i, a_{i-1} - a_i) for i >= 4.
    Z2 { a: SeqRule, b: SeqRule },
}

impl Rule {
    /// The i-th generator (1-based); None when the rule is finite and done.
    pub fn nth(&self, i: usize) -> Option<GroupElem> {
        match self {
            Rule::DyadicBeta => Some(GroupElem::rat1(dyadic_beta((i - 1) as u32))),
            Rule::Spq { p, q, depth } => {
                let d = *depth as usize;
                if i <= d {
                    let pi = (*p as i64).pow(i as u32);
                    Some(GroupElem::rat1(Rat::one() - Rat::new(1, pi)))
                } else if i <= 2 * d {
                    let qi = (*q as i64).pow((i - d) as u32);
                    Some(GroupElem::rat1(Rat::int(2) - Rat::new(1, qi)))
                } else {
                    None
                }
            }
            Rule::Z2 { a, b } => match i {
                1 => Some(GroupElem::from_i64s(&[0, 1])),
                2 => Some(GroupElem::from_i64s(&[1, 0])),
                3 => Some(GroupElem::from_i64s(&[b.eval(3), -a.eval(3)])),
                i => {
                    let i = i as u32;
                    Some(GroupElem::from_i64s(&[b.eval(i), a.eval(i - 1) - a.eval(i)]))
                }
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GenStream {
    Finite { gens: Vec<GroupElem> },
    Rule(Rule),
}

impl GenStream {
    pub fn finite(gens: Vec<GroupElem>) -> Self {
        GenStream::Finite { gens }
    }

    pub fn from_rats(gens: &[Rat]) -> Self {
        GenStream::finite(gens.iter().map(|r| GroupElem::rat1(r.clone())).collect())
    }

    pub fn nth(&self, i: usize) -> Option<GroupElem> {
        match self {
            GenStream::Finite { gens } => gens.get(i - 1).cloned(),
            GenStream::Rule(r) => r.nth(i),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spq_generators() {
        let r = Rule::Spq { p: 2, q: 3, depth: 2 };
        let got: Vec<_> = (1..=5).map(|i| r.nth(i)).collect();
        assert_eq!(got[0], Some(GroupElem::rat1(Rat::new(1, 2))));
        assert_eq!(got[1], Some(GroupElem::rat1(Rat::new(3, 4))));
        assert_eq!(got[2], Some(GroupElem::rat1(Rat::new(5, 3))));
        assert_eq!(got[3], Some(GroupElem::rat1(Rat::new(17, 9))));
        assert_eq!(got[4], None);
    }

    #[test]
    fn dyadic_generators() {
        let r = Rule::DyadicBeta;
        assert_eq!(r.nth(1), Some(GroupElem::rat1(Rat::one())));
        assert_eq!(r.nth(2), Some(GroupElem::rat1(Rat::new(5, 2))));
        assert_eq!(r.nth(3), Some(GroupElem::rat1(Rat::new(21, 4))));
    }

    #[test]
    fn z2_generators() {
        let r = Rule::Z2 {
            a: SeqRule::Pow { base: 2 },
            b: SeqRule::Linear,
        };
        assert_eq!(r.nth(1), Some(GroupElem::from_i64s(&[0, 1])));
        assert_eq!(r.nth(2), Some(GroupElem::from_i64s(&[1, 0])));
        assert_eq!(r.nth(3), Some(GroupElem::from_i64s(&[3, -8])));
        assert_eq!(r.nth(4), Some(GroupElem::from_i64s(&[4, -8])));
    }

    #[test]
    fn rule_json_shape() {
        let r = GenStream::Rule(Rule::Spq { p: 2, q: 3, depth: 4 });
        let j = serde_json::to_value(&r).unwrap();
        assert_eq!(j["rule"], "spq");
        assert_eq!(j["params"]["p"], 2);
    }
}
