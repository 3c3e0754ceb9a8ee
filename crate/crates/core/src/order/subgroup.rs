//! Finitely generated subgroups of Q, which are always cyclic.

use super::rat::{rat_gcd, Rat};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// The subgroup generator*Z of Q. A zero generator denotes the trivial group.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct QSubgroup {
    pub generator: Rat,
}

impl QSubgroup {
    pub fn trivial() -> Self {
        QSubgroup { generator: Rat::zero() }
    }

    pub fn contains(&self, x: &Rat) -> bool {
        if self.generator.is_zero() {
            return x.is_zero();
        }
        (x / &self.generator).is_integer()
    }
}

/// The subgroup of Q generated by the given rationals: generated by their
/// gcd computed exactly over Q.
pub fn q_subgroup(gens: &[Rat]) -> QSubgroup {
    let mut g = Rat::zero();
    for x in gens {
        g = rat_gcd(&g, x);
    }
    QSubgroup { generator: g }
}

/// Index [big : small] for small contained in big; errs on non-containment.
pub fn subgroup_index(small: &QSubgroup, big: &QSubgroup) -> Result<u64> {
    if small.generator.is_zero() || big.generator.is_zero() {
        return Err(Error::Domain("subgroup index needs nontrivial groups".into()));
    }
    let ratio = &small.generator / &big.generator;
    if !ratio.is_integer() || !ratio.is_positive() {
        return Err(Error::Domain(format!(
            "{} is not contained in {}",
            small.generator, big.generator
        )));
    }
    let n = ratio.numer();
    n.try_into()
        .map_err(|_| Error::Domain("subgroup index overflows u64".into()))
}
