//! Semigroup modules and finite-generation probing.
//!
//! A module over a semigroup F is a set of coset generators plus F-shifts.
//! The probe lists module elements not reachable as (smaller module element)
//! + (nonzero base element) below the bound, and flags "saturated" when the
//! top half of the window contributes no new generator. Saturation is an
//! evidence heuristic, never a proof of finite generation; the report spells
//! that out.

use super::stream::GenStream;
use super::table::{enumerate_below, Bound, EnumLimits, SemiTable};
use crate::error::{Error, Result};
use crate::order::{GroupElem, Rat};
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Clone, Debug, Serialize)]
pub struct SemiModule {
    pub base: GenStream,
    pub coset_gens: GenStream,
}

/// Module elements below the bound: {coset generator + base element}.
pub fn module_elements_below(
    module: &SemiModule,
    bound: &Bound,
    limits: &EnumLimits,
) -> Result<(SemiTable, Vec<GroupElem>)> {
    let base = enumerate_below(&module.base, bound, limits)?;
    if !base.complete {
        return Err(Error::Incomplete("base enumeration incomplete".into()));
    }
    let mut elems: BTreeSet<GroupElem> = BTreeSet::new();
    for i in 1..=limits.generator_horizon {
        match module.coset_gens.nth(i) {
            None => break,
            Some(g) => {
                if !bound.contains(&g) && !g.is_zero() {
                    // Coset generators are consulted in increasing order of
                    // first coordinate; once beyond the bound, stop.
                    if matches!(module.coset_gens, GenStream::Rule(_)) {
                        break;
                    }
                    continue;
                }
                for b in &base.elements {
                    let m = g.add(b);
                    if bound.contains(&m) || m.is_zero() {
                        elems.insert(m);
                    }
                }
            }
        }
    }
    Ok((base, elems.into_iter().collect()))
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub min_generators: Vec<GroupElem>,
    pub saturated: bool,
    pub bound: GroupElem,
    /// Always states the semidecision semantics of `saturated`.
    pub semantics: &'static str,
}

pub const PROBE_SEMANTICS: &str = "saturated=true means no new module generator appeared in \
     [bound/2, bound); this is evidence toward finite generation, not a proof";

/// Probe finite generation of a module given its elements below the bound
/// and the base-semigroup table over the same window.
pub fn probe_elements(
    base: &SemiTable,
    module_elements: &[GroupElem],
    bound: &Bound,
) -> Result<ProbeReport> {
    if !base.complete {
        return Err(Error::Incomplete("base table incomplete".into()));
    }
    let set: BTreeSet<&GroupElem> = module_elements.iter().collect();
    let mut min_generators = Vec::new();
    for m in module_elements {
        let mut reachable = false;
        for b in &base.elements {
            if b.is_zero() {
                continue;
            }
            if b > m {
                break;
            }
            let prev = m.sub(b);
            if set.contains(&prev) {
                reachable = true;
                break;
            }
        }
        if !reachable {
            min_generators.push(m.clone());
        }
    }
    // Top-half window [bound/2, bound): with rank-1 rational bounds the
    // midpoint is exact; for higher rank the first coordinate is halved.
    let half = half_bound(&bound.0);
    let saturated = !min_generators.iter().any(|g| g >= &half);
    Ok(ProbeReport {
        min_generators,
        saturated,
        bound: bound.0.clone(),
        semantics: PROBE_SEMANTICS,
    })
}

fn half_bound(b: &GroupElem) -> GroupElem {
    let mut coords = b.0.clone();
    if let Some(crate::order::Scalar::Rat(r)) = coords.first_mut() {
        *r = &*r * &Rat::new(1, 2);
    }
    GroupElem(coords)
}

/// Probe a module presented by streams.
pub fn module_fin_gen_probe(
    module: &SemiModule,
    bound: &Bound,
    limits: &EnumLimits,
) -> Result<ProbeReport> {
    let (base, elems) = module_elements_below(module, bound, limits)?;
    probe_elements(&base, &elems, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::stream::Rule;

    #[test]
    fn module_over_itself_is_trivial() {
        let module = SemiModule {
            base: GenStream::Rule(Rule::DyadicBeta),
            coset_gens: GenStream::from_rats(&[Rat::zero()]),
        };
        let r = module_fin_gen_probe(&module, &Bound::rat1(Rat::int(6)), &EnumLimits::default())
            .unwrap();
        assert_eq!(r.min_generators, vec![GroupElem::rat1(Rat::zero())]);
        assert!(r.saturated);
    }
}
