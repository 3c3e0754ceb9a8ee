//! Exhaustive enumeration of a semigroup below a bound, with witnesses.

use super::stream::GenStream;
use crate::error::{Error, Result};
use crate::order::{GroupElem, Rat, Scalar};
use serde::Serialize;
use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

/// Rectangular bound: an element is below the bound when every coordinate is
/// strictly below the corresponding bound coordinate. For rank 1 this is the
/// usual strict upper bound; for higher rank lex balls are not finite, so
/// enumeration is bounded per coordinate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Bound(pub GroupElem);

impl Bound {
    pub fn rat1(r: Rat) -> Self {
        Bound(GroupElem::rat1(r))
    }

    pub fn contains(&self, e: &GroupElem) -> bool {
        e.0.len() == self.0 .0.len()
            && e.0.iter().zip(&self.0 .0).all(|(a, b)| match (a, b) {
                (Scalar::Rat(x), Scalar::Rat(y)) => x < y,
                (Scalar::Quad(x), Scalar::Quad(y)) => x < y,
                _ => false,
            })
    }

    fn first_rat(&self) -> &Rat {
        self.0.first_rat().expect("bound must start with a rational coordinate")
    }
}

/// Limits guarding rule-stream consultation and table growth.
#[derive(Clone, Debug)]
pub struct EnumLimits {
    pub generator_horizon: usize,
    pub max_elements: usize,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits {
            generator_horizon: 10_000,
            max_elements: 2_000_000,
        }
    }
}

/// Enumeration of a semigroup (or semigroup module) below a bound. Every
/// element carries one witness: its multiplicity vector over `gens`.
#[derive(Clone, Debug, Serialize)]
pub struct SemiTable {
    pub elements: Vec<GroupElem>,
    pub witnesses: Vec<Vec<u32>>,
    pub gens: Vec<GroupElem>,
    pub bound: Bound,
    pub generator_horizon: usize,
    pub complete: bool,
}

impl SemiTable {
    pub fn contains(&self, e: &GroupElem) -> bool {
        self.elements.binary_search(e).is_ok()
    }

    pub fn witness_of(&self, e: &GroupElem) -> Option<&[u32]> {
        self.elements
            .binary_search(e)
            .ok()
            .map(|i| self.witnesses[i].as_slice())
    }

    /// Re-evaluate a witness to its element.
    pub fn eval_witness(&self, w: &[u32]) -> GroupElem {
        let mut acc = self.bound.0.zero_like();
        for (g, &m) in self.gens.iter().zip(w) {
            acc = acc.add(&g.scale(m));
        }
        acc
    }
}

/// Collect stream generators relevant below the bound.
///
/// Rule streams are consulted until a generator's first coordinate reaches
/// the bound's first coordinate (rules used here are monotone in the first
/// coordinate); if that never happens within the horizon the table is marked
/// incomplete rather than silently truncated.
fn collect_gens(
    stream: &GenStream,
    bound: &Bound,
    limits: &EnumLimits,
) -> Result<(Vec<GroupElem>, usize, bool)> {
    let mut gens = Vec::new();
    let mut consulted = 0usize;
    let mut complete = true;
    let b1 = bound.first_rat();
    for i in 1.. {
        match stream.nth(i) {
            None => break,
            Some(g) => {
                consulted = i;
                if !g.is_positive() {
                    return Err(Error::Domain(format!(
                        "generator {g} is not strictly positive"
                    )));
                }
                if !g.same_signature(&bound.0) {
                    return Err(Error::SignatureMismatch(format!(
                        "generator {g} does not match bound {}",
                        bound.0
                    )));
                }
                let gf = g
                    .first_rat()
                    .ok_or_else(|| Error::Domain("first coordinate must be rational".into()))?;
                if gf >= b1 {
                    if matches!(stream, GenStream::Rule(_)) {
                        break;
                    }
                    continue;
                }
                if !gens.contains(&g) {
                    gens.push(g);
                }
                if i >= limits.generator_horizon {
                    complete = false;
                    break;
                }
            }
        }
    }
    Ok((gens, consulted, complete))
}

/// Largest k with k*step < limit, for positive step.
fn max_mult(step: &Rat, limit: &Rat) -> u64 {
    let mut lo = 0u64;
    let mut hi = 1u64;
    while &(&Rat::from_u64_pair(hi as i64, 1) * step) < limit {
        hi *= 2;
        if hi > 1 << 40 {
            break;
        }
    }
    while lo < hi {
        let mid = (lo + hi + 1) / 2;
        if &(&Rat::from_u64_pair(mid as i64, 1) * step) < limit {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

/// For rank-2 tables: an upper bound on how far the second coordinate of a
/// partial sum can later be pulled down by generators with negative second
/// coordinate, given the first-coordinate budget.
fn max_drop(gens: &[GroupElem], bound: &Bound) -> Rat {
    if bound.0 .0.len() < 2 {
        return Rat::zero();
    }
    let b1 = bound.first_rat();
    let mut drop = Rat::zero();
    for g in gens {
        let (Some(c1), Some(c2)) = (g.coord_rat(0), g.coord_rat(1)) else {
            continue;
        };
        if c2.is_negative() && c1.is_positive() {
            let k = max_mult(c1, b1);
            drop += &(&Rat::from_u64_pair(k as i64, 1) * &(-c2));
        }
    }
    drop
}

/// Exact enumeration below the bound by monotone frontier expansion: a
/// priority queue keyed by lex order, seeded with 0, expanded by adding each
/// generator. Guarantees sum-closure below the bound.
pub fn enumerate_below(
    stream: &GenStream,
    bound: &Bound,
    limits: &EnumLimits,
) -> Result<SemiTable> {
    let (gens, consulted, complete) = collect_gens(stream, bound, limits)?;
    if !complete {
        return Ok(SemiTable {
            elements: vec![],
            witnesses: vec![],
            gens,
            bound: bound.clone(),
            generator_horizon: consulted,
            complete: false,
        });
    }

    // Expansion region: elements that could still be prefixes of sums
    // landing below the bound. For rank 1 this is the bound itself; for
    // rank 2 the second coordinate is relaxed by the achievable drop.
    let drop = max_drop(&gens, bound);
    let in_region = |e: &GroupElem| -> bool {
        match e.0.len() {
            1 => bound.contains(e),
            _ => {
                let c1_ok = match (e.coord_rat(0), bound.0.coord_rat(0)) {
                    (Some(a), Some(b)) => a < b,
                    _ => false,
                };
                let c2_ok = match (e.coord_rat(1), bound.0.coord_rat(1)) {
                    (Some(a), Some(b)) => a < &(b + &drop),
                    _ => false,
                };
                c1_ok && c2_ok
            }
        }
    };

    let zero = bound.0.zero_like();
    let mut found: BTreeMap<GroupElem, Vec<u32>> = BTreeMap::new();
    let mut heap: BinaryHeap<Reverse<GroupElem>> = BinaryHeap::new();
    let mut pending: BTreeMap<GroupElem, Vec<u32>> = BTreeMap::new();
    pending.insert(zero.clone(), vec![0; gens.len()]);
    heap.push(Reverse(zero));

    while let Some(Reverse(e)) = heap.pop() {
        let Some(w) = pending.remove(&e) else {
            continue; // stale heap entry
        };
        if found.contains_key(&e) {
            continue;
        }
        found.insert(e.clone(), w.clone());
        if found.len() > limits.max_elements {
            return Err(Error::Incomplete(format!(
                "element cap {} exceeded",
                limits.max_elements
            )));
        }
        for (j, g) in gens.iter().enumerate() {
            let next = e.add(g);
            if in_region(&next) && !found.contains_key(&next) && !pending.contains_key(&next) {
                let mut wn = w.clone();
                wn[j] += 1;
                pending.insert(next.clone(), wn);
                heap.push(Reverse(next));
            }
        }
    }

    let (elements, witnesses): (Vec<_>, Vec<_>) = found
        .into_iter()
        .filter(|(e, _)| bound.contains(e) || e.is_zero())
        .unzip();
    Ok(SemiTable {
        elements,
        witnesses,
        gens,
        bound: bound.clone(),
        generator_horizon: consulted,
        complete: true,
    })
}

/// Elements of a complete table not expressible as a sum of two nonzero
/// table elements; these are the minimal generators below the bound.
pub fn minimal_generators(table: &SemiTable) -> Result<Vec<GroupElem>> {
    if !table.complete {
        return Err(Error::Incomplete(
            "refusing to compute minimal generators of an incomplete table".into(),
        ));
    }
    let mut out = Vec::new();
    for e in &table.elements {
        if e.is_zero() {
            continue;
        }
        let mut decomposable = false;
        for s in &table.elements {
            if s.is_zero() {
                continue;
            }
            if s >= e {
                break;
            }
            let t = e.sub(s);
            if !t.is_zero() && table.contains(&t) {
                decomposable = true;
                break;
            }
        }
        if !decomposable {
            out.push(e.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::stream::Rule;

    fn rat_table(gens: &[i64], bound: i64) -> SemiTable {
        let stream = GenStream::from_rats(&gens.iter().map(|&g| Rat::int(g)).collect::<Vec<_>>());
        enumerate_below(&stream, &Bound::rat1(Rat::int(bound)), &EnumLimits::default()).unwrap()
    }

    /// brute-force closure oracle: iterate sums to a fixed point
    fn closure_oracle(gens: &[Rat], bound: &Rat) -> Vec<Rat> {
        let mut set: std::collections::BTreeSet<Rat> = [Rat::zero()].into();
        loop {
            let mut added = false;
            let snapshot: Vec<Rat> = set.iter().cloned().collect();
            for s in &snapshot {
                for g in gens {
                    let t = s + g;
                    if &t < bound && set.insert(t) {
                        added = true;
                    }
                }
            }
            if !added {
                return set.into_iter().collect();
            }
        }
    }

    #[test]
    fn two_three_below_eight() {
        let t = rat_table(&[2, 3], 8);
        let got: Vec<Rat> = t.elements.iter().map(|e| e.first_rat().unwrap().clone()).collect();
        let expect: Vec<Rat> = [0, 2, 3, 4, 5, 6, 7].iter().map(|&n| Rat::int(n)).collect();
        assert_eq!(got, expect);
        assert_eq!(
            got,
            closure_oracle(&[Rat::int(2), Rat::int(3)], &Rat::int(8))
        );
    }

    #[test]
    fn multiples_of_four() {
        let t = rat_table(&[4], 10);
        let got: Vec<Rat> = t.elements.iter().map(|e| e.first_rat().unwrap().clone()).collect();
        assert_eq!(got, vec![Rat::int(0), Rat::int(4), Rat::int(8)]);
    }

    #[test]
    fn dyadic_below_six() {
        let t = enumerate_below(
            &GenStream::Rule(Rule::DyadicBeta),
            &Bound::rat1(Rat::int(6)),
            &EnumLimits::default(),
        )
        .unwrap();
        let got: Vec<Rat> = t.elements.iter().map(|e| e.first_rat().unwrap().clone()).collect();
        let oracle = closure_oracle(
            &[Rat::one(), Rat::new(5, 2), Rat::new(21, 4)],
            &Rat::int(6),
        );
        assert_eq!(got, oracle);
        assert!(got.contains(&Rat::new(21, 4)));
        assert_eq!(got.len(), 11);
    }

    #[test]
    fn closure_invariant() {
        let t = rat_table(&[4, 6, 13], 40);
        for a in &t.elements {
            for b in &t.elements {
                let s = a.add(b);
                if t.bound.contains(&s) {
                    assert!(t.contains(&s), "closure fails at {s}");
                }
            }
        }
    }

    #[test]
    fn witnesses_reevaluate() {
        let t = rat_table(&[4, 6, 13], 40);
        for (e, w) in t.elements.iter().zip(&t.witnesses) {
            assert_eq!(&t.eval_witness(w), e);
        }
    }

    #[test]
    fn minimal_generators_examples() {
        let t = rat_table(&[2, 3], 8);
        let mg = minimal_generators(&t).unwrap();
        assert_eq!(
            mg,
            vec![GroupElem::rat1(Rat::int(2)), GroupElem::rat1(Rat::int(3))]
        );
        let t = rat_table(&[4], 10);
        assert_eq!(minimal_generators(&t).unwrap(), vec![GroupElem::rat1(Rat::int(4))]);
        let t = enumerate_below(
            &GenStream::Rule(Rule::DyadicBeta),
            &Bound::rat1(Rat::int(6)),
            &EnumLimits::default(),
        )
        .unwrap();
        let mg = minimal_generators(&t).unwrap();
        assert_eq!(
            mg,
            vec![
                GroupElem::rat1(Rat::one()),
                GroupElem::rat1(Rat::new(5, 2)),
                GroupElem::rat1(Rat::new(21, 4)),
            ]
        );
    }

    #[test]
    fn minimal_generators_regenerate_table() {
        let t = rat_table(&[4, 6, 13], 40);
        let mg = minimal_generators(&t).unwrap();
        let rats: Vec<Rat> = mg.iter().map(|e| e.first_rat().unwrap().clone()).collect();
        let regenerated = closure_oracle(&rats, &Rat::int(40));
        let got: Vec<Rat> = t.elements.iter().map(|e| e.first_rat().unwrap().clone()).collect();
        assert_eq!(regenerated, got);
    }

    #[test]
    fn rank2_enumeration_with_negative_second_coordinates() {
        let gens = vec![
            GroupElem::from_i64s(&[0, 1]),
            GroupElem::from_i64s(&[1, 0]),
            GroupElem::from_i64s(&[3, -8]),
        ];
        let t = enumerate_below(
            &GenStream::finite(gens),
            &Bound(GroupElem::from_i64s(&[8, 4])),
            &EnumLimits::default(),
        )
        .unwrap();
        // (4,-8) = (1,0) + (3,-8) must be present
        assert!(t.contains(&GroupElem::from_i64s(&[4, -8])));
        // (6,-16) = 2*(3,-8)
        assert!(t.contains(&GroupElem::from_i64s(&[6, -16])));
        // (3,-9) is not a sum
        assert!(!t.contains(&GroupElem::from_i64s(&[3, -9])));
        // closure check within the rectangle
        for a in &t.elements {
            for b in &t.elements {
                let s = a.add(b);
                if t.bound.contains(&s) {
                    assert!(t.contains(&s), "closure fails at {s}");
                }
            }
        }
    }

    #[test]
    fn incomplete_when_generators_never_exceed_bound() {
        // spq generators cluster below 2, so a rule-like unbounded consult
        // is simulated with a tiny horizon over the dyadic rule and a huge
        // bound: horizon exhaustion must be reported, not silently cut.
        let t = enumerate_below(
            &GenStream::Rule(Rule::DyadicBeta),
            &Bound::rat1(Rat::int(1_000_000_000)),
            &EnumLimits {
                generator_horizon: 5,
                max_elements: 10_000,
            },
        )
        .unwrap();
        assert!(!t.complete);
        assert!(minimal_generators(&t).is_err());
    }
}
