//! Exact leading-term algebra over key-polynomial monomials.
//!
//! Elements of K(x,y) built from products and quotients of key polynomials
//! are represented as finite Q-linear combinations of formal monomials
//! prod P_i^(e_i) with integer exponents. Such a monomial has exact value
//! sum e_i beta_i, and two monomials of equal value differ multiplicatively
//! by a product of the relations
//!
//!     P_i^2 * P_{i-1}^-1 * P_0^-(2^(i+1)) = 1 + Q_i,
//!     Q_i = P_{i+1} * P_{i-1}^-1 * P_0^-(2^(i+1)),    val Q_i = 2^-(i+1),
//!
//! which follow from the defining recursion of the sequence. Every graded
//! piece of the value filtration is one-dimensional, and along these
//! relations the residue of any value-zero monomial is 1; the leading
//! coefficient of a combination at its minimal value is therefore the plain
//! sum of the coefficients there. When that sum cancels, rewriting the
//! minimal group through truncated expansions of (1 + Q_i)^c exposes the
//! next value exactly. Elements themselves stay exact; truncation only ever
//! happens inside value-resolution working copies.

use super::dyadic::dyadic_beta;
use crate::error::{Error, Result};
use crate::order::Rat;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// Formal monomial prod P_i^(e_i), e_i in Z, stored sparsely.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub struct PMono {
    exps: BTreeMap<u32, i64>,
}

impl PMono {
    pub fn one() -> Self {
        PMono { exps: BTreeMap::new() }
    }

    pub fn from_pairs(pairs: &[(u32, i64)]) -> Self {
        let mut exps = BTreeMap::new();
        for &(i, e) in pairs {
            if e != 0 {
                *exps.entry(i).or_insert(0) += e;
            }
        }
        exps.retain(|_, e| *e != 0);
        PMono { exps }
    }

    pub fn x() -> Self {
        PMono::from_pairs(&[(0, 1)])
    }

    pub fn y() -> Self {
        PMono::from_pairs(&[(1, 1)])
    }

    pub fn exps(&self) -> &BTreeMap<u32, i64> {
        &self.exps
    }

    pub fn mul(&self, other: &PMono) -> PMono {
        let mut exps = self.exps.clone();
        for (&i, &e) in &other.exps {
            *exps.entry(i).or_insert(0) += e;
        }
        exps.retain(|_, e| *e != 0);
        PMono { exps }
    }

    pub fn value(&self) -> Rat {
        let mut v = Rat::zero();
        for (&i, &e) in &self.exps {
            v += &(&Rat::int(e) * &dyadic_beta(i));
        }
        v
    }

    /// Numerator/denominator exponent split for display.
    pub fn display_factored(&self) -> String {
        if self.exps.is_empty() {
            return "1".to_string();
        }
        let part = |pos: bool| -> String {
            self.exps
                .iter()
                .filter(|(_, &e)| (e > 0) == pos && e != 0)
                .map(|(&i, &e)| {
                    let e = e.abs();
                    if e == 1 {
                        format!("P{i}")
                    } else {
                        format!("P{i}^{e}")
                    }
                })
                .collect::<Vec<_>>()
                .join("*")
        };
        let num = part(true);
        let den = part(false);
        match (num.is_empty(), den.is_empty()) {
            (false, true) => num,
            (true, false) => format!("1/({den})"),
            (false, false) => format!("{num}/({den})"),
            (true, true) => "1".to_string(),
        }
    }
}

/// Ordering key: value first, then exponent vector for determinism.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct Key {
    value: Rat,
    mono: PMono,
}

/// Exact finite Q-combination of key-polynomial monomials.
#[derive(Clone, Debug, Default)]
pub struct GradedElt {
    terms: BTreeMap<Key, Rat>,
}

impl GradedElt {
    pub fn zero() -> Self {
        GradedElt::default()
    }

    pub fn from_mono(m: PMono, c: Rat) -> Self {
        let mut e = GradedElt::zero();
        e.insert(m, c);
        e
    }

    pub fn constant(c: Rat) -> Self {
        GradedElt::from_mono(PMono::one(), c)
    }

    fn insert(&mut self, m: PMono, c: Rat) {
        if c.is_zero() {
            return;
        }
        let key = Key { value: m.value(), mono: m };
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &GradedElt) -> GradedElt {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert(k.mono.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> GradedElt {
        GradedElt {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &GradedElt) -> GradedElt {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> GradedElt {
        if c.is_zero() {
            return GradedElt::zero();
        }
        GradedElt {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &GradedElt) -> GradedElt {
        let mut out = GradedElt::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                out.insert(ka.mono.mul(&kb.mono), ca * cb);
            }
        }
        out
    }

    pub fn mul_mono(&self, m: &PMono, c: &Rat) -> GradedElt {
        let mut out = GradedElt::zero();
        for (k, v) in &self.terms {
            out.insert(k.mono.mul(m), v * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> GradedElt {
        let mut acc = GradedElt::constant(Rat::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact term values currently present (pre-resolution).
    pub fn raw_values(&self) -> Vec<Rat> {
        self.terms.keys().map(|k| k.value.clone()).collect()
    }

    /// Resolve the true leading value and leading coefficient.
    pub fn leading(&self) -> Result<Leading> {
        if self.terms.is_empty() {
            return Ok(Leading::Zero);
        }
        // Initial margin: one quantum of the finest relation in play.
        let max_idx = self
            .terms
            .keys()
            .flat_map(|k| k.mono.exps.keys())
            .copied()
            .max()
            .unwrap_or(1);
        let mut margin = Rat::new(1, 1i64 << (max_idx + 2).min(40));
        for _ in 0..60 {
            match try_resolve(&self.terms, &margin)? {
                ResolveOutcome::Resolved { value, coeff } => {
                    return Ok(Leading::Value { value, coeff });
                }
                ResolveOutcome::NeedWiderMargin => {
                    margin = &margin * &Rat::int(2);
                }
                ResolveOutcome::ExactZero => return Ok(Leading::Zero),
            }
        }
        Err(Error::Precision(
            "value resolution did not converge within 60 margin doublings".into(),
        ))
    }

    /// Leading value alone; error on the zero element.
    pub fn value(&self) -> Result<Rat> {
        match self.leading()? {
            Leading::Zero => Err(Error::ZeroValue),
            Leading::Value { value, .. } => Ok(value),
        }
    }

    pub fn is_zero_elt(&self) -> bool {
        self.terms.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Leading {
    Zero,
    Value { value: Rat, coeff: Rat },
}

enum ResolveOutcome {
    Resolved { value: Rat, coeff: Rat },
    NeedWiderMargin,
    ExactZero,
}

/// One resolution attempt at a fixed margin, on a working copy.
fn try_resolve(original: &BTreeMap<Key, Rat>, margin: &Rat) -> Result<ResolveOutcome> {
    let mut work = original.clone();
    // Values at or beyond this cutoff are unreliable once a rewrite drops
    // expansion tail terms.
    let mut cutoff: Option<Rat> = None;
    for _ in 0..10_000 {
        let Some(first) = work.keys().next().cloned() else {
            return Ok(if cutoff.is_none() {
                ResolveOutcome::ExactZero
            } else {
                ResolveOutcome::NeedWiderMargin
            });
        };
        let v = first.value.clone();
        if let Some(c) = &cutoff {
            if &v >= c {
                return Ok(ResolveOutcome::NeedWiderMargin);
            }
        }
        let group: Vec<(Key, Rat)> = work
            .range(first.clone()..)
            .take_while(|(k, _)| k.value == v)
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        let sigma = group
            .iter()
            .fold(Rat::zero(), |acc, (_, c)| acc + c.clone());
        if !sigma.is_zero() {
            return Ok(ResolveOutcome::Resolved { value: v, coeff: sigma });
        }
        // Cancellation: rewrite every group monomial against the reference,
        // exposing the next order through the defining relations.
        let local_cut = &v + margin;
        cutoff = Some(match cutoff {
            None => local_cut.clone(),
            Some(c) => {
                if c < local_cut {
                    c
                } else {
                    local_cut.clone()
                }
            }
        });
        let reference = &group[0].0.mono;
        for (k, c) in &group {
            work.remove(k);
            if &k.mono == reference {
                continue; // reference contributes exactly c * reference
            }
            let delta = exps_diff(&k.mono, reference);
            let decomposition = decompose_kernel(&delta)?;
            // expansion of prod (1 + Q_i)^(c_i) truncated below local_cut - v
            let rel_margin = &local_cut - &v;
            let expansion = expand_relation_product(&decomposition, &rel_margin);
            // k.mono = reference * expansion
            for (em, ec) in expansion.terms {
                let m = reference.mul(&em.mono);
                let key = Key { value: m.value(), mono: m };
                let add = c * &ec;
                use std::collections::btree_map::Entry;
                match work.entry(key) {
                    Entry::Vacant(e) => {
                        if !add.is_zero() {
                            e.insert(add);
                        }
                    }
                    Entry::Occupied(mut e) => {
                        let s = e.get() + &add;
                        if s.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = s;
                        }
                    }
                }
            }
        }
        // The expansion heads accumulate sum_{j>=1} c_j at the reference
        // key; together with the reference's own coefficient that is sigma
        // = 0, so the whole value-v layer vanishes and only expansion tails
        // (values > v) remain.
        work.remove(&Key {
            value: v,
            mono: reference.clone(),
        });
    }
    Err(Error::Precision("resolution loop exceeded 10000 passes".into()))
}

fn exps_diff(a: &PMono, b: &PMono) -> BTreeMap<u32, i64> {
    let mut d = a.exps.clone();
    for (&i, &e) in &b.exps {
        *d.entry(i).or_insert(0) -= e;
    }
    d.retain(|_, e| *e != 0);
    d
}

/// Decompose a value-zero exponent vector over the relation lattice: returns
/// (i, c_i) with delta = sum c_i kappa_i where kappa_i = 2 e_i - e_{i-1} -
/// 2^(i+1) e_0. Works top-down; each top coefficient must be even because
/// the value is zero.
fn decompose_kernel(delta: &BTreeMap<u32, i64>) -> Result<Vec<(u32, i128)>> {
    let top = match delta.keys().max() {
        None => return Ok(vec![]),
        Some(&t) => t,
    };
    let mut dense = vec![0i128; top as usize + 1];
    for (&i, &e) in delta {
        dense[i as usize] = e as i128;
    }
    let mut out = Vec::new();
    for i in (1..=top as usize).rev() {
        let d = dense[i];
        if d == 0 {
            continue;
        }
        if d % 2 != 0 {
            return Err(Error::Invariant(format!(
                "kernel decomposition hit an odd exponent at index {i}; value was not zero"
            )));
        }
        let c = d / 2;
        dense[i] = 0;
        if i >= 2 {
            dense[i - 1] += c;
            dense[0] += c * (1i128 << (i + 1));
        } else {
            // kappa_1 = 2 e_1 - 5 e_0
            dense[0] += c * 5;
        }
        out.push((i as u32, c));
    }
    if dense[0] != 0 {
        return Err(Error::Invariant(
            "kernel decomposition left a nonzero x-exponent; value was not zero".into(),
        ));
    }
    Ok(out)
}

/// Q_i as a monomial: P_{i+1} P_{i-1}^-1 P_0^-(2^(i+1)).
fn q_mono(i: u32) -> PMono {
    if i == 1 {
        PMono::from_pairs(&[(2, 1), (0, -5)])
    } else {
        PMono::from_pairs(&[(i + 1, 1), (i as u32 - 1, -1), (0, -(1i64 << (i + 1)))])
    }
}

/// Truncated expansion of prod_i (1 + Q_i)^(c_i) keeping values < margin.
fn expand_relation_product(decomposition: &[(u32, i128)], margin: &Rat) -> GradedElt {
    let mut acc = GradedElt::constant(Rat::one());
    for &(i, c) in decomposition {
        let factor = expand_binomial(i, c, margin);
        acc = truncated_mul(&acc, &factor, margin);
    }
    acc
}

/// (1 + Q_i)^c as a truncated series: sum_k binom(c, k) Q_i^k with
/// k * val(Q_i) < margin. Exact (finite) when c >= 0 and c small enough.
fn expand_binomial(i: u32, c: i128, margin: &Rat) -> GradedElt {
    let q = q_mono(i);
    let qval = q.value();
    debug_assert!(qval.is_positive());
    let mut out = GradedElt::zero();
    let mut coeff = Rat::one();
    let mut k = 0i128;
    let mut kval = Rat::zero();
    let mut qpow = PMono::one();
    loop {
        if c >= 0 && k > c {
            break;
        }
        if &kval >= margin && k > 0 {
            break;
        }
        out.insert(qpow.clone(), coeff.clone());
        // next binomial coefficient: c (c-1) ... (c-k) / (k+1)!
        let num = Rat::int((c - k) as i64);
        let den = Rat::int((k + 1) as i64);
        coeff = &coeff * &(&num / &den);
        if coeff.is_zero() {
            break;
        }
        qpow = qpow.mul(&q);
        kval += &qval;
        k += 1;
    }
    out
}

fn truncated_mul(a: &GradedElt, b: &GradedElt, margin: &Rat) -> GradedElt {
    let mut out = GradedElt::zero();
    for (ka, ca) in &a.terms {
        for (kb, cb) in &b.terms {
            let v = &ka.value + &kb.value;
            if &v >= margin {
                continue;
            }
            out.insert(ka.mono.mul(&kb.mono), ca * cb);
        }
    }
    out
}

impl fmt::Display for GradedElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{}", k.mono.display_factored())?;
        }
        Ok(())
    }
}

/// Spectrum of the span of a family: the attained leading values, one per
/// dimension, computed by echelon elimination in the graded algebra. The
/// coefficient ratio of two elements sharing a leading value is an exact
/// rational, so one subtraction per collision strictly raises a value.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumOutcome {
    pub values: Vec<Rat>,
    pub dimension: usize,
    pub dropped_zero: usize,
}

pub fn graded_spectrum(elts: Vec<GradedElt>) -> Result<SpectrumOutcome> {
    #[derive(Clone)]
    struct Entry {
        elt: GradedElt,
        value: Rat,
        coeff: Rat,
    }
    let mut dropped_zero = 0usize;
    let mut working: Vec<Entry> = Vec::new();
    for e in elts {
        match e.leading()? {
            Leading::Zero => dropped_zero += 1,
            Leading::Value { value, coeff } => working.push(Entry { elt: e, value, coeff }),
        }
    }
    let mut values = Vec::new();
    while !working.is_empty() {
        let min_v = working
            .iter()
            .map(|e| e.value.clone())
            .min()
            .expect("nonempty");
        let pivot_idx = working
            .iter()
            .position(|e| e.value == min_v)
            .expect("present");
        let pivot = working.remove(pivot_idx);
        values.push(min_v.clone());
        let mut next = Vec::with_capacity(working.len());
        for entry in working {
            if entry.value == min_v {
                let ratio = &entry.coeff / &pivot.coeff;
                let reduced = entry.elt.sub(&pivot.elt.scale(&ratio));
                match reduced.leading()? {
                    Leading::Zero => {
                        dropped_zero += 1;
                    }
                    Leading::Value { value, coeff } => {
                        debug_assert!(value > min_v);
                        next.push(Entry { elt: reduced, value, coeff });
                    }
                }
            } else {
                next.push(entry);
            }
        }
        working = next;
    }
    Ok(SpectrumOutcome {
        dimension: values.len(),
        values,
        dropped_zero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_values() {
        // x^5 y has value 5 + 5/2
        let m = PMono::from_pairs(&[(0, 5), (1, 1)]);
        assert_eq!(m.value(), Rat::new(15, 2));
        // P_2 / x^5 has value 1/4
        let m = PMono::from_pairs(&[(2, 1), (0, -5)]);
        assert_eq!(m.value(), Rat::new(1, 4));
    }

    #[test]
    fn leading_of_simple_combination() {
        let e = GradedElt::from_mono(PMono::y(), Rat::one())
            .add(&GradedElt::from_mono(PMono::x(), Rat::int(3)));
        match e.leading().unwrap() {
            Leading::Value { value, coeff } => {
                assert_eq!(value, Rat::one());
                assert_eq!(coeff, Rat::int(3));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn cancellation_exposes_next_order() {
        // y^2 and x^5 both have value 5; y^2 - x^5 = P_2 has value 21/4.
        // In the graded algebra: y^2 = x^5 (1 + Q_1), so y^2 - x^5 resolves
        // through the relation to value 21/4 with coefficient 1.
        let y2 = GradedElt::from_mono(PMono::from_pairs(&[(1, 2)]), Rat::one());
        let x5 = GradedElt::from_mono(PMono::from_pairs(&[(0, 5)]), Rat::one());
        let diff = y2.sub(&x5);
        match diff.leading().unwrap() {
            Leading::Value { value, coeff } => {
                assert_eq!(value, Rat::new(21, 4));
                assert_eq!(coeff, Rat::one());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn deeper_cancellation() {
        // (y^2 - x^5)^2 - x^8 y = P_3 of value 85/8: expand y^4 - 2x^5y^2 +
        // x^10 - x^8 y as monomials and resolve.
        let monos = [
            (PMono::from_pairs(&[(1, 4)]), Rat::one()),
            (PMono::from_pairs(&[(0, 5), (1, 2)]), Rat::int(-2)),
            (PMono::from_pairs(&[(0, 10)]), Rat::one()),
            (PMono::from_pairs(&[(0, 8), (1, 1)]), Rat::int(-1)),
        ];
        let mut e = GradedElt::zero();
        for (m, c) in monos {
            e = e.add(&GradedElt::from_mono(m, c));
        }
        match e.leading().unwrap() {
            Leading::Value { value, coeff } => {
                assert_eq!(value, Rat::new(85, 8));
                assert_eq!(coeff, Rat::one());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn exact_zero_detected() {
        let a = GradedElt::from_mono(PMono::x(), Rat::one());
        assert!(a.sub(&a).is_zero_elt());
        assert_eq!(a.sub(&a).leading().unwrap(), Leading::Zero);
    }

    #[test]
    fn spectrum_counts_dimension() {
        // span{1, x, y, x + y}: values {0, 1, 5/2} and dimension 3
        let one = GradedElt::constant(Rat::one());
        let x = GradedElt::from_mono(PMono::x(), Rat::one());
        let y = GradedElt::from_mono(PMono::y(), Rat::one());
        let xy = x.add(&y);
        let s = graded_spectrum(vec![one, x, y, xy]).unwrap();
        assert_eq!(s.dimension, 3);
        assert_eq!(s.values, vec![Rat::zero(), Rat::one(), Rat::new(5, 2)]);
        assert_eq!(s.dropped_zero, 1);
    }
}
