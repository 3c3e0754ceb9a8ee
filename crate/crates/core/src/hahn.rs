//! Truncated generalized power series K((t^G)) with a pluggable exponent
//! group and coefficient field.
//!
//! A series is a finite, strictly increasing list of (exponent, coefficient)
//! pairs together with a precision cutoff: terms with exponent at or beyond
//! the cutoff are unknown, never silently zero. Exact polynomial images use
//! the unbounded cutoff. Arithmetic tracks the minimum of interacting
//! precisions; multiplication shifts each factor's cutoff by the other's
//! valuation.

use crate::error::{Error, Result};
use crate::order::{GroupElem, Rat};
use crate::poly::{MPoly, RatFunc};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;

/// Field operations needed of series coefficients.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn from_rat(r: &Rat) -> Self;
}

impl Coeff for Rat {
    fn zero() -> Self {
        Rat::zero()
    }
    fn one() -> Self {
        Rat::one()
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Option<Self> {
        if Rat::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
}

impl Coeff for RatFunc {
    fn zero() -> Self {
        RatFunc::constant(Rat::zero())
    }
    fn one() -> Self {
        RatFunc::constant(Rat::one())
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        RatFunc::add(self, other).expect("degree cap in series coefficient")
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        RatFunc::mul(self, other).expect("degree cap in series coefficient")
    }
    fn inv(&self) -> Option<Self> {
        RatFunc::inv(self)
    }
    fn from_rat(r: &Rat) -> Self {
        RatFunc::constant(r.clone())
    }
}

/// Precision cutoff: either a group element or unbounded (exact series).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Cutoff {
    At(GroupElem),
    Unbounded,
}

impl Cutoff {
    pub fn allows(&self, e: &GroupElem) -> bool {
        match self {
            Cutoff::Unbounded => true,
            Cutoff::At(p) => e < p,
        }
    }

    pub fn min(self, other: Cutoff) -> Cutoff {
        match (self, other) {
            (Cutoff::Unbounded, o) => o,
            (s, Cutoff::Unbounded) => s,
            (Cutoff::At(a), Cutoff::At(b)) => Cutoff::At(if a <= b { a } else { b }),
        }
    }

    pub fn shift(&self, by: &GroupElem) -> Cutoff {
        match self {
            Cutoff::Unbounded => Cutoff::Unbounded,
            Cutoff::At(p) => Cutoff::At(p.add(by)),
        }
    }
}

impl fmt::Display for Cutoff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cutoff::Unbounded => write!(f, "oo"),
            Cutoff::At(p) => write!(f, "{p}"),
        }
    }
}

/// Result of taking the least exponent of a series.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Valuation {
    Exact(GroupElem),
    /// No known term: the valuation is at least the cutoff (or the series
    /// is identically zero when the cutoff is unbounded).
    AtLeast(Cutoff),
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Exact(e) => write!(f, "{e}"),
            Valuation::AtLeast(c) => write!(f, ">= {c}"),
        }
    }
}

#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct HahnSeries<C: Coeff> {
    terms: Vec<(GroupElem, C)>,
    precision: Cutoff,
}

impl<C: Coeff> HahnSeries<C> {
    /// Build from unsorted terms: sorts, merges equal exponents, drops zeros
    /// and anything at or beyond the cutoff.
    pub fn new(mut terms: Vec<(GroupElem, C)>, precision: Cutoff) -> Self {
        terms.sort_by(|(a, _), (b, _)| a.cmp(b));
        let mut merged: Vec<(GroupElem, C)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            if !precision.allows(&e) {
                continue;
            }
            match merged.last_mut() {
                Some((le, lc)) if *le == e => {
                    *lc = lc.add(&c);
                }
                _ => merged.push((e, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        HahnSeries {
            terms: merged,
            precision,
        }
    }

    pub fn zero(precision: Cutoff) -> Self {
        HahnSeries {
            terms: Vec::new(),
            precision,
        }
    }

    /// Single term c * t^e, exact.
    pub fn monomial(e: GroupElem, c: C) -> Self {
        HahnSeries::new(vec![(e, c)], Cutoff::Unbounded)
    }

    pub fn terms(&self) -> &[(GroupElem, C)] {
        &self.terms
    }

    pub fn precision(&self) -> &Cutoff {
        &self.precision
    }

    pub fn is_known_zero(&self) -> bool {
        self.terms.is_empty() && self.precision == Cutoff::Unbounded
    }

    /// Least exponent with nonzero coefficient.
    pub fn valuation(&self) -> Valuation {
        match self.terms.first() {
            Some((e, _)) => Valuation::Exact(e.clone()),
            None => Valuation::AtLeast(self.precision.clone()),
        }
    }

    pub fn leading(&self) -> Option<(&GroupElem, &C)> {
        self.terms.first().map(|(e, c)| (e, c))
    }

    /// Coefficient at a given exponent; errs when the exponent is not
    /// resolved by the current precision.
    pub fn coeff_at(&self, e: &GroupElem) -> Result<C> {
        if !self.precision.allows(e) {
            return Err(Error::Precision(format!(
                "coefficient at {e} requested, but precision is {}",
                self.precision
            )));
        }
        Ok(self
            .terms
            .iter()
            .find(|(te, _)| te == e)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(C::zero))
    }

    fn val_or_prec(&self) -> Cutoff {
        match self.terms.first() {
            Some((e, _)) => Cutoff::At(e.clone()),
            None => self.precision.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let precision = self.precision.clone().min(other.precision.clone());
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        HahnSeries::new(terms, precision)
    }

    pub fn neg(&self) -> Self {
        HahnSeries {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
            precision: self.precision.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scalar_mul(&self, c: &C) -> Self {
        let mut out = HahnSeries {
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.clone(), k.mul(c)))
                .collect(),
            precision: self.precision.clone(),
        };
        out.terms.retain(|(_, k)| !k.is_zero());
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        // prec(fg) = min(prec f + v(g), prec g + v(f)) where v falls back to
        // the factor's own cutoff when no term is known.
        let pa = match &self.precision {
            Cutoff::Unbounded => Cutoff::Unbounded,
            Cutoff::At(p) => match other.val_or_prec() {
                Cutoff::Unbounded => Cutoff::Unbounded,
                Cutoff::At(v) => Cutoff::At(p.add(&v)),
            },
        };
        let pb = match &other.precision {
            Cutoff::Unbounded => Cutoff::Unbounded,
            Cutoff::At(p) => match self.val_or_prec() {
                Cutoff::Unbounded => Cutoff::Unbounded,
                Cutoff::At(v) => Cutoff::At(p.add(&v)),
            },
        };
        let precision = pa.min(pb);
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.add(eb);
                if precision.allows(&e) {
                    terms.push((e, ca.mul(cb)));
                }
            }
        }
        HahnSeries::new(terms, precision)
    }

    pub fn pow(&self, k: u32) -> Self {
        if k == 0 {
            return HahnSeries::monomial(
                self.terms
                    .first()
                    .map(|(e, _)| e.zero_like())
                    .unwrap_or_else(|| GroupElem(vec![])),
                C::one(),
            );
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.mul(self);
        }
        acc
    }
}

impl<C: Coeff> fmt::Display for HahnSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        } else {
            for (i, (e, c)) in self.terms.iter().enumerate() {
                if i > 0 {
                    write!(f, " + ")?;
                }
                write!(f, "({c})*t^{e}")?;
            }
        }
        if let Cutoff::At(p) = &self.precision {
            write!(f, " + O(t^{p})")?;
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for HahnSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Substitute series for every variable of a polynomial. Variables meant to
/// land in the coefficient field should be assigned a degree-zero monomial
/// series carrying the coefficient (see `embed_coeff`).
pub fn subst_series<C: Coeff>(
    f: &MPoly,
    assign: &dyn Fn(&str) -> HahnSeries<C>,
) -> Result<HahnSeries<C>> {
    let images: Vec<HahnSeries<C>> = f.vars().iter().map(|v| assign(v)).collect();
    if f.is_zero() {
        return Ok(HahnSeries::zero(Cutoff::Unbounded));
    }
    // Memoize powers per variable.
    let mut pow_cache: Vec<HashMap<u32, HahnSeries<C>>> = vec![HashMap::new(); images.len()];
    let mut acc: Option<HahnSeries<C>> = None;
    for (m, c) in f.terms() {
        let mut term: Option<HahnSeries<C>> = None;
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let p = pow_cache[i]
                .entry(e)
                .or_insert_with(|| images[i].pow(e))
                .clone();
            term = Some(match term {
                None => p,
                Some(t) => t.mul(&p),
            });
        }
        let term = match term {
            Some(t) => t.scalar_mul(&C::from_rat(c)),
            None => {
                // Constant term: exponent zero of the ambient group; infer
                // the signature from any image with terms.
                let zero_exp = images
                    .iter()
                    .flat_map(|s| s.terms().first())
                    .map(|(e, _)| e.zero_like())
                    .next()
                    .ok_or_else(|| {
                        Error::Precision("cannot infer exponent signature for constant term".into())
                    })?;
                HahnSeries::monomial(zero_exp, C::from_rat(c))
            }
        };
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term),
        });
    }
    Ok(acc.unwrap())
}

/// A coefficient-field element viewed as a degree-zero series.
pub fn embed_coeff<C: Coeff>(zero_exp: GroupElem, c: C) -> HahnSeries<C> {
    HahnSeries::monomial(zero_exp, c)
}
