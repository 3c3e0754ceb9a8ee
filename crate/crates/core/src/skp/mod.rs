//! The dyadic plane valuation on K[x,y] via its generating sequence of key
//! polynomials.
//!
//! The sequence P_0 = x, P_1 = y, P_{i+1} = P_i^2 - x^{2^(i+1)} P_{i-1}
//! determines a valuation with values beta_i = (1/3)(2^(i+2) - 2^(-i)): any
//! polynomial has a unique standard expansion in bounded powers of the P_i,
//! distinct standard monomials take distinct values, and the valuation of a
//! polynomial is the minimum value over its expansion terms.

mod dyadic;
mod graded;
mod modules;

pub use dyadic::{dyadic_beta, dyadic_beta_recursive, in_m0};
pub use graded::{graded_spectrum, GradedElt, PMono, SpectrumOutcome};
pub use modules::{is_in_mn, module_mn, new_generator_witness, un_elements, WitnessEntry};

use crate::error::{Error, Result};
use crate::order::Rat;
use crate::poly::{parse_poly, MPoly};
use serde::Serialize;

pub const VARS: [&str; 2] = ["x", "y"];

#[derive(Clone, Debug, Serialize)]
pub struct KeyPoly {
    pub poly: MPoly,
    pub beta: Rat,
    /// Order of the defining datum in the quotient group; 2 at every level
    /// of the dyadic sequence. The exponent of entry 0 is unbounded in
    /// standard expansions, so m is only meaningful from index 1 on.
    pub m: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct KeyPolySeq {
    pub entries: Vec<KeyPoly>,
}

impl KeyPolySeq {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn poly(&self, i: usize) -> &MPoly {
        &self.entries[i].poly
    }

    pub fn beta(&self, i: usize) -> &Rat {
        &self.entries[i].beta
    }

    /// y-degree of P_i: 0, then 2^(i-1).
    pub fn y_degree(i: usize) -> u32 {
        if i == 0 {
            0
        } else {
            1 << (i - 1)
        }
    }
}

/// Build the sequence up to index n (inclusive). The recursion applies from
/// P_2 = y^2 - x^5 onward; both displayed low cases are instances of it.
pub fn skp_build(n: usize) -> Result<KeyPolySeq> {
    let x = parse_poly("x", &VARS)?;
    let y = parse_poly("y", &VARS)?;
    let mut entries = vec![
        KeyPoly { poly: x.clone(), beta: dyadic_beta(0), m: 1 },
        KeyPoly { poly: y, beta: dyadic_beta(1), m: 2 },
    ];
    for i in 1..n {
        let p_i = &entries[i].poly;
        let p_prev = &entries[i - 1].poly;
        let shift = x.pow(
            2u32.checked_pow(i as u32 + 1)
                .ok_or(Error::DegreeCap { cap: crate::poly::DEGREE_CAP, got: u64::MAX })?,
        )?;
        let next = p_i.pow(2)?.sub(&shift.mul(p_prev)?);
        entries.push(KeyPoly {
            poly: next,
            beta: dyadic_beta(i as u32 + 1),
            m: 2,
        });
    }
    entries.truncate(n + 1);
    Ok(KeyPolySeq { entries })
}

/// One term coeff * x^(l_0) * prod_{j>=1} P_j^(l_j) of a standard expansion,
/// with 0 <= l_j < 2 for j >= 1.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StdTerm {
    pub coeff: Rat,
    pub exps: Vec<u32>,
}

impl StdTerm {
    pub fn value(&self, kps: &KeyPolySeq) -> Rat {
        let mut v = Rat::zero();
        for (j, &l) in self.exps.iter().enumerate() {
            if l > 0 {
                v += &(&Rat::from_u64_pair(l as i64, 1) * kps.beta(j));
            }
        }
        v
    }

    pub fn reconstruct(&self, kps: &KeyPolySeq) -> Result<MPoly> {
        let mut acc = MPoly::constant(&VARS, self.coeff.clone());
        for (j, &l) in self.exps.iter().enumerate() {
            if l > 0 {
                acc = acc.mul(&kps.poly(j).pow(l)?)?;
            }
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StdExpansion {
    pub terms: Vec<StdTerm>,
}

impl StdExpansion {
    pub fn reconstruct(&self, kps: &KeyPolySeq) -> Result<MPoly> {
        let mut acc = MPoly::zero(&VARS);
        for t in &self.terms {
            acc = acc.add(&t.reconstruct(kps)?);
        }
        Ok(acc)
    }
}

/// Unique expansion of f in bounded powers of the key polynomials, by greedy
/// division: divide by the highest-index P_i whose y-degree fits, recurse on
/// quotient and remainder. Terminates since y-degrees halve; the exponent of
/// P_i in the quotient branch stays below 2 because deg_y q < deg_y P_i.
pub fn standard_expansion(f: &MPoly, kps: &KeyPolySeq) -> Result<StdExpansion> {
    let n = kps.len() - 1;
    let dy = f.degree_in("y");
    if dy >= 1 << n {
        return Err(Error::SequenceTooShort {
            need: dy,
            have: (1 << n) - 1,
        });
    }
    let mut terms = Vec::new();
    expand_rec(f, kps, &mut terms)?;
    terms.sort_by(|a, b| a.exps.cmp(&b.exps));
    Ok(StdExpansion { terms })
}

fn expand_rec(f: &MPoly, kps: &KeyPolySeq, out: &mut Vec<StdTerm>) -> Result<()> {
    if f.is_zero() {
        return Ok(());
    }
    let d = f.degree_in("y");
    if d == 0 {
        for (m, c) in f.terms() {
            // variables are [x, y] with y-exponent 0 here
            let mut exps = vec![0u32; kps.len()];
            exps[0] = m.0[0];
            out.push(StdTerm { coeff: c.clone(), exps });
        }
        return Ok(());
    }
    let mut i = 1;
    while i + 1 < kps.len() && KeyPolySeq::y_degree(i + 1) <= d {
        i += 1;
    }
    debug_assert!(KeyPolySeq::y_degree(i) <= d);
    let (q, r) = f.divmod_in(kps.poly(i), "y")?;
    let mut q_terms = Vec::new();
    expand_rec(&q, kps, &mut q_terms)?;
    for mut t in q_terms {
        debug_assert_eq!(t.exps[i], 0);
        t.exps[i] = 1;
        out.push(t);
    }
    expand_rec(&r, kps, out)
}

/// Value of a nonzero polynomial: the minimum of the term values of its
/// standard expansion. Distinct standard terms take distinct values (the
/// 2-adic fractional part of a value determines every l_j with j >= 1), so
/// the minimum is attained once and the rule is additive on products.
pub fn nu_bar(f: &MPoly, kps: &KeyPolySeq) -> Result<Rat> {
    if f.is_zero() {
        return Err(Error::ZeroValue);
    }
    let exp = standard_expansion(f, kps)?;
    exp.terms
        .iter()
        .map(|t| t.value(kps))
        .min()
        .ok_or(Error::ZeroValue)
}

/// nu extended to fractions: value of numerator minus value of denominator.
pub fn nu_bar_frac(num: &MPoly, den: &MPoly, kps: &KeyPolySeq) -> Result<Rat> {
    Ok(nu_bar(num, kps)? - nu_bar(den, kps)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct XFactorReport {
    pub i: usize,
    pub quotient_z_degree: u32,
    pub ok: bool,
}

/// Substitute y -> x*z in P_i, divide by x^i, and verify the quotient is a
/// polynomial of z-degree at most i.
pub fn x_factorization_check(i: usize, kps: &KeyPolySeq) -> Result<XFactorReport> {
    let p = kps.poly(i);
    let img = p.subst(&|v| {
        if v == "y" {
            parse_poly("x*z", &["x", "z"]).unwrap()
        } else {
            parse_poly("x", &["x", "z"]).unwrap()
        }
    })?;
    let (_, dz) = img.var_power_divide("x", i as u32, "z")?;
    Ok(XFactorReport {
        i,
        quotient_z_degree: dz,
        ok: dz <= i as u32,
    })
}
