//! Sparse multivariate polynomials over Q.
//!
//! Terms are stored in a BTreeMap keyed by exponent vector under graded lex
//! order (total degree first, then lex), which fixes a deterministic term
//! iteration for printing and JSON output. The zero polynomial is the empty
//! term map. Binary operations merge variable sets by name.

use crate::error::{Error, Result};
use crate::order::Rat;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Total-degree cap guarding runaway expansions.
pub const DEGREE_CAP: u64 = 4096;

/// Exponent vector with graded lex ordering.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    vars: Vec<String>,
    terms: BTreeMap<Mono, Rat>,
}

impl MPoly {
    pub fn zero(vars: &[&str]) -> Self {
        MPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: Rat) -> Self {
        let mut p = MPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Mono(vec![0; p.vars.len()]), c);
        }
        p
    }

    pub fn one(vars: &[&str]) -> Self {
        MPoly::constant(vars, Rat::one())
    }

    pub fn var(vars: &[&str], name: &str) -> Result<Self> {
        let mut p = MPoly::zero(vars);
        let i = p
            .vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let mut exps = vec![0u32; p.vars.len()];
        exps[i] = 1;
        p.terms.insert(Mono(exps), Rat::one());
        Ok(p)
    }

    /// Build x^a * y^b * ... from an exponent slice aligned with `vars`.
    pub fn monomial(vars: &[&str], exps: &[u32], coeff: Rat) -> Self {
        assert_eq!(vars.len(), exps.len());
        let mut p = MPoly::zero(vars);
        if !coeff.is_zero() {
            p.terms.insert(Mono(exps.to_vec()), coeff);
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(Mono::total_degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        let Some(i) = self.vars.iter().position(|v| v == var) else {
            return 0;
        };
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    /// Order at the origin: least total degree of a term (0 for constants);
    /// None for the zero polynomial.
    pub fn order(&self) -> Option<u64> {
        self.terms.keys().map(Mono::total_degree).min()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rat {
        self.terms
            .get(&Mono(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    fn insert_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Remap self onto a superset variable list.
    fn extended(&self, vars: &[String]) -> MPoly {
        if self.vars == vars {
            return self.clone();
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("superset"))
            .collect();
        let mut out = MPoly {
            vars: vars.to_vec(),
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; vars.len()];
            for (i, &e) in m.0.iter().enumerate() {
                exps[map[i]] = e;
            }
            out.terms.insert(Mono(exps), c.clone());
        }
        out
    }

    fn unified(a: &MPoly, b: &MPoly) -> (MPoly, MPoly) {
        if a.vars == b.vars {
            return (a.clone(), b.clone());
        }
        let mut vars = a.vars.clone();
        for v in &b.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        (a.extended(&vars), b.extended(&vars))
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let (mut a, b) = MPoly::unified(self, other);
        for (m, c) in b.terms {
            a.insert_term(m, c);
        }
        a
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> Result<MPoly> {
        let (a, b) = MPoly::unified(self, other);
        let deg = a.total_degree() + b.total_degree();
        if deg > DEGREE_CAP {
            return Err(Error::DegreeCap { cap: DEGREE_CAP, got: deg });
        }
        // Accumulate in a hash map, then sort once; faster than repeated
        // BTreeMap rebalancing on large products.
        let mut acc: std::collections::HashMap<Vec<u32>, Rat> =
            std::collections::HashMap::with_capacity(a.terms.len().max(b.terms.len()) * 2);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let exps: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect();
                let prod = ca * cb;
                match acc.entry(exps) {
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += &prod;
                    }
                }
            }
        }
        let mut out = MPoly {
            vars: a.vars,
            terms: BTreeMap::new(),
        };
        for (exps, c) in acc {
            if !c.is_zero() {
                out.terms.insert(Mono(exps), c);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<MPoly> {
        let mut result = MPoly::one(&self.vars.iter().map(|s| s.as_str()).collect::<Vec<_>>());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    fn zero_with(vars: Vec<String>) -> MPoly {
        MPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    /// Substitute every variable by the assigned polynomial.
    pub fn subst(&self, assign: &dyn Fn(&str) -> MPoly) -> Result<MPoly> {
        let images: Vec<MPoly> = self.vars.iter().map(|v| assign(v)).collect();
        let mut out_vars: Vec<String> = Vec::new();
        for im in &images {
            for v in &im.vars {
                if !out_vars.contains(v) {
                    out_vars.push(v.clone());
                }
            }
        }
        let mut out = MPoly::zero_with(out_vars.clone());
        for (m, c) in &self.terms {
            let mut term = MPoly::zero_with(out_vars.clone());
            term.insert_term(Mono(vec![0; out_vars.len()]), c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[i].pow(e)?)?;
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Evaluate at rational points, one per variable.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += &t;
        }
        acc
    }

    /// Partial derivative with respect to the named variable.
    pub fn derivative(&self, var: &str) -> Result<MPoly> {
        let i = self
            .vars
            .iter()
            .position(|v| v == var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        let mut out = MPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] = e - 1;
            out.insert_term(Mono(exps), c * &Rat::int(e as i64));
        }
        Ok(out)
    }

    /// Divide by x^i where x is the named variable. Returns the quotient and
    /// its degree in `deg_var`; errs on any term with x-exponent below i.
    pub fn var_power_divide(&self, var: &str, i: u32, deg_var: &str) -> Result<(MPoly, u32)> {
        let vi = self
            .vars
            .iter()
            .position(|v| v == var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        let mut out = MPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            if m.0[vi] < i {
                return Err(Error::NotDivisible {
                    term: format_term(&self.vars, m, c),
                    want: i,
                });
            }
            let mut exps = m.0.clone();
            exps[vi] -= i;
            out.terms.insert(Mono(exps), c.clone());
        }
        let d = out.degree_in(deg_var);
        Ok((out, d))
    }

    /// View as a univariate polynomial in `var`: coefficients by ascending
    /// exponent, each a polynomial in the remaining variables.
    pub fn coeffs_in(&self, var: &str) -> Result<Vec<MPoly>> {
        let vi = self
            .vars
            .iter()
            .position(|v| v == var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        let d = self.degree_in(var) as usize;
        let mut out =
            vec![
                MPoly {
                    vars: self.vars.clone(),
                    terms: BTreeMap::new()
                };
                d + 1
            ];
        for (m, c) in &self.terms {
            let e = m.0[vi] as usize;
            let mut exps = m.0.clone();
            exps[vi] = 0;
            out[e].insert_term(Mono(exps), c.clone());
        }
        Ok(out)
    }

    /// Polynomial division f = q*g + r in the variable `var`, valid when g is
    /// monic in `var` (leading coefficient a nonzero constant is also fine).
    pub fn divmod_in(&self, g: &MPoly, var: &str) -> Result<(MPoly, MPoly)> {
        let (f0, g0) = MPoly::unified(self, g);
        let dg = g0.degree_in(var);
        assert!(dg > 0, "divisor must involve {var}");
        let g_coeffs = g0.coeffs_in(var)?;
        let lead = &g_coeffs[dg as usize];
        assert!(
            lead.total_degree() == 0 && !lead.is_zero(),
            "divisor must have constant leading coefficient in {var}"
        );
        let lead_c = lead.coeff(&vec![0; lead.vars.len()]);
        let vi = f0.vars.iter().position(|v| v == var).unwrap();
        let var_poly = MPoly::var(
            &f0.vars.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
            var,
        )?;
        let mut r = f0.clone();
        let mut q = MPoly {
            vars: f0.vars.clone(),
            terms: BTreeMap::new(),
        };
        loop {
            let dr = r.degree_in(var);
            if r.is_zero() || dr < dg {
                break;
            }
            // leading coefficient of r in var
            let mut lead_r = MPoly {
                vars: r.vars.clone(),
                terms: BTreeMap::new(),
            };
            for (m, c) in &r.terms {
                if m.0[vi] == dr {
                    let mut exps = m.0.clone();
                    exps[vi] = 0;
                    lead_r.insert_term(Mono(exps), c.clone());
                }
            }
            let shift = var_poly.pow(dr - dg)?;
            let t = lead_r.scale(&(Rat::one() / lead_c.clone())).mul(&shift)?;
            q = q.add(&t);
            r = r.sub(&t.mul(&g0)?);
        }
        Ok((q, r))
    }

    /// Content: gcd of coefficients over Q with the sign of the leading term,
    /// so that dividing by it makes the leading coefficient positive with
    /// integer-primitive coefficients.
    pub fn content(&self) -> Rat {
        use num::{BigInt, Integer, One};
        if self.is_zero() {
            return Rat::one();
        }
        let mut num_gcd = BigInt::from(0);
        let mut den_lcm = BigInt::from(1);
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(&c.numer().clone());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_one() && den_lcm.is_one() {
            let lead_neg = self.terms.iter().next_back().map(|(_, c)| c.is_negative());
            if lead_neg == Some(true) {
                return Rat::int(-1);
            }
            return Rat::one();
        }
        let mut content = Rat::new(num_gcd, den_lcm);
        if let Some((_, c)) = self.terms.iter().next_back() {
            if c.is_negative() {
                content = -content;
            }
        }
        content
    }
}

fn format_term(vars: &[String], m: &Mono, c: &Rat) -> String {
    let mut parts: Vec<String> = Vec::new();
    if c != &Rat::one() && c != &Rat::int(-1) || m.total_degree() == 0 {
        parts.push(c.to_string());
    } else if c == &Rat::int(-1) {
        parts.push("-".into());
    }
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars[i].clone()),
            _ => parts.push(format!("{}^{}", vars[i], e)),
        }
    }
    let mut s = String::new();
    for (i, p) in parts.iter().enumerate() {
        if i > 0 && p != "-" && parts[i - 1] != "-" {
            s.push('*');
        }
        s.push_str(p);
    }
    if s.is_empty() {
        s = c.to_string();
    }
    s
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Print with the last variable most significant (y before x for the
        // plane-curve polynomials), descending; JSON keeps storage order.
        let mut ordered: Vec<(&Mono, &Rat)> = self.terms.iter().collect();
        ordered.sort_by(|(a, _), (b, _)| {
            let ra: Vec<u32> = a.0.iter().rev().copied().collect();
            let rb: Vec<u32> = b.0.iter().rev().copied().collect();
            rb.cmp(&ra)
        });
        let mut first = true;
        for (m, c) in ordered {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{}", format_term(&self.vars, m, &abs))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for MPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("MPoly", 2)?;
        st.serialize_field("vars", &self.vars)?;
        let terms: Vec<(Vec<u32>, String)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.0.clone(), c.to_string()))
            .collect();
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for MPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Raw {
            vars: Vec<String>,
            terms: Vec<(Vec<u32>, String)>,
        }
        let raw = Raw::deserialize(d)?;
        let mut p = MPoly {
            vars: raw.vars,
            terms: BTreeMap::new(),
        };
        for (exps, c) in raw.terms {
            if exps.len() != p.vars.len() {
                return Err(D::Error::custom("exponent length mismatch"));
            }
            let c: Rat = c.parse().map_err(D::Error::custom)?;
            p.insert_term(Mono(exps), c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    #[test]
    fn expand_square() {
        let p2 = parse_poly("y^2 - x^5", &["x", "y"]).unwrap();
        let sq = p2.pow(2).unwrap();
        let expect = parse_poly("y^4 - 2*x^5*y^2 + x^10", &["x", "y"]).unwrap();
        assert_eq!(sq, expect);
    }

    #[test]
    fn substitute_y_by_xz() {
        let p2 = parse_poly("y^2 - x^5", &["x", "y"]).unwrap();
        let img = p2
            .subst(&|v| {
                if v == "y" {
                    parse_poly("x*z", &["x", "z"]).unwrap()
                } else {
                    parse_poly("x", &["x", "z"]).unwrap()
                }
            })
            .unwrap();
        let expect = parse_poly("x^2*z^2 - x^5", &["x", "z"]).unwrap();
        assert_eq!(img, expect);
    }

    #[test]
    fn eval_at_ones() {
        // P2^2 - x^8*y at (1,1) = (1-1)^2 - 1 = -1
        let p = parse_poly("(y^2-x^5)^2 - x^8*y", &["x", "y"]).unwrap();
        assert_eq!(p.eval(&[Rat::one(), Rat::one()]), Rat::int(-1));
    }

    #[test]
    fn x_power_divide_cases() {
        let f = parse_poly("x^2*z^2 - x^5", &["x", "z"]).unwrap();
        let (q, dz) = f.var_power_divide("x", 2, "z").unwrap();
        assert_eq!(q, parse_poly("z^2 - x^3", &["x", "z"]).unwrap());
        assert_eq!(dz, 2);
        assert!(f.var_power_divide("x", 3, "z").is_err());
    }

    #[test]
    fn divmod_in_y() {
        let f = parse_poly("y^2", &["x", "y"]).unwrap();
        let g = parse_poly("y^2 - x^5", &["x", "y"]).unwrap();
        let (q, r) = f.divmod_in(&g, "y").unwrap();
        assert_eq!(q, parse_poly("1", &["x", "y"]).unwrap());
        assert_eq!(r, parse_poly("x^5", &["x", "y"]).unwrap());
    }

    #[test]
    fn derivative_basic() {
        let f = parse_poly("3*w^2 + w", &["w"]).unwrap();
        assert_eq!(f.derivative("w").unwrap(), parse_poly("6*w + 1", &["w"]).unwrap());
    }
}
