//! Lexicographically ordered tuples of exact scalars.
//!
//! A `GroupElem` is a fixed-length tuple whose coordinates are rationals or
//! elements of Q(sqrt 2). Two elements may only be compared or added when
//! their signatures (the tuple of coordinate kinds) agree; the public
//! [`lex_cmp`] reports a mismatch as an error, while the `Ord` impl used
//! internally by tables panics, since tables are signature-homogeneous by
//! construction.

use super::quad::QuadRat;
use super::rat::Rat;
use crate::error::{Error, Result};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;

/// One coordinate of a group element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(Rat),
    Quad(QuadRat),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum ScalarKind {
    Rat,
    Quad,
}

impl Scalar {
    pub fn kind(&self) -> ScalarKind {
        match self {
            Scalar::Rat(_) => ScalarKind::Rat,
            Scalar::Quad(_) => ScalarKind::Quad,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Quad(q) => q.is_zero(),
        }
    }

    pub fn sign(&self) -> i32 {
        match self {
            Scalar::Rat(r) => {
                if r.is_zero() {
                    0
                } else if r.is_positive() {
                    1
                } else {
                    -1
                }
            }
            Scalar::Quad(q) => q.sign(),
        }
    }

    fn cmp_same_kind(&self, other: &Scalar) -> Result<Ordering> {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(a.cmp(b)),
            (Scalar::Quad(a), Scalar::Quad(b)) => Ok(a.cmp(b)),
            _ => Err(Error::SignatureMismatch(format!(
                "cannot compare {:?} with {:?}",
                self.kind(),
                other.kind()
            ))),
        }
    }

    fn add_same_kind(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Quad(a), Scalar::Quad(b)) => Scalar::Quad(a.clone() + b.clone()),
            _ => panic!("scalar kind mismatch in addition"),
        }
    }

    fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Quad(q) => Scalar::Quad(-q.clone()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rat(r) => r.to_f64(),
            Scalar::Quad(q) => q.to_f64(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Quad(q) => write!(f, "{q}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// Rat encodes as a bare string, QuadRat as {"a": .., "b": ..}; the two JSON
// shapes are disjoint so deserialization is unambiguous.
impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Scalar::Rat(r) => r.serialize(s),
            Scalar::Quad(q) => q.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match &v {
            serde_json::Value::String(s) => {
                let r: Rat = s.parse().map_err(D::Error::custom)?;
                Ok(Scalar::Rat(r))
            }
            serde_json::Value::Object(_) => {
                let q: QuadRat = serde_json::from_value(v).map_err(D::Error::custom)?;
                Ok(Scalar::Quad(q))
            }
            _ => Err(D::Error::custom("scalar must be a string or an {a,b} object")),
        }
    }
}

/// Element of a lex-ordered product of scalar groups.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElem(pub Vec<Scalar>);

impl GroupElem {
    pub fn rat1(r: Rat) -> Self {
        GroupElem(vec![Scalar::Rat(r)])
    }

    pub fn rat2(a: Rat, b: Rat) -> Self {
        GroupElem(vec![Scalar::Rat(a), Scalar::Rat(b)])
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        GroupElem(coords.iter().map(|&c| Scalar::Rat(Rat::int(c))).collect())
    }

    pub fn zero_like(&self) -> Self {
        GroupElem(
            self.0
                .iter()
                .map(|s| match s {
                    Scalar::Rat(_) => Scalar::Rat(Rat::zero()),
                    Scalar::Quad(_) => Scalar::Quad(QuadRat::zero()),
                })
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn signature(&self) -> Vec<ScalarKind> {
        self.0.iter().map(Scalar::kind).collect()
    }

    pub fn same_signature(&self, other: &GroupElem) -> bool {
        self.0.len() == other.0.len()
            && self.0.iter().zip(&other.0).all(|(a, b)| a.kind() == b.kind())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    /// Lex sign: sign of the first nonzero coordinate.
    pub fn sign(&self) -> i32 {
        for s in &self.0 {
            let sg = s.sign();
            if sg != 0 {
                return sg;
            }
        }
        0
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn add(&self, other: &GroupElem) -> GroupElem {
        assert!(self.same_signature(other), "signature mismatch in addition");
        GroupElem(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.add_same_kind(b))
                .collect(),
        )
    }

    pub fn neg(&self) -> GroupElem {
        GroupElem(self.0.iter().map(Scalar::neg).collect())
    }

    pub fn sub(&self, other: &GroupElem) -> GroupElem {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: u32) -> GroupElem {
        let mut acc = self.zero_like();
        for _ in 0..k {
            acc = acc.add(self);
        }
        acc
    }

    /// First coordinate as a rational, when it is one.
    pub fn first_rat(&self) -> Option<&Rat> {
        match self.0.first() {
            Some(Scalar::Rat(r)) => Some(r),
            _ => None,
        }
    }

    pub fn coord_rat(&self, i: usize) -> Option<&Rat> {
        match self.0.get(i) {
            Some(Scalar::Rat(r)) => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        write!(f, "(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Lexicographic comparison. Errs when the signatures differ.
pub fn lex_cmp(a: &GroupElem, b: &GroupElem) -> Result<Ordering> {
    if a.0.len() != b.0.len() {
        return Err(Error::SignatureMismatch(format!(
            "lengths {} and {}",
            a.0.len(),
            b.0.len()
        )));
    }
    for (x, y) in a.0.iter().zip(&b.0) {
        match x.cmp_same_kind(y)? {
            Ordering::Equal => continue,
            ord => return Ok(ord),
        }
    }
    Ok(Ordering::Equal)
}

impl PartialOrd for GroupElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        lex_cmp(self, other).ok()
    }
}

impl Ord for GroupElem {
    fn cmp(&self, other: &Self) -> Ordering {
        lex_cmp(self, other).expect("signature mismatch in ordered context")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(coords: &[i64]) -> GroupElem {
        GroupElem::from_i64s(coords)
    }

    #[test]
    fn lex_examples() {
        assert_eq!(lex_cmp(&e(&[1, 0]), &e(&[0, 5])).unwrap(), Ordering::Greater);
        assert_eq!(lex_cmp(&e(&[1, -3]), &e(&[1, -3])).unwrap(), Ordering::Equal);
        // (b3, -a3) = (3, -1) against (1, 0): first coordinates decide
        assert_eq!(lex_cmp(&e(&[3, -1]), &e(&[1, 0])).unwrap(), Ordering::Greater);
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = GroupElem(vec![Scalar::Rat(Rat::one())]);
        let b = GroupElem(vec![Scalar::Quad(QuadRat::alpha())]);
        assert!(lex_cmp(&a, &b).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = GroupElem(vec![
            Scalar::Quad(QuadRat::new(Rat::int(1), Rat::new(2, 3))),
            Scalar::Rat(Rat::new(21, 4)),
        ]);
        let s = serde_json::to_string(&g).unwrap();
        let back: GroupElem = serde_json::from_str(&s).unwrap();
        assert_eq!(g, back);
    }
}
