//! Exact-arithmetic toolkit for value semigroups of valuations on local
//! rings: ordered-group scalars, sparse polynomials, generalized power
//! series, well-ordered semigroup enumeration, key-polynomial valuations,
//! rank-2 composite valuations, a transcendental-series construction, and
//! fat-point interpolation.

pub mod error;
pub mod hahn;
pub mod order;
pub mod poly;
pub mod semigroup;
pub mod skp;

pub use error::{Error, Result};
