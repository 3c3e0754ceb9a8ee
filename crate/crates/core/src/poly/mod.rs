//! Sparse multivariate polynomials and rational functions over Q, with an
//! expression parser. Substrate for key polynomials, series coefficients,
//! and interpolation matrices.

mod mpoly;
mod parse;
mod ratfunc;

pub use mpoly::{MPoly, Mono, DEGREE_CAP};
pub use parse::parse_poly;
pub use ratfunc::RatFunc;
