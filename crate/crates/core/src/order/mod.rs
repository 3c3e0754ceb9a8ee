//! Exact scalars and ordered-group machinery: rationals, Q(sqrt 2),
//! lex-ordered tuples, and cyclic subgroups of Q.
//!
//! All types here are immutable values with structural equality; no floating
//! point enters any comparison or arithmetic path.

mod group;
mod quad;
mod rat;
mod subgroup;

pub use group::{lex_cmp, GroupElem, Scalar, ScalarKind};
pub use quad::QuadRat;
pub use rat::{bigint_sign, rat_gcd, Rat};
pub use subgroup::{q_subgroup, subgroup_index, QSubgroup};
