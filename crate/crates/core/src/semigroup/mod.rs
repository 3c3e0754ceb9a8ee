//! Well-ordered semigroups and their modules: enumeration with witnesses,
//! minimal generators, the plane-branch criterion, finite-generation
//! probing, two-family accumulation examples, gap scans, and the omega^m
//! embedding witness.

mod module;
mod numerical;
mod omega;
mod plane;
mod scan;
mod stream;
mod table;

pub use module::{
    module_elements_below, module_fin_gen_probe, probe_elements, ProbeReport, SemiModule,
    PROBE_SEMANTICS,
};
pub use numerical::{gcd, NumSemigroup};
pub use omega::{omega_embedding, LambdaRule, OmegaEntry, OmegaTable};
pub use plane::{
    plane_branch_check, rat_semigroup_member, s_value, s_value_in_table, scale_to_integers,
    PlaneIndexReport, PlaneReport,
};
pub use scan::{accumulation_scan, spq_build, ScanReport};
pub use stream::{GenStream, Rule, SeqRule};
pub use table::{enumerate_below, minimal_generators, Bound, EnumLimits, SemiTable};
