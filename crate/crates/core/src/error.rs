use thiserror::Error;

/// Errors shared across the crate. Mathematical invariant violations are
/// reported as `Invariant` so callers can distinguish them from usage errors.
#[derive(Debug, Error)]
pub enum Error {
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("total degree cap {cap} exceeded (got {got})")]
    DegreeCap { cap: u64, got: u64 },

    #[error("not divisible: term {term} has x-exponent below {want}")]
    NotDivisible { term: String, want: u32 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("enumeration incomplete: {0}")]
    Incomplete(String),

    #[error("generator horizon {0} exhausted before generators exceeded the bound")]
    HorizonExhausted(usize),

    #[error("precision exhausted: {0}")]
    Precision(String),

    #[error("key polynomial sequence too short: need y-degree > {need}, have {have}")]
    SequenceTooShort { need: u32, have: u32 },

    #[error("value of zero is undefined")]
    ZeroValue,

    #[error("no multiple of the target lies in the table below bound {0}")]
    NoMultipleBelowBound(String),

    #[error("invariant violation: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
