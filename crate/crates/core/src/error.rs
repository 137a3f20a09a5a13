use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a permutation of [{n}]: {reason}")]
    InvalidPermutation { n: usize, reason: String },

    #[error("sequence contains the repeated entry {0}")]
    RepeatedEntry(i64),

    #[error("invalid set: {0}")]
    InvalidSet(String),

    #[error("set contains 1, which can never be a descent value here")]
    ContainsOne,

    #[error("ambient size n = {n} is smaller than max(S) = {max}")]
    AmbientTooSmall { n: u32, max: u32 },

    #[error("{what} = {requested} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        requested: u64,
        cap: u64,
    },

    #[error("invalid label step from {from} to {to} (steps must be 0 or +1, starting at 1)")]
    InvalidLabelStep { from: u32, to: u32 },

    #[error("invalid composition entry {0}: parts must be positive")]
    NonPositivePart(u32),

    #[error("invalid partition: {0}")]
    InvalidShape(String),

    #[error("filling has {got} cells but the shape has {expected} boxes")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("{what} = {value} is out of range ({range})")]
    OutOfRange {
        what: &'static str,
        value: u64,
        range: String,
    },

    #[error("parse error: {0}")]
    Parse(String),
}
