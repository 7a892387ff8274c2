use alloc::string::String;
use thiserror::Error;

/// Errors raised by the exact pipelines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two objects defined over a different number of variables were combined.
    #[error("dimension mismatch: expected {expected} variables, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// A numeric argument fell outside its admissible range.
    #[error("{name} = {value} is out of range ({constraint})")]
    OutOfRange {
        name: &'static str,
        value: i128,
        constraint: &'static str,
    },

    /// A malformed argument that is not a simple range violation.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Index pairs passed to a basis-polynomial constructor overlap.
    #[error("index {0} appears more than once in the pair list")]
    OverlappingIndices(usize),

    /// A certificate is malformed (degree bounds, term layout, Gram data).
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),

    /// A requested enumeration or search exceeds its size budget.
    #[error("budget exceeded: {what} = {requested} > {limit}")]
    BudgetExceeded {
        what: &'static str,
        requested: u64,
        limit: u64,
    },

    /// An internal consistency check failed. Indicates a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
