use thiserror::Error;

use crate::generators::ConeKind;
use crate::shapes::PredicateKind;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Gaussian elimination found no nonzero pivot in the given column
    /// (0-based).
    #[error("singular matrix: no nonzero pivot for column {column}")]
    SingularMatrix { column: usize },

    /// Two operands have incompatible sizes.
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// A generator index fell outside its family's valid range (1-based).
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    /// Log-concavity is defined only for strictly positive vectors.
    /// The index is 1-based.
    #[error("log-concavity requires strictly positive entries; entry {index} is not")]
    NonPositiveEntry { index: usize },

    /// The vector fails a defining inequality of the requested cone.
    /// The witness index is 1-based.
    #[error("not in cone {kind}: {predicate} fails at index {index}")]
    NotInCone {
        kind: ConeKind,
        predicate: PredicateKind,
        index: usize,
    },

    /// Shape vectors must have at least one entry.
    #[error("shape vectors must be non-empty")]
    EmptyVector,

    /// An exactly computed inverse failed one of its claimed structural
    /// properties. This signals an implementation bug, not bad input.
    #[error("structural property violated: {0}")]
    StructuralViolation(String),

    /// Extreme-ray verification was requested above the configured bound.
    #[error("dimension {n} exceeds the extreme-ray verification limit {limit}")]
    ScaleLimitExceeded { n: usize, limit: usize },

    /// A number literal could not be read as integer, fraction or finite
    /// decimal.
    #[error("malformed number {text:?}")]
    MalformedNumber { text: String },

    /// A fraction literal had denominator zero.
    #[error("zero denominator")]
    ZeroDenominator,

    /// Serialized matrix or generator data did not match the expected layout.
    #[error("malformed serialized data: {0}")]
    MalformedData(String),
}
