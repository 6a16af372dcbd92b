//! Comma-separated vector parsing with positional error reporting.

use shapecones::error::Error;
use shapecones::exactnum::{parse_rational, Rational};
use shapecones::ShapeVector;

/// Parse failure for one entry of a `--vector` argument. Positions are
/// 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VectorParseError {
    MalformedEntry { position: usize, text: String },
    ZeroDenominator { position: usize },
}

impl std::fmt::Display for VectorParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VectorParseError::MalformedEntry { position, text } => {
                write!(f, "malformed entry {text:?} at position {position}")
            }
            VectorParseError::ZeroDenominator { position } => {
                write!(f, "zero denominator at position {position}")
            }
        }
    }
}

/// Parses a comma-separated list of exact numbers (integers, `p/q`
/// fractions, or finite decimals read positionally) into a vector.
pub fn parse_vector(text: &str) -> Result<ShapeVector, VectorParseError> {
    let mut entries: Vec<Rational> = Vec::new();
    for (index, field) in text.split(',').enumerate() {
        let position = index + 1;
        match parse_rational(field) {
            Ok(value) => entries.push(value),
            Err(Error::ZeroDenominator) => {
                return Err(VectorParseError::ZeroDenominator { position })
            }
            Err(_) => {
                return Err(VectorParseError::MalformedEntry {
                    position,
                    text: field.trim().to_string(),
                })
            }
        }
    }
    ShapeVector::new(entries).map_err(|_| VectorParseError::MalformedEntry {
        position: 1,
        text: String::new(),
    })
}
