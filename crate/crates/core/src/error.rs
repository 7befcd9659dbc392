//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failures reported by library operations.
///
/// The variants are grouped the way the command-line front end maps them to
/// exit codes: [`Error::Parse`] is malformed input, everything else is a
/// violated precondition of a well-formed request.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input document or value.
    #[error("parse error: {0}")]
    Parse(String),
    /// Vectors or weight sequences of incompatible lengths.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    /// A jet lift or weighting test asked for more derivatives than stored.
    #[error("order exceeded: requested {requested}, available {available}")]
    OrderExceeded { requested: usize, available: usize },
    /// Source weights are not componentwise above the target weights.
    #[error("not a weighted morphism: column {column} has source weight {source_weight} below target weight {target_weight}")]
    NotAMorphism { column: usize, source_weight: u32, target_weight: u32 },
    /// A point lies outside the domain of a chart, map or model.
    #[error("outside domain: {0}")]
    OutsideDomain(String),
    /// Input data that violates a structural requirement (e.g. not a nest).
    #[error("invalid input: {0}")]
    Invalid(String),
    /// An exhaustive search would exceed its configured cap.
    #[error("search cap exceeded: {what} has size {size}, cap is {cap}")]
    CapExceeded { what: String, size: usize, cap: usize },
    /// An exact computation left the representable class of numbers.
    #[error("not exactly representable: {0}")]
    Inexact(String),
}

pub type Result<T> = std::result::Result<T, Error>;
