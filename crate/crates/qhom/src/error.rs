//! Crate-wide error type.

use thiserror::Error;

/// Errors reported by the library.
///
/// Programming errors (such as mixing scalars from two different fields in
/// the low-level arithmetic operators) panic instead; the validating entry
/// points return [`Error::InvalidParameter`] before any panic can occur.
#[derive(Debug, Error)]
pub enum Error {
    /// A constructor or operation received parameters outside its contract.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Division by zero or inversion of a non-unit.
    #[error("arithmetic error: {0}")]
    Arithmetic(String),

    /// A basis index not supported by the algebra (for example a W index in
    /// the Witt algebra).
    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    /// A table-backed operator was applied outside its stored domain. The
    /// offending output degrees are listed in full.
    #[error("operator domain does not cover output degrees {missing:?}")]
    Domain { missing: Vec<i64> },

    /// A per-degree matrix inverse does not exist at the given output degree.
    #[error("operator profile is singular at degree {0}")]
    SingularAtDegree(i64),

    /// The classification search was refused because its raw size estimate
    /// exceeds the configured ceiling.
    #[error("search space too large: about {estimate} raw assignments exceeds ceiling {ceiling}")]
    SearchTooLarge { estimate: String, ceiling: String },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
