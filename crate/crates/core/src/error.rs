use thiserror::Error;

use crate::poly::PolyError;
use crate::text::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("{0}")]
    Domain(String),
    #[error("component {component} is not a polynomial (negative exponent)")]
    NotRegular { component: usize },
    #[error("the given point is not a two-sided unit")]
    InvalidUnit,
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error("center component count {counted} differs from gcd(|b-b'|,|c-c'|)+1 = {formula}")]
    CountMismatch { formula: usize, counted: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
