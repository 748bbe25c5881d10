use thiserror::Error;

use crate::algebra::Algebra;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position} (`{token}`): {message}")]
pub struct ParseError {
    /// Byte offset of the offending token in the input.
    pub position: usize,
    pub token: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a unit: {0}")]
    NotAUnit(String),
    #[error("laurent parameter `{0}` cannot be specialized to zero")]
    ZeroLaurentValue(&'static str),
    #[error("no value supplied for parameter `{0}`")]
    UnassignedParameter(&'static str),
    #[error("element is not homogeneous")]
    MixedParity,
    #[error("expected an element of {expected}, got {found}")]
    AlgebraMismatch { expected: Algebra, found: Algebra },
    #[error("invalid basis symbol: {0}")]
    InvalidSymbol(String),
    #[error("parameter mismatch: {0}")]
    ParamMismatch(String),
    #[error("cannot split {0} into linear factors over Q(sqrt2)")]
    UnsplitPolynomial(String),
    #[error("invalid submodule polynomial: {0}")]
    InvalidSubmodule(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
