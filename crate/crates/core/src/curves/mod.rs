//! Polynomials with one place at infinity built from a δ-sequence.

mod parse;
mod poly;
mod resultant;
mod roots;

use crate::delta::{DeltaError, TypeTag};
use crate::semigroup::SemigroupError;
use crate::values::ValueError;

pub use parse::parse_poly;
pub use poly::{BivariatePolynomial, Exponent};
pub use resultant::resultant_oracle;
pub use roots::{approximate_roots, core_value, qadic_expand, qadic_reconstruct, value_at_infinity, InfinityValue, QAdicTerm};

/// Largest total degree a polynomial may reach.
pub const MAX_DEGREE: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurveError {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("degree exceeds {MAX_DEGREE}")]
    DegreeOverflow,
    #[error("{0} is not monic in y")]
    NotMonic(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("the polynomials share a common factor")]
    CommonFactor,
    #[error("expected {expected} parameters, got {got}")]
    ParameterCount { expected: usize, got: usize },
    #[error("t{0} must be nonzero")]
    ZeroParameter(usize),
    #[error("values at infinity need a type A or B sequence, got type {0}")]
    UnsupportedType(TypeTag),
    #[error("postcondition failed: {0}")]
    Postcondition(String),
    #[error(transparent)]
    Delta(#[from] DeltaError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Value(#[from] ValueError),
}
