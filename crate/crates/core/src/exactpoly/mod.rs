//! Exact multivariate polynomials over the rationals and the rational linear
//! algebra (rank, kernels, spans) used by every computational module.

mod matrix;
mod parse;
mod poly;

pub use matrix::{span_rank, RationalMatrix};
pub use poly::{monomials_of_degree, Monomial, MultiPoly, PolyRing};

use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable lists differ: {left:?} vs {right:?}")]
    VariableMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("expected {expected} values, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("matrix shape: {0}")]
    Shape(String),
}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Shorthand for `n/d`.
pub fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}
