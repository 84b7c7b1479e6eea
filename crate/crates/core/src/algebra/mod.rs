//! Finitely presented graded-commutative algebras over `Z/m` or `Q`.
//!
//! A presentation is an ordered list of generators, each either exterior
//! (square zero, odd degree) or truncated polynomial (`x^h = 0`). Monomials are
//! exponent vectors in generator order, and reordering two generators of
//! degrees `d1`, `d2` costs the Koszul sign `(-1)^(d1 d2)`.

mod element;
mod parse;
mod presentation;
mod render;
mod ring;

pub use element::{Element, Monomial};
pub use presentation::{AlgebraPresentation, Generator, GeneratorKind, TensorLayout, Truncation};
pub use ring::{scalar_to_i64, CoefficientRing, Scalar};

use thiserror::Error;

/// Default computation cutoff for total degree.
pub const DEFAULT_MAX_DEGREE: u32 = 8;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),
    #[error("{0} is not an element of {1}")]
    NotInRing(String, CoefficientRing),
    #[error("coefficient ring mismatch: {0} vs {1}")]
    RingMismatch(CoefficientRing, CoefficientRing),
    #[error("product has a term of degree {degree}, past the cutoff {max_degree}")]
    DegreeOverflow { degree: u32, max_degree: u32 },
    #[error("degree {degree} is outside 0..={max_degree}")]
    DegreeOutOfRange { degree: u32, max_degree: u32 },
    #[error("invalid generator `{name}`: {reason}")]
    InvalidGenerator { name: String, reason: String },
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("monomial {0:?} does not belong to this presentation")]
    ForeignMonomial(Vec<u32>),
    #[error("element is not homogeneous (degrees {0} and {1})")]
    MixedDegree(u32, u32),
    #[error("cannot parse element at byte {position}: {message}")]
    Parse { position: usize, message: String },
}
