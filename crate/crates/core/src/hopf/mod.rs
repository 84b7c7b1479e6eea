//! Hopf-algebra layer over the graded algebra engine: coproducts, the
//! derived antipode, Bockstein derivations, tensor squares and the induced
//! maps that the commutator pipeline is assembled from.

mod map;
mod presentation;
pub mod tensor;
mod verify;

pub use map::InducedMap;
pub use presentation::{BocksteinData, HopfPresentation};
pub use tensor::TensorSquare;
pub use verify::{verify_hopf_axioms, Axiom, AxiomCheck, HopfDiagnostics};

use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum HopfError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("not an algebra map at `{generator}`: {reason}")]
    NotAlgebraMap { generator: String, reason: String },
    #[error("antipode recursion failed at `{generator}`: {reason}")]
    AntipodeRecursion { generator: String, reason: String },
    #[error("no Bockstein data for {0}")]
    MissingBockstein(String),
    #[error("malformed presentation: {0}")]
    Structure(String),
    #[error("Hopf axioms fail for {presentation}: {summary}")]
    Axioms { presentation: String, summary: String },
}
