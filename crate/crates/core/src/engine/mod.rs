//! Commutator pullback and torsion-order bookkeeping.
//!
//! The engine works one prime at a time: it pulls the degree-3 generator
//! back along the commutator map with `Z/p` coefficients, recognises the
//! result as a Bockstein image (hence the reduction of a generator of a
//! `Z/p^r` torsion summand), adjusts for intermediate coverings, and
//! multiplies the local orders into `l0`.

mod classify;
mod pipeline;
mod report;

pub use classify::{
    apply_covering_multiplier, assemble_l0, classify_obstruction, ord_additive_oracle, Classification, PrimeLocalResult,
};
pub use pipeline::{commutator_pullback, CommutatorPipeline, Stage};
pub use report::{ObstructionReport, Provenance, TraceStep, REPORT_SCHEMA_VERSION};

use thiserror::Error;

use crate::algebra::{AlgebraError, CoefficientRing};
use crate::hopf::HopfError;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("unclassifiable obstruction {class}: {detail}")]
    Unclassifiable { class: String, detail: String },
    #[error("covering exponents need s <= r, got r = {r}, s = {s}")]
    CoveringExponent { r: u32, s: u32 },
    #[error("prime {0} appears twice")]
    DuplicatePrime(u64),
    #[error("obstruction classification needs Z/m coefficients, not {0}")]
    NotModular(CoefficientRing),
    #[error("integer overflow")]
    Overflow,
}
