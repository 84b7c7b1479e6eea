use std::fmt;

use serde::Serialize;

use super::PrimeLocalResult;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// One line of a derivation: `operation(input) = output`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub operation: String,
    pub input: String,
    pub output: String,
    pub citation: String,
}

impl TraceStep {
    pub fn new(
        operation: impl Into<String>,
        input: impl Into<String>,
        output: impl Into<String>,
        citation: impl Into<String>,
    ) -> Self {
        TraceStep { operation: operation.into(), input: input.into(), output: output.into(), citation: citation.into() }
    }

    /// A step that records a fact rather than evaluating an operation.
    pub fn note(operation: impl Into<String>, output: impl Into<String>, citation: impl Into<String>) -> Self {
        Self::new(operation, "", output, citation)
    }
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.input.is_empty() {
            write!(f, "{}: {}", self.operation, self.output)
        } else {
            write!(f, "{}({}) = {}", self.operation, self.input, self.output)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    FullyEngineDerived,
    PartiallyLemmaBacked,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::FullyEngineDerived => "fully-engine-derived",
            Provenance::PartiallyLemmaBacked => "partially-lemma-backed",
        })
    }
}

/// Everything known about `l0` for one group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub schema_version: u32,
    pub group: String,
    /// Order of the centre subgroup `Γ = π₁(G)`.
    pub fundamental_group: String,
    pub l0: u64,
    pub closed_form_l0: u64,
    pub primes: Vec<PrimeLocalResult>,
    pub provenance: Provenance,
    pub trace: Vec<TraceStep>,
}
