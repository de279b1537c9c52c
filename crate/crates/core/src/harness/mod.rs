//! Thresholds for both spectral conditions, verification over graph streams,
//! audits of the supporting inequality chains, and extremal identification.

mod audit;
mod constants;
mod extremal;
mod suites;
mod threshold;
mod verify;

use serde::Serialize;
use thiserror::Error;

use crate::combinatorics::CombError;
use crate::family::FamilyError;
use crate::spectral::SpectralError;

pub use audit::{
    audit_edge_chain, audit_edge_quadratic, audit_large_degree, audit_middle_root, audit_small_degree,
    edge_quadratic, summarize, AuditPoint, AuditSummary, Check, Quantity, Relation,
};
pub use constants::{proof_constants, ProofConstant};
pub use extremal::is_extremal_graph;
pub use suites::{fke_mode_suite, fpm_suite, hong_suite, interlace_suite, neighborhood_suite, AuditKind, SuiteReport};
pub use threshold::{threshold_fke, threshold_tree, Candidate, ThresholdResult};
pub use verify::{
    deletion_closure, verify_fke, verify_leaf_distance, Counterexample, ExtremalCheck, FkeParams, InstanceRecord, LeafParams,
    Sampler, VerificationReport, Verdict, VerdictCounts,
};

/// Slack for `ρ(G) ≥ threshold`; ties count as in hypothesis.
pub const HYPOTHESIS_TOL: f64 = 1e-9;
/// Required agreement between eigensolver and quotient-root values.
pub const AGREEMENT_TOL: f64 = 1e-8;
/// Slack for non-strict floating comparisons in audits.
pub const AUDIT_TOL: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Comb(#[from] CombError),
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("{method} and quotient root disagree by {gap:e} for {family}")]
    Agreement { family: String, method: String, gap: f64 },
    #[error("sampler produced a graph on {found} vertices, expected {expected}")]
    Order { expected: usize, found: usize },
    #[error("quarantine file: {0}")]
    Quarantine(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub hypothesis: f64,
    pub agreement: f64,
    pub eigen: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hypothesis: HYPOTHESIS_TOL,
            agreement: AGREEMENT_TOL,
            eigen: crate::spectral::DEFAULT_TOL,
        }
    }
}
