//! Exact combinatorial oracles: independence statistics, isolated-vertex
//! sweeps, matchings, fractional perfect matchings, fractional
//! k-extendability and leaf-distance spanning trees.

mod extend;
mod fpm;
mod independence;
mod matching;
mod sweep;
mod tree;

use num_rational::Ratio;
use serde::Serializer;
use thiserror::Error;

pub use extend::{is_fractional_k_extendable, FkeMode, FkeVerdict};
pub use fpm::{has_fpm, FpmResult, FractionalMatching};
pub use independence::{delta_condition, delta_t, independence_number, DeltaCondition};
pub use matching::{
    enumerate_k_matchings, for_each_k_matching, has_k_matching, max_matching_size, KMatchings,
    MatchingTable, MATCHING_TABLE_CAP,
};
pub use sweep::{isolated_count, isolated_sweep, Predicate, SubsetWitness, SweepOutcome, SUBSET_CAP};
pub use tree::{
    spanning_tree_count, spanning_tree_leafdist, TreeCertificate, TreeMode, TreeSearch, TreeSearchConfig,
};

/// An edge `(u, v)` with `u < v`.
pub type Edge = (usize, usize);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombError {
    #[error("n = {n} exceeds the exhaustive cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("graph has no {k}-matching")]
    NoKMatching { k: usize },
    #[error("need n >= 2k+2 (n = {n}, k = {k})")]
    TooFewVertices { n: usize, k: usize },
    #[error("definition check says {definition}, subset sweep says {sweep}")]
    ModeDisagreement { definition: bool, sweep: bool },
    #[error("enumeration budget of {budget} exhausted")]
    BudgetExhausted { budget: u64 },
    #[error("not a spanning tree: {0}")]
    NotSpanningTree(String),
}

pub(crate) fn serialize_ratio<S: Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("Ratio", 2)?;
    st.serialize_field("num", r.numer())?;
    st.serialize_field("den", r.denom())?;
    st.end()
}
