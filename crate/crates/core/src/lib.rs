//! Spectral-radius thresholds for spanning trees with large leaf distance and
//! for fractional k-extendability, with exact combinatorial oracles and
//! numeric audits of the supporting inequalities.

pub mod bits;
pub mod census;
pub mod cli;
pub mod combinatorics;
pub mod family;
pub mod graph;
pub mod harness;
pub mod io;
pub mod spectral;

pub use family::{FamilyError, FamilySpec, JoinShape};
pub use graph::{Graph, GraphError, MAX_VERTICES};
