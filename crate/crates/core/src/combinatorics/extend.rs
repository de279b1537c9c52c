//! Fractional k-extendability: every k-matching extends to a fractional
//! perfect matching.
//!
//! Definition mode removes `V(M)` for each k-matching `M` and asks for a
//! fractional perfect matching of the rest, since weight 1 on `M` forces
//! weight 0 on every other edge at `V(M)`. Sweep mode checks
//! `i(G-S) <= |S| - 2k` over subsets inducing a k-matching.

use std::collections::HashMap;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::fpm::has_fpm;
use super::matching::{for_each_k_matching, has_k_matching};
use super::sweep::{isolated_sweep, Predicate, SubsetWitness};
use super::{CombError, Edge};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FkeMode {
    Definition,
    Sweep,
    Both,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FkeVerdict {
    pub extendable: bool,
    pub mode: FkeMode,
    /// A k-matching whose removal leaves no fractional perfect matching.
    pub matching_witness: Option<Vec<Edge>>,
    /// Lexicographically first violating subset from the sweep.
    pub subset_witness: Option<SubsetWitness>,
    pub matchings_checked: u64,
}

fn by_definition(g: &Graph, k: usize) -> (bool, Option<Vec<Edge>>, u64) {
    let mut memo: HashMap<u64, bool> = HashMap::new();
    let mut checked = 0;
    let mut witness = None;
    let full = g.vertex_mask();
    for_each_k_matching(g, k, |m, covered| {
        checked += 1;
        let rest = full & !covered;
        let ok = *memo
            .entry(rest)
            .or_insert_with(|| has_fpm(&g.induced(rest)).exists);
        if ok {
            ControlFlow::Continue(())
        } else {
            witness = Some(m.to_vec());
            ControlFlow::Break(())
        }
    });
    (witness.is_none(), witness, checked)
}

pub fn is_fractional_k_extendable(g: &Graph, k: usize, mode: FkeMode) -> Result<FkeVerdict, CombError> {
    let n = g.n();
    if k < 1 {
        return Err(CombError::InvalidParameter("k >= 1".into()));
    }
    if n < 2 * k + 2 {
        return Err(CombError::TooFewVertices { n, k });
    }
    if !has_k_matching(g, k) {
        return Err(CombError::NoKMatching { k });
    }
    let mut verdict = FkeVerdict {
        extendable: true,
        mode,
        matching_witness: None,
        subset_witness: None,
        matchings_checked: 0,
    };
    let mut definition = None;
    if matches!(mode, FkeMode::Definition | FkeMode::Both) {
        let (ok, witness, checked) = by_definition(g, k);
        verdict.matching_witness = witness;
        verdict.matchings_checked = checked;
        definition = Some(ok);
    }
    let mut sweep = None;
    if matches!(mode, FkeMode::Sweep | FkeMode::Both) {
        let out = isolated_sweep(g, Predicate::Fke { k })?;
        verdict.subset_witness = out.witness;
        sweep = Some(out.passed);
    }
    verdict.extendable = match (definition, sweep) {
        (Some(a), Some(b)) if a != b => {
            return Err(CombError::ModeDisagreement {
                definition: a,
                sweep: b,
            })
        }
        (Some(a), _) => a,
        (_, Some(b)) => b,
        (None, None) => unreachable!("mode selects at least one check"),
    };
    Ok(verdict)
}
