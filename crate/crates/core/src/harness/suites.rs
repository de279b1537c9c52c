//! Default audit grids and the exhaustive small-order suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::{
    audit_edge_chain, audit_edge_quadratic, audit_large_degree, audit_middle_root, audit_small_degree, summarize,
    AuditSummary, HarnessError,
};
use crate::census::{connected_graphs_on, graphs_on};
use crate::combinatorics::{
    delta_condition, has_fpm, has_k_matching, is_fractional_k_extendable, isolated_sweep, FkeMode, Predicate,
};
use crate::graph::Graph;
use crate::io::emit_graph6;
use crate::spectral::{check_interlacing, hong_bound, spectral_radius, SymMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuditKind {
    EdgeQuadratic,
    EdgeChain,
    SmallDegree,
    LargeDegree,
    MiddleRoot,
}

impl AuditKind {
    pub const ALL: [AuditKind; 5] = [
        AuditKind::EdgeQuadratic,
        AuditKind::EdgeChain,
        AuditKind::SmallDegree,
        AuditKind::LargeDegree,
        AuditKind::MiddleRoot,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            AuditKind::EdgeQuadratic => "edge-quadratic",
            AuditKind::EdgeChain => "edge-chain",
            AuditKind::SmallDegree => "small-degree",
            AuditKind::LargeDegree => "large-degree",
            AuditKind::MiddleRoot => "middle-root",
        }
    }

    /// Runs the audit over its full default grid:
    /// * edge-quadratic: `d ∈ 3..=8`, `n ∈ d²..=d²+20`;
    /// * edge-chain: `d ∈ 4..=6`, `n ∈ d²..=d²+6`, `2 ≤ q ≤ 2n/d`;
    /// * small-degree, middle-root: `k ∈ {1, 2}`, valid `(n, s)`, `n ≤ 60`;
    /// * large-degree: `k ∈ {1, 2}`, `δ ∈ 2k+1..=2k+4`, valid `(n, s)`, `n ≤ 60`.
    pub fn run_default_grid(&self) -> Result<AuditSummary, HarnessError> {
        let name = self.name();
        match self {
            AuditKind::EdgeQuadratic => {
                let grid: Vec<_> = (3..=8usize).flat_map(|d| (d * d..=d * d + 20).map(move |n| (n, d))).collect();
                summarize(name, grid, |&(n, d)| audit_edge_quadratic(n, d))
            }
            AuditKind::EdgeChain => {
                let grid: Vec<_> = (4..=6usize)
                    .flat_map(|d| (d * d..=d * d + 6).flat_map(move |n| (2..=2 * n / d).map(move |q| (n, d, q))))
                    .collect();
                summarize(name, grid, |&(n, d, q)| audit_edge_chain(n, d, q))
            }
            AuditKind::SmallDegree => summarize(name, hub_grid(1), |&(n, k, s)| audit_small_degree(n, k, s)),
            AuditKind::MiddleRoot => summarize(name, hub_grid(0), |&(n, k, s)| audit_middle_root(n, k, s)),
            AuditKind::LargeDegree => {
                let mut grid = Vec::new();
                for k in 1..=2usize {
                    for delta in 2 * k + 1..=2 * k + 4 {
                        for s in delta + 1.. {
                            let lo = (2 * s + 1 - 2 * k).max(5 * delta + 1).max(2 * k + 9);
                            if lo > MAX_GRID_ORDER {
                                break;
                            }
                            grid.extend((lo..=MAX_GRID_ORDER).map(|n| (n, k, delta, s)));
                        }
                    }
                }
                summarize(name, grid, |&(n, k, delta, s)| audit_large_degree(n, k, delta, s))
            }
        }
    }
}

const MAX_GRID_ORDER: usize = 60;

/// `(n, k, s)` with `k ∈ {1, 2}`, `s ≥ 2k + extra`, `max(2k+9, 2s-2k+1) ≤ n ≤ 60`.
fn hub_grid(extra: usize) -> Vec<(usize, usize, usize)> {
    let mut grid = Vec::new();
    for k in 1..=2usize {
        for s in 2 * k + extra.. {
            let lo = (2 * s + 1 - 2 * k).max(2 * k + 9);
            if lo > MAX_GRID_ORDER {
                break;
            }
            grid.extend((lo..=MAX_GRID_ORDER).map(|n| (n, k, s)));
        }
    }
    grid
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub params: Value,
    pub cases: usize,
    pub passed: bool,
    pub failures: Vec<Value>,
}

fn suite<T, F>(name: &str, params: Value, items: Vec<T>, check: F) -> Result<SuiteReport, HarnessError>
where
    T: Send + Sync,
    F: Fn(&T) -> Result<Vec<Value>, HarnessError> + Sync,
{
    let per_item: Vec<Vec<Value>> = items.par_iter().map(&check).collect::<Result<_, _>>()?;
    let failures: Vec<Value> = per_item.into_iter().flatten().collect();
    Ok(SuiteReport {
        suite: name.into(),
        params,
        cases: items.len(),
        passed: failures.is_empty(),
        failures,
    })
}

fn connected_up_to(min_n: usize, max_n: usize) -> Vec<Graph> {
    (min_n..=max_n).flat_map(connected_graphs_on).collect()
}

/// `ρ ≤ √(2e-n+1)` on every connected graph of order at most `max_n`, with
/// numeric equality exactly on stars and complete graphs.
pub fn hong_suite(max_n: usize) -> Result<SuiteReport, HarnessError> {
    suite("hong", json!({"max_n": max_n}), connected_up_to(1, max_n), |g| {
        let rho = spectral_radius(g, 1e-12);
        let b = hong_bound(g);
        let bound = b.value.unwrap_or(f64::NAN);
        let equal = (rho - bound).abs() <= 1e-9;
        Ok(if rho <= bound + 1e-9 && equal == b.equality_flag {
            vec![]
        } else {
            vec![json!({"graph6": emit_graph6(g), "rho": rho, "bound": bound, "equality_flag": b.equality_flag})]
        })
    })
}

/// Interlacing on `samples` seeded random symmetric matrices of order 2..=12
/// and random principal submatrices.
#[allow(clippy::needless_range_loop)]
pub fn interlace_suite(samples: usize, seed: u64) -> Result<SuiteReport, HarnessError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut items = Vec::with_capacity(samples);
    for _ in 0..samples {
        let order = rng.random_range(2..=12usize);
        let mut rows = vec![vec![0.0; order]; order];
        for i in 0..order {
            for j in i..order {
                let x = rng.random_range(-5.0..5.0);
                rows[i][j] = x;
                rows[j][i] = x;
            }
        }
        let keep: Vec<usize> = (0..order).filter(|_| rng.random_bool(0.5)).collect();
        let keep = if keep.is_empty() { vec![0] } else { keep };
        items.push((SymMatrix::from_rows(&rows)?, keep));
    }
    suite("interlace", json!({"samples": samples, "seed": seed}), items, |(m, keep)| {
        let r = check_interlacing(m, keep)?;
        Ok(if r.holds { vec![] } else { vec![json!({"matrix": m.rows(), "keep": keep, "violation": r.violation})] })
    })
}

/// Subset-sweep condition `i(G-S) < 2|S|/(d-2)` against the `δ_t` condition,
/// over connected graphs on `2..=max_n` vertices.
pub fn neighborhood_suite(max_n: usize, ds: &[usize]) -> Result<SuiteReport, HarnessError> {
    suite("neighborhood", json!({"max_n": max_n, "d": ds}), connected_up_to(2, max_n), |g| {
        let mut out = Vec::new();
        for &d in ds {
            let sweep = isolated_sweep(g, Predicate::Kaneko { d })?.passed;
            let cond = delta_condition(g, d)?.holds;
            if sweep != cond {
                out.push(json!({"graph6": emit_graph6(g), "d": d, "sweep": sweep, "delta_t": cond}));
            }
        }
        Ok(out)
    })
}

/// Definition and subset characterization of fractional k-extendability on
/// connected graphs of order `4..=max_n` that have a k-matching.
pub fn fke_mode_suite(max_n: usize, ks: &[usize]) -> Result<SuiteReport, HarnessError> {
    let items: Vec<(Graph, usize)> = connected_up_to(4, max_n)
        .into_iter()
        .flat_map(|g| ks.iter().map(move |&k| (g.clone(), k)))
        .filter(|(g, k)| g.n() >= 2 * k + 2 && has_k_matching(g, *k))
        .collect();
    suite("fke-modes", json!({"max_n": max_n, "k": ks}), items, |(g, k)| {
        Ok(match is_fractional_k_extendable(g, *k, FkeMode::Both) {
            Ok(_) => vec![],
            Err(e) => vec![json!({"graph6": emit_graph6(g), "k": k, "error": e.to_string()})],
        })
    })
}

/// Fractional perfect matching oracle against `i(G-S) ≤ |S|` on every graph
/// of order `1..=max_n`, re-verifying each certificate.
pub fn fpm_suite(max_n: usize) -> Result<SuiteReport, HarnessError> {
    let items: Vec<Graph> = (1..=max_n).flat_map(graphs_on).collect();
    suite("fpm", json!({"max_n": max_n}), items, |g| {
        let r = has_fpm(g);
        let sweep = isolated_sweep(g, Predicate::Fpm)?.passed;
        let cert_ok = r.certificate.as_ref().is_none_or(|c| c.verify(g).is_ok() && c.is_half_integral_cover());
        Ok(if r.exists == sweep && cert_ok {
            vec![]
        } else {
            vec![json!({"graph6": emit_graph6(g), "oracle": r.exists, "sweep": sweep, "certificate_ok": cert_ok})]
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_sizes() {
        // k = 1: s from 2 while 2s-1 <= 60; k = 2: s from 4 while 2s-3 <= 60.
        let g = hub_grid(0);
        assert!(g.iter().all(|&(n, k, s)| n + 2 * k > 2 * s && n >= 2 * k + 9 && n <= 60));
        assert_eq!(g.first(), Some(&(11, 1, 2)));
        assert!(hub_grid(1).iter().all(|&(_, k, s)| s > 2 * k));
    }

    #[test]
    fn default_grids_pass() {
        for kind in AuditKind::ALL {
            let s = kind.run_default_grid().unwrap();
            assert!(s.passed, "{}: {:?}", kind.name(), s.failures.first());
            assert!(s.points > 0);
        }
    }

    #[test]
    fn small_suites_pass() {
        assert!(hong_suite(6).unwrap().passed);
        assert!(interlace_suite(50, 3).unwrap().passed);
        assert!(neighborhood_suite(5, &[3, 4]).unwrap().passed);
        assert!(fke_mode_suite(6, &[1, 2]).unwrap().passed);
        let fpm = fpm_suite(6).unwrap();
        assert!(fpm.passed);
        assert_eq!(fpm.cases, 1 + 2 + 4 + 11 + 34 + 156);
    }
}
