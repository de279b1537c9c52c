//! The extremal join/union families `K_a ∨ (K_b ∪ c K_1)`.
//!
//! Every family used by the two spectral thresholds and their proofs has this
//! shape; they differ only in how `(a, b, c)` depend on the parameters.
//! Builders place the hub clique first (`0..a`), then the large clique
//! (`a..a+b`), then the isolated part, so quotient cells are positional.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("{family}: parameter constraint {condition} fails")]
    Invariant {
        family: &'static str,
        condition: String,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Symbolic description of one extremal family member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FamilySpec {
    /// `K_{⌈d/2⌉-1} ∨ (K_{n-⌈d/2⌉} ∪ K_1)`, the leaf-distance threshold graph.
    TreeExtremal { n: usize, d: usize },
    /// `K_{⌈q(d-2)/2⌉} ∨ (K_{n-⌈q(d-2)/2⌉-q} ∪ q K_1)`.
    TreeProofG1 { n: usize, d: usize, q: usize },
    /// `K_s ∨ (K_{n-2s+2k-1} ∪ (s-2k+1) K_1)`.
    FkeProofG1 { n: usize, k: usize, s: usize },
    /// `K_{2k} ∨ (K_{n-2k-1} ∪ K_1)`.
    FkeExtremalA { n: usize, k: usize },
    /// `K_δ ∨ (K_{n-2δ+2k-1} ∪ (δ-2k+1) K_1)`.
    FkeExtremalB { n: usize, k: usize, delta: usize },
}

/// Part sizes of `K_hub ∨ (K_clique ∪ isolated K_1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct JoinShape {
    pub hub: usize,
    pub clique: usize,
    pub isolated: usize,
}

impl JoinShape {
    pub fn order(&self) -> usize {
        self.hub + self.clique + self.isolated
    }

    /// Closed-form edge count `C(hub + clique, 2) + hub · isolated`.
    pub fn edge_count(&self) -> usize {
        let m = self.hub + self.clique;
        m * m.saturating_sub(1) / 2 + self.hub * self.isolated
    }

    pub fn build(&self) -> Result<Graph, GraphError> {
        let rest = Graph::complete(self.clique)?.union(&Graph::empty(self.isolated)?)?;
        Graph::complete(self.hub)?.join(&rest)
    }

    /// The nonempty parts as vertex-index cells, in builder order.
    pub fn cells(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::with_capacity(3);
        let mut start = 0;
        for size in [self.hub, self.clique, self.isolated] {
            if size > 0 {
                out.push((start..start + size).collect());
            }
            start += size;
        }
        out
    }
}

pub(crate) fn ceil_half(x: usize) -> usize {
    x.div_ceil(2)
}

fn require(family: &'static str, ok: bool, condition: impl Into<String>) -> Result<(), FamilyError> {
    if ok {
        Ok(())
    } else {
        Err(FamilyError::Invariant {
            family,
            condition: condition.into(),
        })
    }
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::TreeExtremal { .. } => "tree-extremal",
            FamilySpec::TreeProofG1 { .. } => "tree-proof-g1",
            FamilySpec::FkeProofG1 { .. } => "fke-proof-g1",
            FamilySpec::FkeExtremalA { .. } => "fke-extremal-a",
            FamilySpec::FkeExtremalB { .. } => "fke-extremal-b",
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            FamilySpec::TreeExtremal { n, .. }
            | FamilySpec::TreeProofG1 { n, .. }
            | FamilySpec::FkeProofG1 { n, .. }
            | FamilySpec::FkeExtremalA { n, .. }
            | FamilySpec::FkeExtremalB { n, .. } => n,
        }
    }

    /// Checks the parameter constraints, naming the first one that fails.
    pub fn validate(&self) -> Result<(), FamilyError> {
        let name = self.name();
        match *self {
            FamilySpec::TreeExtremal { n, d } => {
                require(name, d >= 3, format!("ceil(d/2)-1 >= 1 (d = {d})"))?;
                let h = ceil_half(d);
                require(name, n > h, format!("n >= ceil(d/2)+1 (n = {n}, ceil(d/2) = {h})"))
            }
            FamilySpec::TreeProofG1 { n, d, q } => {
                require(name, d >= 3, format!("d >= 3 (d = {d})"))?;
                require(name, q >= 1, "q >= 1")?;
                let hub = ceil_half(q * (d - 2));
                require(
                    name,
                    n >= hub + q,
                    format!("n - ceil(q(d-2)/2) - q >= 0 (n = {n}, ceil(q(d-2)/2) = {hub}, q = {q})"),
                )
            }
            FamilySpec::FkeProofG1 { n, k, s } => {
                require(name, k >= 1, "k >= 1")?;
                require(name, s >= 2 * k, format!("s >= 2k (s = {s}, k = {k})"))?;
                require(
                    name,
                    n + 2 * k > 2 * s,
                    format!("n - 2s + 2k - 1 >= 0 (n = {n}, k = {k}, s = {s})"),
                )
            }
            FamilySpec::FkeExtremalA { n, k } => {
                require(name, k >= 1, "k >= 1")?;
                require(name, n >= 2 * k + 2, format!("n >= 2k+2 (n = {n}, k = {k})"))
            }
            FamilySpec::FkeExtremalB { n, k, delta } => {
                require(name, k >= 1, "k >= 1")?;
                require(
                    name,
                    delta + 1 >= 2 * k,
                    format!("delta - 2k + 1 >= 0 (delta = {delta}, k = {k})"),
                )?;
                require(
                    name,
                    n + 2 * k > 2 * delta,
                    format!("n >= 2delta - 2k + 1 (n = {n}, delta = {delta}, k = {k})"),
                )
            }
        }
    }

    /// Part sizes after validation.
    pub fn shape(&self) -> Result<JoinShape, FamilyError> {
        self.validate()?;
        let shape = match *self {
            FamilySpec::TreeExtremal { n, d } => {
                let h = ceil_half(d);
                JoinShape {
                    hub: h - 1,
                    clique: n - h,
                    isolated: 1,
                }
            }
            FamilySpec::TreeProofG1 { n, d, q } => {
                let hub = ceil_half(q * (d - 2));
                JoinShape {
                    hub,
                    clique: n - hub - q,
                    isolated: q,
                }
            }
            FamilySpec::FkeProofG1 { n, k, s } => JoinShape {
                hub: s,
                clique: n + 2 * k - 2 * s - 1,
                isolated: s + 1 - 2 * k,
            },
            FamilySpec::FkeExtremalA { n, k } => JoinShape {
                hub: 2 * k,
                clique: n - 2 * k - 1,
                isolated: 1,
            },
            FamilySpec::FkeExtremalB { n, k, delta } => JoinShape {
                hub: delta,
                clique: n + 2 * k - 2 * delta - 1,
                isolated: delta + 1 - 2 * k,
            },
        };
        Ok(shape)
    }

    pub fn build(&self) -> Result<Graph, FamilyError> {
        Ok(self.shape()?.build()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_extremal_16_4() {
        let spec = FamilySpec::TreeExtremal { n: 16, d: 4 };
        let shape = spec.shape().unwrap();
        assert_eq!((shape.hub, shape.clique, shape.isolated), (1, 14, 1));
        let g = spec.build().unwrap();
        assert_eq!(g.n(), 16);
        assert!(g.is_connected().unwrap());
        assert_eq!(g.degrees().iter().filter(|&&d| d == 1).count(), 1);
        assert_eq!(g.degree(15), 1);
    }

    #[test]
    fn tree_proof_g1_matches_closed_form_edge_count() {
        let spec = FamilySpec::TreeProofG1 { n: 16, d: 4, q: 2 };
        let g = spec.build().unwrap();
        let shape = spec.shape().unwrap();
        assert_eq!((shape.hub, shape.clique, shape.isolated), (2, 12, 2));
        // C(n-q, 2) + q·ceil(q(d-2)/2)
        assert_eq!(g.edge_count(), 14 * 13 / 2 + 2 * 2);
        assert_eq!(g.edge_count(), 95);
        assert_eq!(shape.edge_count(), 95);
    }

    #[test]
    fn hub_size_arithmetic() {
        let shape = FamilySpec::TreeExtremal { n: 16, d: 8 }.shape().unwrap();
        assert_eq!(shape.hub, 3);
        let shape = FamilySpec::TreeExtremal { n: 16, d: 7 }.shape().unwrap();
        assert_eq!(shape.hub, 3);
    }

    #[test]
    fn extremal_b_at_two_k_is_extremal_a() {
        for (n, k) in [(11, 1), (13, 2), (20, 3)] {
            let a = FamilySpec::FkeExtremalA { n, k }.build().unwrap();
            let b = FamilySpec::FkeExtremalB { n, k, delta: 2 * k }.build().unwrap();
            // Identical labeling, not merely isomorphic.
            assert_eq!(a, b);
        }
    }

    #[test]
    fn invariant_violations_name_the_condition() {
        let err = FamilySpec::TreeExtremal { n: 16, d: 2 }.build().unwrap_err();
        assert!(err.to_string().contains("ceil(d/2)-1 >= 1"), "{err}");
        let err = FamilySpec::FkeProofG1 { n: 11, k: 2, s: 3 }.build().unwrap_err();
        assert!(err.to_string().contains("s >= 2k"), "{err}");
        let err = FamilySpec::FkeProofG1 { n: 5, k: 1, s: 4 }.build().unwrap_err();
        assert!(err.to_string().contains("n - 2s + 2k - 1 >= 0"), "{err}");
        let err = FamilySpec::FkeExtremalB { n: 11, k: 2, delta: 2 }.build().unwrap_err();
        assert!(err.to_string().contains("delta - 2k + 1 >= 0"), "{err}");
        let err = FamilySpec::TreeProofG1 { n: 5, d: 4, q: 3 }.build().unwrap_err();
        assert!(err.to_string().contains("n - ceil(q(d-2)/2) - q >= 0"), "{err}");
        assert!(FamilySpec::FkeExtremalA { n: 3, k: 1 }.build().is_err());
    }

    #[test]
    fn cells_skip_empty_parts() {
        // n = 2s - 2k + 1 leaves the large clique empty.
        let shape = FamilySpec::FkeProofG1 { n: 5, k: 1, s: 3 }.shape().unwrap();
        assert_eq!(shape.clique, 0);
        assert_eq!(shape.cells(), vec![vec![0, 1, 2], vec![3, 4]]);
    }

    #[test]
    fn serde_shape() {
        let spec = FamilySpec::FkeExtremalB { n: 11, k: 1, delta: 2 };
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(json, r#"{"kind":"fke-extremal-b","n":11,"k":1,"delta":2}"#);
    }
}
