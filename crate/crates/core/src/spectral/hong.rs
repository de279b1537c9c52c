//! The edge-count upper bound `ρ(G) ≤ √(2e - n + 1)`.

use serde::Serialize;

use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HongBound {
    /// `None` when `2e - n + 1 < 0`.
    pub value: Option<f64>,
    /// Structural equality test: the graph is a star or complete.
    pub equality_flag: bool,
}

pub fn is_complete(g: &Graph) -> bool {
    let n = g.n();
    g.edge_count() == n * n.saturating_sub(1) / 2
}

/// `K_{1,n-1}`, including `K_1` and `K_2`.
pub fn is_star(g: &Graph) -> bool {
    let n = g.n();
    n >= 1 && g.edge_count() == n - 1 && g.max_degree() == n - 1
}

pub fn hong_bound(g: &Graph) -> HongBound {
    let radicand = 2 * g.edge_count() as i64 - g.n() as i64 + 1;
    HongBound {
        value: (radicand >= 0).then(|| (radicand as f64).sqrt()),
        equality_flag: is_star(g) || is_complete(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, star};
    use crate::spectral::spectral_radius;

    #[test]
    fn examples() {
        let b = hong_bound(&star(3).unwrap());
        assert!((b.value.unwrap() - 3f64.sqrt()).abs() < 1e-15);
        assert!(b.equality_flag);
        let b = hong_bound(&cycle(4).unwrap());
        assert!((b.value.unwrap() - 5f64.sqrt()).abs() < 1e-15);
        assert!(!b.equality_flag);
        assert!(spectral_radius(&cycle(4).unwrap(), 1e-12) < b.value.unwrap() - 0.2);
        let b = hong_bound(&Graph::complete(7).unwrap());
        assert_eq!(b.value, Some(6.0));
        assert!(b.equality_flag);
    }

    #[test]
    fn undefined_for_sparse_forests() {
        let g = Graph::from_edges(5, [(0, 1)]).unwrap();
        assert_eq!(hong_bound(&g).value, None);
    }

    #[test]
    fn isolated_vertices_break_the_bound() {
        // K_3 ∪ K_1: the bound √3 is below ρ = 2, so it needs no isolated vertices.
        let g = Graph::complete(3).unwrap().union(&Graph::empty(1).unwrap()).unwrap();
        assert!(spectral_radius(&g, 1e-12) > hong_bound(&g).value.unwrap());
    }
}
