//! Adjacency spectra: eigensolver, spectral radius, edge-count bound,
//! quotient matrices, family cubics and interlacing.

mod cubic;
mod hong;
mod interlace;
mod matrix;
mod quotient;
mod radius;

use thiserror::Error;

pub use cubic::{cubic_largest_root, join_family_matrix, phi_b1, phi_b2, phi_b3, Bracket, CubicPoly};
pub use hong::{hong_bound, is_complete, is_star, HongBound};
pub use interlace::{check_interlacing, Interlacing, InterlacingViolation, INTERLACING_TOL};
pub use matrix::{eigen_sym, eigenvalues_sym, Eigen, SymMatrix, SYMMETRY_TOL};
pub use quotient::{quotient_matrix, QuotientMatrix};
pub use radius::{perron_vector, spectral_radius, spectral_radius_detailed, RadiusEstimate, RadiusMethod};

/// Default absolute tolerance for eigenvalues and roots.
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("matrix is not symmetric at ({i}, {j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("expected {expected} entries, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("invalid partition: {0}")]
    BadPartition(String),
    #[error("invalid index set: {0}")]
    BadIndexSet(String),
    #[error("bracket failure: {0}")]
    Bracket(String),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::connected_graphs_on;
    use crate::family::FamilySpec;
    use crate::graph::Graph;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn family_grid() -> Vec<FamilySpec> {
        let mut out = Vec::new();
        for n in 4..=24 {
            for d in 3..=9 {
                out.push(FamilySpec::TreeExtremal { n, d });
                for q in 1..=3 {
                    out.push(FamilySpec::TreeProofG1 { n, d, q });
                }
            }
            for k in 1..=4 {
                out.push(FamilySpec::FkeExtremalA { n, k });
                for s in 2 * k..=n {
                    out.push(FamilySpec::FkeProofG1 { n, k, s });
                    out.push(FamilySpec::FkeExtremalB { n, k, delta: s });
                }
            }
        }
        out.retain(|f| f.validate().is_ok());
        out
    }

    #[test]
    fn family_quotients_carry_the_radius() {
        let mut checked = 0;
        for spec in family_grid() {
            let g = spec.build().unwrap();
            if !g.is_connected().unwrap() {
                continue;
            }
            let qm = quotient_matrix(&g, &spec.shape().unwrap().cells()).unwrap();
            assert!(qm.equitable, "{spec:?}");
            let rho = spectral_radius(&g, 1e-12);
            assert!((rho - qm.largest_eigenvalue(1e-13)).abs() <= 1e-8, "{spec:?}");
            let root = qm.char_poly().unwrap().largest_root(1e-13);
            assert!((rho - root).abs() <= 1e-8, "{spec:?}");
            checked += 1;
        }
        assert!(checked > 500);
    }

    #[test]
    fn hong_bound_on_connected_graphs_up_to_eight() {
        for n in 1..=8 {
            for g in connected_graphs_on(n) {
                let rho = spectral_radius(&g, 1e-12);
                let b = hong_bound(&g);
                let bound = b.value.expect("connected graphs have e >= n - 1");
                assert!(rho <= bound + 1e-9, "{g}");
                assert_eq!((bound - rho).abs() <= 1e-9, b.equality_flag, "{g}");
            }
        }
    }

    #[test]
    fn extremal_a_radius_exceeds_n_minus_two() {
        for k in 1..=4 {
            for n in 2 * k + 9..=40 {
                let root = cubic_largest_root(&phi_b2(n, k), Bracket::Auto { n }, 1e-13).unwrap();
                assert!(root > n as f64 - 2.0, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn middle_root_of_b1_bound() {
        for k in 1..=4 {
            for n in 2 * k + 2..=40 {
                for s in 2 * k..=(n + 2 * k - 1) / 2 {
                    let roots = phi_b1(n, k, s).real_roots(1e-13);
                    assert_eq!(roots.len(), 3, "n={n} k={k} s={s}");
                    let bound = n as f64 - 2.0 * s as f64 + 2.0 * k as f64 - 2.0;
                    assert!(roots[1] <= bound + 1e-9, "n={n} k={k} s={s}");
                }
            }
        }
    }

    #[test]
    fn proper_subgraphs_have_smaller_radius() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut pairs = 0;
        while pairs < 200 {
            let n = rng.random_range(3..=12);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, edges.iter().copied()).unwrap();
            if !g.is_connected().unwrap() || g.edge_count() == 0 {
                continue;
            }
            let drop = rng.random_range(1..=edges.len());
            let mut h = g.clone();
            for &(u, v) in edges.iter().take(drop) {
                h = h.without_edge(u, v).unwrap();
            }
            assert!(spectral_radius(&g, 1e-12) > spectral_radius(&h, 1e-12) + 1e-12);
            pairs += 1;
        }
    }

    proptest! {
        #[test]
        fn connected_perron_vector_positive(n in 2usize..10, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut g = crate::graph::path(n).unwrap();
            for u in 0..n {
                for v in u + 2..n {
                    if rng.random_bool(0.3) {
                        g = g.with_edge(u, v).unwrap();
                    }
                }
            }
            let v = perron_vector(&g, 1e-13);
            prop_assert!(v.iter().all(|&x| x > 0.0));
        }

        #[test]
        fn spectrum_sums_to_trace(n in 1usize..10, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut e = vec![0.0; n * n];
            for i in 0..n {
                for j in 0..=i {
                    let x: f64 = rng.random_range(-5.0..5.0);
                    e[i * n + j] = x;
                    e[j * n + i] = x;
                }
            }
            let m = SymMatrix::new(n, e).unwrap();
            let vals = eigenvalues_sym(&m, 1e-12);
            prop_assert!(vals.windows(2).all(|w| w[0] >= w[1]));
            prop_assert!((vals.iter().sum::<f64>() - m.trace()).abs() <= n as f64 * 1e-9);
        }
    }
}
