//! Spectral radius of `A(G)`: shifted power iteration with a Jacobi fallback.

use serde::Serialize;

use super::matrix::{eigen_sym, SymMatrix};
use crate::bits::bits;
use crate::graph::Graph;

/// Power iterations allowed before giving up on a small spectral gap.
const MAX_POWER_ITERATIONS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RadiusMethod {
    Trivial,
    Power,
    Jacobi,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadiusEstimate {
    pub value: f64,
    pub method: RadiusMethod,
    pub iterations: usize,
}

fn multiply(g: &Graph, x: &[f64], y: &mut [f64]) {
    for (v, out) in y.iter_mut().enumerate() {
        *out = bits(g.neighbors(v)).map(|u| x[u]).sum();
    }
}

fn normalize(x: &mut [f64]) -> f64 {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        x.iter_mut().for_each(|v| *v /= norm);
    }
    norm
}

/// `λ_1(A(g))` with the method that produced it.
///
/// Iterates on `A + I` from the all-ones vector, so the iterate stays
/// nonnegative and bipartite sign oscillation cannot occur. Stops when the
/// Rayleigh quotient settles to relative 1e-12 and the residual is below
/// `tol`; otherwise falls back to the full Jacobi spectrum.
pub fn spectral_radius_detailed(g: &Graph, tol: f64) -> RadiusEstimate {
    let n = g.n();
    if g.edge_count() == 0 {
        return RadiusEstimate {
            value: 0.0,
            method: RadiusMethod::Trivial,
            iterations: 0,
        };
    }
    let mut x = vec![1.0; n];
    normalize(&mut x);
    let mut ax = vec![0.0; n];
    let mut previous = f64::NAN;
    let residual_target = tol.min(1e-8);
    for it in 1..=MAX_POWER_ITERATIONS {
        multiply(g, &x, &mut ax);
        let theta: f64 = x.iter().zip(&ax).map(|(a, b)| a * b).sum();
        let residual = x
            .iter()
            .zip(&ax)
            .map(|(xi, axi)| (axi - theta * xi).powi(2))
            .sum::<f64>()
            .sqrt();
        if (theta - previous).abs() <= 1e-12 * theta.abs() && residual <= residual_target {
            return RadiusEstimate {
                value: theta,
                method: RadiusMethod::Power,
                iterations: it,
            };
        }
        previous = theta;
        for (xi, axi) in x.iter_mut().zip(&ax) {
            *xi += axi;
        }
        normalize(&mut x);
    }
    let eig = eigen_sym(&SymMatrix::adjacency(g), tol);
    RadiusEstimate {
        value: eig.values[0],
        method: RadiusMethod::Jacobi,
        iterations: MAX_POWER_ITERATIONS,
    }
}

/// `ρ(G) = λ_1(A(G))`, accurate to `tol`.
pub fn spectral_radius(g: &Graph, tol: f64) -> f64 {
    spectral_radius_detailed(g, tol).value
}

/// Unit eigenvector for `λ_1`, signed so its entries sum to a nonnegative
/// value. Strictly positive for connected graphs on two or more vertices.
pub fn perron_vector(g: &Graph, tol: f64) -> Vec<f64> {
    let eig = eigen_sym(&SymMatrix::adjacency(g), tol);
    let mut v = eig.vectors.into_iter().next().unwrap_or_default();
    if v.iter().sum::<f64>() < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, path, star};
    use crate::spectral::eigenvalues_sym;

    #[test]
    fn known_radii() {
        assert!((spectral_radius(&Graph::complete(4).unwrap(), 1e-12) - 3.0).abs() < 1e-9);
        assert!((spectral_radius(&star(3).unwrap(), 1e-12) - 3f64.sqrt()).abs() < 1e-9);
        assert!((spectral_radius(&Graph::complete(10).unwrap(), 1e-12) - 9.0).abs() < 1e-9);
        assert_eq!(spectral_radius(&Graph::empty(1).unwrap(), 1e-12), 0.0);
        assert!((spectral_radius(&Graph::complete(7).unwrap(), 1e-12) - 6.0).abs() < 1e-9);
    }

    #[test]
    fn bipartite_graphs_converge() {
        for n in 2..20 {
            let p = path(n).unwrap();
            let want = 2.0 * (std::f64::consts::PI / (n as f64 + 1.0)).cos();
            assert!((spectral_radius(&p, 1e-12) - want).abs() < 1e-9, "P_{n}");
        }
        let c = cycle(8).unwrap();
        assert!((spectral_radius(&c, 1e-12) - 2.0).abs() < 1e-9);
    }

    #[test]
    fn close_component_radii_agree_with_jacobi() {
        // Two components with radii 2 and 2cos(pi/(m+1)) close to 2.
        let g = cycle(5).unwrap().union(&path(59).unwrap()).unwrap();
        let est = spectral_radius_detailed(&g, 1e-12);
        let jac = eigenvalues_sym(&SymMatrix::adjacency(&g), 1e-12)[0];
        assert!((est.value - jac).abs() < 1e-9, "{est:?} vs {jac}");
    }

    #[test]
    fn perron_vector_is_positive() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 3)]).unwrap();
        let v = perron_vector(&g, 1e-12);
        assert!(v.iter().all(|&x| x > 0.0), "{v:?}");
    }
}
