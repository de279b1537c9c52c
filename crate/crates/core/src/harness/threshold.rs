//! Spectral thresholds: the spectral radius of the extremal family member,
//! computed twice (eigensolver and quotient cubic) and cross-checked.

use serde::Serialize;

use super::{HarnessError, AGREEMENT_TOL};
use crate::family::FamilySpec;
use crate::spectral::{cubic_largest_root, phi_b2, phi_b3, quotient_matrix, spectral_radius, Bracket, CubicPoly};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Candidate {
    pub family: FamilySpec,
    pub eigensolver: f64,
    pub quotient_root: f64,
    pub polynomial: String,
    pub method_agreement: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdResult {
    pub value: f64,
    /// The family member attaining `value`.
    pub family: FamilySpec,
    pub method_agreement: f64,
    pub candidates: Vec<Candidate>,
    pub warnings: Vec<String>,
}

fn candidate(family: FamilySpec, poly: CubicPoly, tol: f64) -> Result<Candidate, HarnessError> {
    let g = family.build()?;
    let eigensolver = spectral_radius(&g, tol);
    let quotient_root = cubic_largest_root(&poly, Bracket::Auto { n: g.n() }, tol)?;
    let gap = (eigensolver - quotient_root).abs();
    if gap >= AGREEMENT_TOL {
        return Err(HarnessError::Agreement {
            family: format!("{family:?}"),
            method: "eigensolver".into(),
            gap,
        });
    }
    Ok(Candidate {
        family,
        eigensolver,
        quotient_root,
        polynomial: poly.to_string(),
        method_agreement: gap,
    })
}

fn finish(candidates: Vec<Candidate>, warnings: Vec<String>) -> ThresholdResult {
    let best = candidates
        .iter()
        .max_by(|a, b| a.eigensolver.total_cmp(&b.eigensolver))
        .expect("at least one candidate");
    ThresholdResult {
        value: best.eigensolver,
        family: best.family,
        method_agreement: candidates.iter().map(|c| c.method_agreement).fold(0.0, f64::max),
        candidates: candidates.clone(),
        warnings,
    }
}

/// `ρ(K_{⌈d/2⌉-1} ∨ (K_{n-⌈d/2⌉} ∪ K_1))`.
pub fn threshold_tree(n: usize, d: usize, tol: f64) -> Result<ThresholdResult, HarnessError> {
    let family = FamilySpec::TreeExtremal { n, d };
    let shape = family.shape()?;
    let g = shape.build().map_err(crate::family::FamilyError::from)?;
    let cells: Vec<Vec<usize>> = shape.cells().into_iter().filter(|c| !c.is_empty()).collect();
    let poly = quotient_matrix(&g, &cells)?
        .char_poly()
        .ok_or_else(|| HarnessError::Parameters("quotient is not equitable".into()))?;
    let mut warnings = Vec::new();
    if d * d < 16 || d * d > n {
        warnings.push(format!("outside 16 <= d^2 <= n (n = {n}, d = {d})"));
    }
    Ok(finish(vec![candidate(family, poly, tol)?], warnings))
}

/// Larger of `ρ(K_{2k} ∨ (K_{n-2k-1} ∪ K_1))` and, when `δ ≥ 2k`,
/// `ρ(K_δ ∨ (K_{n-2δ+2k-1} ∪ (δ-2k+1) K_1))`.
pub fn threshold_fke(n: usize, k: usize, delta: usize, tol: f64) -> Result<ThresholdResult, HarnessError> {
    if k < 1 {
        return Err(HarnessError::Parameters("k >= 1".into()));
    }
    let mut warnings = Vec::new();
    if delta < 1 {
        warnings.push("delta < 1".into());
    }
    let bound = (2 * k + 9).max(5 * delta + 1);
    if n < bound {
        warnings.push(format!("n < max(2k+9, 5delta+1) = {bound}"));
    }
    let mut candidates = vec![candidate(FamilySpec::FkeExtremalA { n, k }, phi_b2(n, k), tol)?];
    if delta < 2 * k {
        warnings.push("delta < 2k: only K_{2k} v (K_{n-2k-1} u K_1) applies".to_string());
    } else if n + 2 * k < 2 * delta + 1 {
        warnings.push("n < 2delta - 2k + 1: the delta-hub family does not exist".to_string());
    } else if delta > 2 * k {
        candidates.push(candidate(FamilySpec::FkeExtremalB { n, k, delta }, phi_b3(n, k, delta), tol)?);
    }
    Ok(finish(candidates, warnings))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::spectral::{eigenvalues_sym, SymMatrix};

    #[test]
    fn tree_threshold_sits_between_cliques() {
        let t = threshold_tree(16, 4, 1e-12).unwrap();
        assert!(t.value > 14.0 && t.value < 15.0, "{}", t.value);
        assert!(t.method_agreement < 1e-8);
        assert!(t.warnings.is_empty());
        // Independent check: full Jacobi spectrum of the adjacency matrix.
        let g = FamilySpec::TreeExtremal { n: 16, d: 4 }.build().unwrap();
        let top = eigenvalues_sym(&SymMatrix::adjacency(&g), 1e-13)[0];
        assert!((top - t.value).abs() < 1e-9);
    }

    #[test]
    fn tree_threshold_grid_agreement() {
        for d in 4..=8 {
            for n in d * d..=(d * d + 8).min(64) {
                let t = threshold_tree(n, d, 1e-12).unwrap();
                assert!(t.method_agreement < 1e-8, "n={n} d={d}");
                assert!(t.value > n as f64 - 2.0);
            }
        }
    }

    #[test]
    fn tree_threshold_warns_outside_hypothesis() {
        let t = threshold_tree(10, 4, 1e-12).unwrap();
        assert_eq!(t.warnings.len(), 1);
        assert!(threshold_tree(10, 2, 1e-12).is_err());
    }

    #[test]
    fn fke_threshold_at_eleven() {
        let t = threshold_fke(11, 1, 2, 1e-12).unwrap();
        assert_eq!(t.candidates.len(), 1);
        assert_eq!(t.family, FamilySpec::FkeExtremalA { n: 11, k: 1 });
        assert_eq!(t.candidates[0].polynomial, "x^3 - 8x^2 - 11x + 14");
        assert!(t.value > 9.0 && t.value < 9.1);
        // δ = 2k: the δ-hub family is the same graph.
        let b = FamilySpec::FkeExtremalB { n: 11, k: 1, delta: 2 }.build().unwrap();
        let a = FamilySpec::FkeExtremalA { n: 11, k: 1 }.build().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn fke_threshold_takes_the_larger_family() {
        for k in 1..=2 {
            for delta in 1..=2 * k + 4 {
                for n in (2 * k + 9).max(5 * delta + 1)..=60 {
                    let t = threshold_fke(n, k, delta, 1e-12).unwrap();
                    assert!(t.value > n as f64 - 2.0);
                    assert!(t.method_agreement < 1e-8);
                    let max = t.candidates.iter().map(|c| c.eigensolver).fold(f64::MIN, f64::max);
                    assert_eq!(t.value, max);
                    assert!(t.warnings.iter().all(|w| !w.starts_with("n <")));
                }
            }
        }
    }

    #[test]
    fn complete_graph_clears_the_fke_threshold() {
        let t = threshold_fke(11, 1, 1, 1e-12).unwrap();
        let rho = spectral_radius(&Graph::complete(11).unwrap(), 1e-12);
        assert!((rho - 10.0).abs() < 1e-9);
        assert!(rho >= t.value);
    }
}
