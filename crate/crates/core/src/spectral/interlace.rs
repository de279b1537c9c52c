//! Cauchy interlacing for principal submatrices.

use serde::Serialize;

use super::matrix::{eigenvalues_sym, SymMatrix};
use super::SpectralError;

pub const INTERLACING_TOL: f64 = 1e-9;

/// A failing triple `λ_i ≥ μ_i ≥ λ_{s-t+i}` (1-based `index`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InterlacingViolation {
    pub index: usize,
    pub upper: f64,
    pub sub: f64,
    pub lower: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Interlacing {
    pub holds: bool,
    pub violation: Option<InterlacingViolation>,
    pub full: Vec<f64>,
    pub sub: Vec<f64>,
}

/// Compares the spectrum of `m` with that of its principal submatrix on `keep`.
pub fn check_interlacing(m: &SymMatrix, keep: &[usize]) -> Result<Interlacing, SpectralError> {
    if keep.is_empty() {
        return Err(SpectralError::BadIndexSet("keep is empty".into()));
    }
    let sub_matrix = m.principal_submatrix(keep)?;
    let full = eigenvalues_sym(m, 1e-13);
    let sub = eigenvalues_sym(&sub_matrix, 1e-13);
    let (s, t) = (full.len(), sub.len());
    let violation = (0..t).find_map(|i| {
        let (upper, mu, lower) = (full[i], sub[i], full[s - t + i]);
        let ok = upper + INTERLACING_TOL >= mu && mu + INTERLACING_TOL >= lower;
        (!ok).then_some(InterlacingViolation {
            index: i + 1,
            upper,
            sub: mu,
            lower,
        })
    });
    Ok(Interlacing {
        holds: violation.is_none(),
        violation,
        full,
        sub,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use proptest::prelude::*;

    #[test]
    fn triangle_edge() {
        let m = SymMatrix::adjacency(&Graph::complete(3).unwrap());
        let r = check_interlacing(&m, &[0, 1]).unwrap();
        assert!(r.holds);
        assert!((r.sub[0] - 1.0).abs() < 1e-12 && (r.sub[1] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn keep_all_is_identity() {
        let m = SymMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, -3.0]]).unwrap();
        let r = check_interlacing(&m, &[1, 0]).unwrap();
        assert!(r.holds);
        assert_eq!(r.full.len(), r.sub.len());
        for (a, b) in r.full.iter().zip(&r.sub) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn empty_keep_is_rejected() {
        assert!(check_interlacing(&SymMatrix::zeros(2), &[]).is_err());
    }

    fn symmetric_with_subset() -> impl Strategy<Value = (SymMatrix, Vec<usize>)> {
        (1usize..=8).prop_flat_map(|n| {
            (
                proptest::collection::vec(-10.0f64..10.0, n * n),
                proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 1..=n),
            )
                .prop_map(move |(raw, keep)| {
                    let mut e = vec![0.0; n * n];
                    for i in 0..n {
                        for j in 0..=i {
                            e[i * n + j] = raw[i * n + j];
                            e[j * n + i] = raw[i * n + j];
                        }
                    }
                    (SymMatrix::new(n, e).unwrap(), keep)
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn random_principal_submatrices_interlace((m, keep) in symmetric_with_subset()) {
            let r = check_interlacing(&m, &keep).unwrap();
            prop_assert!(r.holds, "{:?}", r.violation);
        }
    }
}
