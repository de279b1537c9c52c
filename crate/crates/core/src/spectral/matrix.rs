//! Dense real symmetric matrices and the cyclic Jacobi eigensolver.

use serde::Serialize;

use super::SpectralError;
use crate::bits::bits;
use crate::graph::Graph;

/// Symmetry tolerance accepted by [`SymMatrix::new`].
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Upper bound on Jacobi sweeps; convergence is quadratic, so this is never
/// reached for well-scaled input.
const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl SymMatrix {
    /// `entries` is row-major; symmetry is checked within [`SYMMETRY_TOL`].
    pub fn new(order: usize, entries: Vec<f64>) -> Result<Self, SpectralError> {
        if entries.len() != order * order {
            return Err(SpectralError::Dimension {
                expected: order * order,
                found: entries.len(),
            });
        }
        for i in 0..order {
            for j in i + 1..order {
                let (a, b) = (entries[i * order + j], entries[j * order + i]);
                if (a - b).abs() > SYMMETRY_TOL {
                    return Err(SpectralError::NotSymmetric { i, j });
                }
            }
        }
        Ok(Self { order, entries })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, SpectralError> {
        let order = rows.len();
        let mut entries = Vec::with_capacity(order * order);
        for row in rows {
            if row.len() != order {
                return Err(SpectralError::Dimension {
                    expected: order,
                    found: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Self::new(order, entries)
    }

    pub fn zeros(order: usize) -> Self {
        Self {
            order,
            entries: vec![0.0; order * order],
        }
    }

    /// `A(G)`.
    pub fn adjacency(g: &Graph) -> Self {
        let n = g.n();
        let mut entries = vec![0.0; n * n];
        for v in 0..n {
            for u in bits(g.neighbors(v)) {
                entries[v * n + u] = 1.0;
            }
        }
        Self { order: n, entries }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.order + j]
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.order.max(1)).map(<[f64]>::to_vec).collect()
    }

    /// Principal submatrix on the given (distinct, in-range) indices.
    pub fn principal_submatrix(&self, keep: &[usize]) -> Result<SymMatrix, SpectralError> {
        let mut seen = vec![false; self.order];
        for &i in keep {
            if i >= self.order || seen[i] {
                return Err(SpectralError::BadIndexSet(format!(
                    "index {i} is out of range or repeated for order {}",
                    self.order
                )));
            }
            seen[i] = true;
        }
        let t = keep.len();
        let mut entries = Vec::with_capacity(t * t);
        for &i in keep {
            for &j in keep {
                entries.push(self.get(i, j));
            }
        }
        Ok(SymMatrix { order: t, entries })
    }

    fn frobenius(&self) -> f64 {
        self.entries.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// Full eigendecomposition, eigenvalues in non-increasing order.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    /// `vectors[i]` is a unit eigenvector for `values[i]`.
    pub vectors: Vec<Vec<f64>>,
    pub sweeps: usize,
    /// Off-diagonal Frobenius norm left after the last sweep; every
    /// eigenvalue is within this distance of a true eigenvalue.
    pub residual_off: f64,
}

/// Cyclic Jacobi rotations. Stops once the off-diagonal Frobenius mass is
/// below `min(tol, 1e-14 · ‖M‖_F)`.
pub fn eigen_sym(m: &SymMatrix, tol: f64) -> Eigen {
    let n = m.order;
    let mut a = m.entries.clone();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let scale = m.frobenius();
    let threshold = (1e-14 * scale).min(tol).max(f64::MIN_POSITIVE);
    let off = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j] * a[i * n + j];
                }
            }
        }
        s.sqrt()
    };
    let mut sweeps = 0;
    let mut residual = off(&a);
    while residual > threshold && sweeps < MAX_SWEEPS {
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() < f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    let (vkp, vkq) = (v[k * n + p], v[k * n + q]);
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
        sweeps += 1;
        residual = off(&a);
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| a[j * n + j].total_cmp(&a[i * n + i]));
    Eigen {
        values: idx.iter().map(|&i| a[i * n + i]).collect(),
        vectors: idx
            .iter()
            .map(|&i| (0..n).map(|k| v[k * n + i]).collect())
            .collect(),
        sweeps,
        residual_off: residual,
    }
}

/// The full spectrum in non-increasing order.
pub fn eigenvalues_sym(m: &SymMatrix, tol: f64) -> Vec<f64> {
    eigen_sym(m, tol).values
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cycle;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn small_spectra() {
        let k3 = SymMatrix::adjacency(&Graph::complete(3).unwrap());
        assert!(close(&eigenvalues_sym(&k3, 1e-12), &[2.0, -1.0, -1.0], 1e-12));
        let c4 = SymMatrix::adjacency(&cycle(4).unwrap());
        assert!(close(&eigenvalues_sym(&c4, 1e-12), &[2.0, 0.0, 0.0, -2.0], 1e-12));
        let z = SymMatrix::zeros(5);
        assert_eq!(eigenvalues_sym(&z, 1e-12), vec![0.0; 5]);
        assert!(eigenvalues_sym(&SymMatrix::zeros(0), 1e-12).is_empty());
    }

    #[test]
    fn cycle_spectrum_is_cosines() {
        for n in 3..12 {
            let m = SymMatrix::adjacency(&cycle(n).unwrap());
            let mut want: Vec<f64> = (0..n)
                .map(|j| 2.0 * (2.0 * std::f64::consts::PI * j as f64 / n as f64).cos())
                .collect();
            want.sort_by(|a, b| b.total_cmp(a));
            assert!(close(&eigenvalues_sym(&m, 1e-12), &want, 1e-11), "C_{n}");
        }
    }

    #[test]
    fn eigenvectors_satisfy_definition() {
        let m = SymMatrix::from_rows(&[
            vec![4.0, 1.0, -2.0, 2.0],
            vec![1.0, 2.0, 0.0, 1.0],
            vec![-2.0, 0.0, 3.0, -2.0],
            vec![2.0, 1.0, -2.0, -1.0],
        ])
        .unwrap();
        let e = eigen_sym(&m, 1e-12);
        let sum: f64 = e.values.iter().sum();
        assert!((sum - m.trace()).abs() < 4.0 * 1e-12);
        for (lam, vec) in e.values.iter().zip(&e.vectors) {
            for i in 0..4 {
                let mv: f64 = (0..4).map(|j| m.get(i, j) * vec[j]).sum();
                assert!((mv - lam * vec[i]).abs() < 1e-11);
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            SymMatrix::new(2, vec![0.0, 1.0, 2.0, 0.0]),
            Err(SpectralError::NotSymmetric { i: 0, j: 1 })
        ));
        assert!(matches!(SymMatrix::new(2, vec![0.0; 3]), Err(SpectralError::Dimension { .. })));
        let m = SymMatrix::zeros(3);
        assert!(m.principal_submatrix(&[0, 0]).is_err());
        assert!(m.principal_submatrix(&[3]).is_err());
    }
}
