//! Quotient matrices of vertex partitions.

use serde::Serialize;

use super::cubic::CubicPoly;
use super::matrix::{eigenvalues_sym, SymMatrix};
use super::SpectralError;
use crate::bits::{bit, mask_from};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuotientMatrix {
    pub cells: Vec<Vec<usize>>,
    /// Number of ordered pairs `(u, v)` with `u` in cell `i`, `v` in cell
    /// `j` and `uv` an edge.
    pub block_edges: Vec<Vec<u64>>,
    /// Average block row sums.
    pub q: Vec<Vec<f64>>,
    pub equitable: bool,
}

/// Builds the quotient of `A(g)` for the given partition. Equitability is
/// decided by comparing integer row sums.
pub fn quotient_matrix(g: &Graph, cells: &[Vec<usize>]) -> Result<QuotientMatrix, SpectralError> {
    let n = g.n();
    let mut seen = 0u64;
    for (i, cell) in cells.iter().enumerate() {
        if cell.is_empty() {
            return Err(SpectralError::BadPartition(format!("cell {i} is empty")));
        }
        for &v in cell {
            if v >= n {
                return Err(SpectralError::BadPartition(format!(
                    "vertex {v} in cell {i} is out of range for n = {n}"
                )));
            }
            if seen & bit(v) != 0 {
                return Err(SpectralError::BadPartition(format!("vertex {v} appears twice")));
            }
            seen |= bit(v);
        }
    }
    if seen != g.vertex_mask() {
        let missing = (0..n).find(|&v| seen & bit(v) == 0).unwrap_or(0);
        return Err(SpectralError::BadPartition(format!("vertex {missing} is in no cell")));
    }
    let masks: Vec<u64> = cells.iter().map(|c| mask_from(c)).collect();
    let s = cells.len();
    let mut block_edges = vec![vec![0u64; s]; s];
    let mut equitable = true;
    for i in 0..s {
        for j in 0..s {
            let mut first = None;
            for &v in &cells[i] {
                let row = (g.neighbors(v) & masks[j]).count_ones();
                block_edges[i][j] += u64::from(row);
                match first {
                    None => first = Some(row),
                    Some(r) if r != row => equitable = false,
                    _ => {}
                }
            }
        }
    }
    let q = (0..s)
        .map(|i| {
            (0..s)
                .map(|j| block_edges[i][j] as f64 / cells[i].len() as f64)
                .collect()
        })
        .collect();
    Ok(QuotientMatrix {
        cells: cells.to_vec(),
        block_edges,
        q,
        equitable,
    })
}

impl QuotientMatrix {
    pub fn order(&self) -> usize {
        self.cells.len()
    }

    /// Integer entries, available only for equitable partitions.
    pub fn integer_q(&self) -> Option<Vec<Vec<i64>>> {
        if !self.equitable {
            return None;
        }
        Some(
            self.block_edges
                .iter()
                .zip(&self.cells)
                .map(|(row, cell)| row.iter().map(|&e| (e / cell.len() as u64) as i64).collect())
                .collect(),
        )
    }

    /// `D^{1/2} Q D^{-1/2}` with `D` the cell sizes; symmetric and similar to `q`.
    pub fn symmetrized(&self) -> SymMatrix {
        let s = self.order();
        let mut entries = Vec::with_capacity(s * s);
        for i in 0..s {
            for j in 0..s {
                let size = (self.cells[i].len() * self.cells[j].len()) as f64;
                entries.push(self.block_edges[i][j] as f64 / size.sqrt());
            }
        }
        SymMatrix::new(s, entries).expect("block edge counts are symmetric")
    }

    pub fn eigenvalues(&self, tol: f64) -> Vec<f64> {
        eigenvalues_sym(&self.symmetrized(), tol)
    }

    pub fn largest_eigenvalue(&self, tol: f64) -> f64 {
        self.eigenvalues(tol).first().copied().unwrap_or(0.0)
    }

    /// Exact characteristic polynomial for equitable quotients of order at
    /// most 3, padded with factors of `x` for smaller orders.
    pub fn char_poly(&self) -> Option<CubicPoly> {
        let q = self.integer_q()?;
        let mut m = [[0i64; 3]; 3];
        if q.len() > 3 {
            return None;
        }
        for (i, row) in q.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m[i][j] = v;
            }
        }
        Some(CubicPoly::char_poly(&m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilySpec;
    use crate::graph::cycle;
    use crate::spectral::{cubic_largest_root, spectral_radius, Bracket};

    #[test]
    fn cycle_opposite_pairs() {
        let c4 = cycle(4).unwrap();
        let qm = quotient_matrix(&c4, &[vec![0, 2], vec![1, 3]]).unwrap();
        assert!(qm.equitable);
        assert_eq!(qm.integer_q().unwrap(), vec![vec![0, 2], vec![2, 0]]);
        assert!((qm.largest_eigenvalue(1e-12) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn extremal_a_eleven_one() {
        let spec = FamilySpec::FkeExtremalA { n: 11, k: 1 };
        let g = spec.build().unwrap();
        let qm = quotient_matrix(&g, &spec.shape().unwrap().cells()).unwrap();
        assert!(qm.equitable);
        assert_eq!(
            qm.integer_q().unwrap(),
            vec![vec![1, 8, 1], vec![2, 7, 0], vec![2, 0, 0]]
        );
        assert_eq!(qm.char_poly().unwrap(), CubicPoly::new(-8, -11, 14));
    }

    #[test]
    fn singleton_cells_give_adjacency() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (0, 3), (3, 4)]).unwrap();
        let cells: Vec<Vec<usize>> = (0..5).map(|v| vec![v]).collect();
        let qm = quotient_matrix(&g, &cells).unwrap();
        assert!(qm.equitable);
        assert_eq!(qm.symmetrized(), SymMatrix::adjacency(&g));
    }

    #[test]
    fn non_equitable_partition() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let qm = quotient_matrix(&p3, &[vec![0, 1], vec![2]]).unwrap();
        assert!(!qm.equitable);
        assert!(qm.integer_q().is_none());
        assert_eq!(qm.q[0], vec![1.0, 0.5]);
    }

    #[test]
    fn partition_errors() {
        let g = cycle(4).unwrap();
        for cells in [
            vec![vec![0, 1], vec![1, 2, 3]],
            vec![vec![0, 1], vec![2]],
            vec![vec![0, 1, 2, 3], vec![]],
            vec![vec![0, 1, 2, 3, 4]],
        ] {
            assert!(matches!(quotient_matrix(&g, &cells), Err(SpectralError::BadPartition(_))));
        }
    }

    #[test]
    fn tree_extremal_char_poly_root_matches_radius() {
        let spec = FamilySpec::TreeExtremal { n: 16, d: 4 };
        let g = spec.build().unwrap();
        let qm = quotient_matrix(&g, &spec.shape().unwrap().cells()).unwrap();
        let p = qm.char_poly().unwrap();
        let root = cubic_largest_root(&p, Bracket::Auto { n: 16 }, 1e-13).unwrap();
        assert!((root - spectral_radius(&g, 1e-12)).abs() < 1e-8);
    }
}
