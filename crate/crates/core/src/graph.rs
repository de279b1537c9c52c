//! Simple undirected graphs stored as one adjacency bit vector per vertex.
//!
//! Vertex labels are dense (`0..n`) and `n` is capped at [`MAX_VERTICES`] so
//! that neighborhoods, vertex subsets and induced subgraphs are single `u64`
//! word operations. Graphs are immutable values: every "mutation" returns a
//! new graph.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::bits::{bit, bits, low_mask};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph would have {0} vertices; the supported maximum is {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("adjacency rows are not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("connectivity is undefined for the graph on zero vertices")]
    Empty,
}

/// An immutable simple undirected graph on at most 64 vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

fn check_order(n: usize) -> Result<(), GraphError> {
    if n > MAX_VERTICES {
        Err(GraphError::TooManyVertices(n))
    } else {
        Ok(())
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices (`n K_1`).
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        check_order(n)?;
        Ok(Self { n, adj: vec![0; n] })
    }

    /// The complete graph `K_n`.
    pub fn complete(n: usize) -> Result<Self, GraphError> {
        check_order(n)?;
        let all = low_mask(n);
        Ok(Self {
            n,
            adj: (0..n).map(|v| all & !bit(v)).collect(),
        })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        check_order(n)?;
        let mut adj = vec![0u64; n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u] |= bit(v);
            adj[v] |= bit(u);
        }
        Ok(Self { n, adj })
    }

    /// Builds a graph from raw adjacency rows, validating every invariant.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self, GraphError> {
        let n = rows.len();
        check_order(n)?;
        let all = low_mask(n);
        for (v, &row) in rows.iter().enumerate() {
            if row & !all != 0 {
                let w = (row & !all).trailing_zeros() as usize;
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
            if row & bit(v) != 0 {
                return Err(GraphError::SelfLoop(v));
            }
            for u in bits(row) {
                if rows[u] & bit(v) == 0 {
                    return Err(GraphError::Asymmetric(v, u));
                }
            }
        }
        Ok(Self { n, adj: rows })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Neighborhood of `v` as a vertex mask.
    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    /// Mask of all vertices.
    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        low_mask(self.n)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Degrees sorted in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// `e(G)`.
    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// `δ(G)`; zero for the graph on zero vertices.
    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| bits(self.adj[u] & !low_mask(u + 1)).map(move |v| (u, v)))
    }

    /// Disjoint union; `other`'s vertices are relabeled by `+ self.n()`.
    pub fn union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        check_order(n)?;
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|&r| r << self.n));
        Ok(Graph { n, adj })
    }

    /// Join: the disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Result<Graph, GraphError> {
        let mut g = self.union(other)?;
        let left = low_mask(self.n);
        let right = low_mask(g.n) & !left;
        for v in 0..self.n {
            g.adj[v] |= right;
        }
        for v in self.n..g.n {
            g.adj[v] |= left;
        }
        Ok(g)
    }

    /// `copies` disjoint copies of `self`, e.g. `q K_1`.
    pub fn repeat(&self, copies: usize) -> Result<Graph, GraphError> {
        (0..copies).try_fold(Graph::empty(0)?, |acc, _| acc.union(self))
    }

    /// Induced subgraph on `keep`, relabeled to `0..|keep|` preserving order.
    pub fn induced(&self, keep: u64) -> Graph {
        let keep = keep & self.vertex_mask();
        let order: Vec<usize> = bits(keep).collect();
        let mut pos = [usize::MAX; MAX_VERTICES];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let adj = order
            .iter()
            .map(|&v| bits(self.adj[v] & keep).fold(0u64, |row, u| row | bit(pos[u])))
            .collect();
        Graph {
            n: order.len(),
            adj,
        }
    }

    /// `G - S`, survivors relabeled in increasing order.
    pub fn delete_vertices(&self, s: &[usize]) -> Result<Graph, GraphError> {
        let mut mask = 0u64;
        for &v in s {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
            }
            mask |= bit(v);
        }
        Ok(self.induced(self.vertex_mask() & !mask))
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        Ok(())
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_pair(u, v)?;
        let mut g = self.clone();
        g.adj[u] |= bit(v);
        g.adj[v] |= bit(u);
        Ok(g)
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_pair(u, v)?;
        let mut g = self.clone();
        g.adj[u] &= !bit(v);
        g.adj[v] &= !bit(u);
        Ok(g)
    }

    pub fn complement(&self) -> Graph {
        let all = self.vertex_mask();
        Graph {
            n: self.n,
            adj: (0..self.n).map(|v| all & !self.adj[v] & !bit(v)).collect(),
        }
    }

    /// Relabels vertex `v` as `perm[v]`. `perm` must be a permutation of `0..n`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let mut adj = vec![0u64; self.n];
        for v in 0..self.n {
            adj[perm[v]] = bits(self.adj[v]).fold(0, |row, u| row | bit(perm[u]));
        }
        Graph { n: self.n, adj }
    }

    /// Vertices reachable from `start` inside `within` (which must contain `start`).
    pub fn component_of(&self, start: usize, within: u64) -> u64 {
        let mut seen = bit(start);
        let mut frontier = bit(start);
        while frontier != 0 {
            let mut next = 0u64;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            next &= within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    pub fn is_connected(&self) -> Result<bool, GraphError> {
        if self.n == 0 {
            return Err(GraphError::Empty);
        }
        Ok(self.component_of(0, self.vertex_mask()) == self.vertex_mask())
    }

    /// Connected components as vertex masks, ordered by smallest vertex.
    pub fn components(&self) -> Vec<u64> {
        let mut rest = self.vertex_mask();
        let mut out = Vec::new();
        while rest != 0 {
            let c = self.component_of(rest.trailing_zeros() as usize, rest);
            out.push(c);
            rest &= !c;
        }
        out
    }

    /// Breadth-first distances from `src`; `None` for unreachable vertices.
    pub fn distances_from(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            let dv = dist[v].unwrap_or(0);
            for u in bits(self.adj[v]) {
                if dist[u].is_none() {
                    dist[u] = Some(dv + 1);
                    queue.push_back(u);
                }
            }
        }
        dist
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph {{ n: {}, edges: [", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "] }}")
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "graph on {} vertices with {} edges", self.n, self.edge_count())
    }
}

/// Path `P_n`.
pub fn path(n: usize) -> Result<Graph, GraphError> {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
}

/// Cycle `C_n` (`n >= 3`).
pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
}

/// Star `K_{1,leaves}` with center 0.
pub fn star(leaves: usize) -> Result<Graph, GraphError> {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_counts() {
        let k0 = Graph::complete(0).unwrap();
        assert_eq!(k0.n(), 0);
        assert_eq!(k0.edge_count(), 0);
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(k4.edge_count(), 6);
        assert!(k4.degrees().iter().all(|&d| d == 3));
        assert_eq!(Graph::complete(64).unwrap().edge_count(), 64 * 63 / 2);
        assert_eq!(Graph::complete(65), Err(GraphError::TooManyVertices(65)));
    }

    #[test]
    fn union_examples() {
        let k1 = Graph::complete(1).unwrap();
        let two = k1.union(&k1).unwrap();
        assert_eq!((two.n(), two.edge_count()), (2, 0));
        assert!(!two.is_connected().unwrap());

        let g = Graph::complete(3).unwrap().union(&Graph::complete(2).unwrap()).unwrap();
        assert_eq!((g.n(), g.edge_count()), (5, 4));
        assert!(g.has_edge(3, 4));
        assert!(!g.has_edge(2, 3));

        let q = k1.repeat(5).unwrap();
        assert_eq!((q.n(), q.edge_count()), (5, 0));
    }

    #[test]
    fn join_examples() {
        let k2 = Graph::complete(2).unwrap();
        let e2 = Graph::empty(2).unwrap();
        let g = k2.join(&e2).unwrap();
        assert_eq!(g.edge_count(), 5);
        assert!(!g.has_edge(2, 3));

        let k1 = Graph::complete(1).unwrap();
        assert_eq!(k1.join(&Graph::complete(6).unwrap()).unwrap(), Graph::complete(7).unwrap());

        // K_2 ∨ (K_8 ∪ K_1): e = 1 + 28 + 2·9
        let g = k2
            .join(&Graph::complete(8).unwrap().union(&k1).unwrap())
            .unwrap();
        assert_eq!(g.n(), 11);
        assert_eq!(g.edge_count(), 1 + 28 + 2 * 9);
        assert_eq!(g.edge_count(), g.edges().count());
        assert_eq!(g.min_degree(), 2);
    }

    #[test]
    fn delete_vertices_examples() {
        let k1 = Graph::complete(1).unwrap();
        let g = k1
            .join(&Graph::complete(6).unwrap().union(&k1).unwrap())
            .unwrap();
        let expected = Graph::complete(6).unwrap().union(&k1).unwrap();
        assert_eq!(g.delete_vertices(&[0]).unwrap(), expected);
        assert_eq!(g.delete_vertices(&[]).unwrap(), g);
        let c4 = cycle(4).unwrap();
        assert_eq!(c4.delete_vertices(&[0, 1]).unwrap(), Graph::complete(2).unwrap());
        assert_eq!(
            c4.delete_vertices(&[4]),
            Err(GraphError::VertexOutOfRange { vertex: 4, n: 4 })
        );
    }

    #[test]
    fn rows_are_validated() {
        assert_eq!(Graph::from_rows(vec![0b10, 0b00]), Err(GraphError::Asymmetric(0, 1)));
        assert_eq!(Graph::from_rows(vec![0b1]), Err(GraphError::SelfLoop(0)));
        assert!(Graph::from_rows(vec![0b10, 0b01]).is_ok());
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
    }

    #[test]
    fn connectivity() {
        assert_eq!(Graph::empty(0).unwrap().is_connected(), Err(GraphError::Empty));
        assert!(Graph::complete(1).unwrap().is_connected().unwrap());
        assert!(path(6).unwrap().is_connected().unwrap());
        let g = cycle(3).unwrap().union(&path(2).unwrap()).unwrap();
        assert_eq!(g.components(), vec![0b111, 0b11000]);
        assert_eq!(path(4).unwrap().distances_from(0), vec![Some(0), Some(1), Some(2), Some(3)]);
    }

    #[test]
    fn permutation_and_complement() {
        let p = path(4).unwrap();
        let q = p.permuted(&[3, 2, 1, 0]);
        assert_eq!(q, p);
        let r = p.permuted(&[1, 0, 2, 3]);
        assert!(r.has_edge(0, 1) && r.has_edge(0, 2) && r.has_edge(2, 3));
        assert!(!r.has_edge(1, 2));
        assert_eq!(p.complement().edge_count(), 6 - 3);
    }
}
