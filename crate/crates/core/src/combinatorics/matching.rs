//! Maximum matchings by subset dynamic programming, and k-matching enumeration.

use std::collections::HashMap;
use std::ops::ControlFlow;

use serde::Serialize;

use super::{CombError, Edge};
use crate::bits::{bit, bits};
use crate::graph::Graph;

/// Largest order for which a full `2^n` matching table is built.
pub const MATCHING_TABLE_CAP: usize = 24;

/// `ν(G[S])` for every vertex mask `S`.
#[derive(Debug, Clone)]
pub struct MatchingTable {
    nu: Vec<u8>,
}

impl MatchingTable {
    pub fn new(g: &Graph) -> Result<Self, CombError> {
        let n = g.n();
        if n > MATCHING_TABLE_CAP {
            return Err(CombError::CapExceeded {
                n,
                cap: MATCHING_TABLE_CAP,
            });
        }
        let mut nu = vec![0u8; 1 << n];
        for s in 1..(1usize << n) {
            let v = s.trailing_zeros() as usize;
            let rest = s & !(1 << v);
            let mut best = nu[rest];
            for u in bits(g.neighbors(v) & rest as u64) {
                best = best.max(1 + nu[rest & !(1 << u)]);
            }
            nu[s] = best;
        }
        Ok(Self { nu })
    }

    #[inline]
    pub fn of(&self, mask: u64) -> usize {
        self.nu[mask as usize] as usize
    }
}

fn nu_memo(g: &Graph, s: u64, memo: &mut HashMap<u64, usize>) -> usize {
    if s.count_ones() < 2 {
        return 0;
    }
    if let Some(&v) = memo.get(&s) {
        return v;
    }
    let ceiling = s.count_ones() as usize / 2;
    let v = s.trailing_zeros() as usize;
    let rest = s & !bit(v);
    let mut best = 0;
    for u in bits(g.neighbors(v) & rest) {
        best = best.max(1 + nu_memo(g, rest & !bit(u), memo));
        if best == ceiling {
            break;
        }
    }
    if best < ceiling {
        best = best.max(nu_memo(g, rest, memo));
    }
    memo.insert(s, best);
    best
}

/// `ν(G)`, by the same recursion as [`MatchingTable`] restricted to the
/// masks it reaches, stopping early once a near-perfect matching is found.
pub fn max_matching_size(g: &Graph) -> usize {
    nu_memo(g, g.vertex_mask(), &mut HashMap::new())
}

/// Whether `g` has a matching with `k` edges; greedy first, exact after.
pub fn has_k_matching(g: &Graph, k: usize) -> bool {
    let mut free = g.vertex_mask();
    let mut greedy = 0;
    for (u, v) in g.edges() {
        if free & bit(u) != 0 && free & bit(v) != 0 {
            free &= !(bit(u) | bit(v));
            greedy += 1;
        }
    }
    greedy >= k || max_matching_size(g) >= k
}

/// Calls `f` on every k-matching in lexicographic edge order, with the mask
/// of covered vertices. Returns `false` if `f` stopped the walk.
pub fn for_each_k_matching<F>(g: &Graph, k: usize, mut f: F) -> bool
where
    F: FnMut(&[Edge], u64) -> ControlFlow<()>,
{
    let edges: Vec<Edge> = g.edges().collect();
    let mut chosen = Vec::with_capacity(k);
    walk(&edges, 0, k, 0, &mut chosen, &mut f).is_continue()
}

fn walk<F>(
    edges: &[Edge],
    start: usize,
    k: usize,
    covered: u64,
    chosen: &mut Vec<Edge>,
    f: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[Edge], u64) -> ControlFlow<()>,
{
    if chosen.len() == k {
        return f(chosen, covered);
    }
    let need = k - chosen.len();
    for i in start..edges.len() {
        if edges.len() - i < need {
            break;
        }
        let (u, v) = edges[i];
        if covered & (bit(u) | bit(v)) != 0 {
            continue;
        }
        chosen.push((u, v));
        walk(edges, i + 1, k, covered | bit(u) | bit(v), chosen, f)?;
        chosen.pop();
    }
    ControlFlow::Continue(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KMatchings {
    pub matchings: Vec<Vec<Edge>>,
    /// False when the budget cut the enumeration short.
    pub complete: bool,
}

/// Up to `budget` k-matchings in lexicographic edge order.
pub fn enumerate_k_matchings(g: &Graph, k: usize, budget: usize) -> KMatchings {
    let mut matchings = Vec::new();
    let complete = for_each_k_matching(g, k, |m, _| {
        if matchings.len() == budget {
            return ControlFlow::Break(());
        }
        matchings.push(m.to_vec());
        ControlFlow::Continue(())
    });
    KMatchings {
        matchings,
        complete,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::graphs_on;
    use crate::graph::{cycle, path};

    #[test]
    fn small_cases() {
        assert_eq!(max_matching_size(&cycle(5).unwrap()), 2);
        assert_eq!(max_matching_size(&Graph::complete(7).unwrap()), 3);
        assert_eq!(max_matching_size(&crate::graph::star(5).unwrap()), 1);
        assert_eq!(max_matching_size(&Graph::empty(1).unwrap()), 0);
        let k4 = enumerate_k_matchings(&Graph::complete(4).unwrap(), 2, 100);
        assert!(k4.complete);
        assert_eq!(
            k4.matchings,
            vec![vec![(0, 1), (2, 3)], vec![(0, 2), (1, 3)], vec![(0, 3), (1, 2)]]
        );
        assert_eq!(enumerate_k_matchings(&cycle(4).unwrap(), 1, 100).matchings.len(), 4);
        assert_eq!(enumerate_k_matchings(&cycle(4).unwrap(), 0, 100).matchings, vec![Vec::<Edge>::new()]);
    }

    #[test]
    fn budget_flags_partial() {
        let out = enumerate_k_matchings(&Graph::complete(6).unwrap(), 2, 5);
        assert!(!out.complete);
        assert_eq!(out.matchings.len(), 5);
    }

    #[test]
    fn table_agrees_with_memo_on_all_small_graphs() {
        for n in 1..=7 {
            for g in graphs_on(n) {
                let t = MatchingTable::new(&g).unwrap();
                assert_eq!(t.of(g.vertex_mask()), max_matching_size(&g));
                for s in 0..(1u64 << n) {
                    let sub = g.induced(s);
                    assert_eq!(t.of(s), max_matching_size(&sub));
                }
            }
        }
    }

    #[test]
    fn k_matching_counts_in_paths() {
        // Paths: number of k-matchings in P_n is C(n-k, k).
        for n in 2..12 {
            let p = path(n).unwrap();
            for k in 0..=n / 2 {
                let want = binom(n - k, k);
                assert_eq!(enumerate_k_matchings(&p, k, usize::MAX).matchings.len(), want);
            }
            assert_eq!(max_matching_size(&p), n / 2);
            assert!(has_k_matching(&p, n / 2));
            assert!(!has_k_matching(&p, n / 2 + 1));
        }
    }

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }
}
