//! Independence number and the neighborhood statistic `δ_t`.

use serde::Serialize;

use super::CombError;
use crate::bits::{bit, bits};
use crate::graph::Graph;

fn mis(g: &Graph, cand: u64, size: usize, best: &mut usize) {
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + cand.count_ones() as usize <= *best {
        return;
    }
    // Vertices of degree <= 1 inside `cand` can always be taken.
    if let Some(v) = bits(cand).find(|&v| (g.neighbors(v) & cand).count_ones() <= 1) {
        return mis(g, cand & !(bit(v) | g.neighbors(v)), size + 1, best);
    }
    let v = bits(cand)
        .max_by_key(|&v| (g.neighbors(v) & cand).count_ones())
        .expect("cand is nonempty");
    mis(g, cand & !(bit(v) | g.neighbors(v)), size + 1, best);
    mis(g, cand & !bit(v), size, best);
}

/// `α(G)` by branch and bound on vertex bitsets.
pub fn independence_number(g: &Graph) -> usize {
    let mut best = 0;
    mis(g, g.vertex_mask(), 0, &mut best);
    best
}

fn min_neighborhood(g: &Graph, cand: u64, left: usize, covered: u64, best: &mut Option<u32>) {
    if best.is_some_and(|b| covered.count_ones() >= b) {
        return;
    }
    if left == 0 {
        *best = Some(covered.count_ones());
        return;
    }
    if (cand.count_ones() as usize) < left {
        return;
    }
    let mut rest = cand;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        min_neighborhood(g, rest & !g.neighbors(v), left - 1, covered | g.neighbors(v), best);
    }
}

/// `min |N(I)|` over independent sets `I` with `|I| = t`; `None` when
/// `t = 0` or `t > α(G)`.
pub fn delta_t(g: &Graph, t: usize) -> Option<usize> {
    if t == 0 {
        return None;
    }
    let mut best = None;
    min_neighborhood(g, g.vertex_mask(), t, 0, &mut best);
    best.map(|b| b as usize)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaCondition {
    pub d: usize,
    pub alpha: usize,
    /// `δ_t > t(d-2)/2` for every `1 <= t <= α`.
    pub holds: bool,
    /// Smallest `t` where it fails.
    pub failing_t: Option<usize>,
    /// `δ_{2t} > t(d-2)` for every `1 <= t <= α/2`.
    pub even_holds: bool,
    pub even_failing_t: Option<usize>,
    /// `δ_t` for `t = 1..=α`.
    pub deltas: Vec<usize>,
}

/// Evaluates both neighborhood conditions with integer comparisons
/// (`2δ_t > t(d-2)` and `δ_{2t} > t(d-2)`).
pub fn delta_condition(g: &Graph, d: usize) -> Result<DeltaCondition, CombError> {
    if d < 3 {
        return Err(CombError::InvalidParameter(format!("d >= 3, got {d}")));
    }
    let alpha = independence_number(g);
    let deltas: Vec<usize> = (1..=alpha)
        .map(|t| delta_t(g, t).expect("t <= alpha"))
        .collect();
    let failing_t = (1..=alpha).find(|&t| 2 * deltas[t - 1] <= t * (d - 2));
    let even_failing_t = (1..=alpha / 2).find(|&t| deltas[2 * t - 1] <= t * (d - 2));
    Ok(DeltaCondition {
        d,
        alpha,
        holds: failing_t.is_none(),
        failing_t,
        even_holds: even_failing_t.is_none(),
        even_failing_t,
        deltas,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::{connected_graphs_on, graphs_on};
    use crate::combinatorics::{isolated_sweep, Predicate};
    use crate::family::FamilySpec;
    use crate::graph::{cycle, star};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn alpha_brute(g: &Graph) -> usize {
        (0..(1u64 << g.n()))
            .filter(|&s| bits(s).all(|v| g.neighbors(v) & s == 0))
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap()
    }

    fn delta_brute(g: &Graph, t: usize) -> Option<usize> {
        (0..(1u64 << g.n()))
            .filter(|&s| s.count_ones() as usize == t && bits(s).all(|v| g.neighbors(v) & s == 0))
            .map(|s| bits(s).fold(0u64, |acc, v| acc | g.neighbors(v)).count_ones() as usize)
            .min()
    }

    #[test]
    fn examples() {
        assert_eq!(independence_number(&Graph::complete(6).unwrap()), 1);
        assert_eq!(independence_number(&cycle(5).unwrap()), 2);
        let ext = FamilySpec::TreeExtremal { n: 16, d: 4 }.build().unwrap();
        assert_eq!(independence_number(&ext), 2);
        assert_eq!(delta_t(&ext, 1), Some(1));
        let s = star(3).unwrap();
        assert_eq!(delta_t(&s, 1), Some(1));
        assert_eq!(delta_t(&s, 2), Some(1));
        assert_eq!(delta_t(&s, 4), None);
    }

    #[test]
    fn condition_examples() {
        let c = delta_condition(&star(3).unwrap(), 4).unwrap();
        assert!(!c.holds);
        assert_eq!(c.failing_t, Some(1));
        let c = delta_condition(&Graph::complete(5).unwrap(), 6).unwrap();
        assert!(c.holds && c.even_holds);
        assert_eq!(c.alpha, 1);
        assert!(delta_condition(&cycle(4).unwrap(), 2).is_err());
    }

    #[test]
    fn single_vertex_splits_sweep_and_condition() {
        // K_1: the only nonempty S leaves nothing behind, but δ_1 = 0.
        let k1 = Graph::empty(1).unwrap();
        assert!(isolated_sweep(&k1, Predicate::Kaneko { d: 3 }).unwrap().passed);
        assert!(!delta_condition(&k1, 3).unwrap().holds);
    }

    #[test]
    fn matches_brute_force() {
        for n in 1..=7 {
            for g in graphs_on(n) {
                let a = independence_number(&g);
                assert_eq!(a, alpha_brute(&g));
                for t in 1..=a + 1 {
                    assert_eq!(delta_t(&g, t), delta_brute(&g, t), "{g} t={t}");
                }
            }
        }
    }

    #[test]
    fn sweep_equivalence_exhaustive() {
        for n in 2..=7 {
            for g in connected_graphs_on(n) {
                for d in 3..=6 {
                    let sweep = isolated_sweep(&g, Predicate::Kaneko { d }).unwrap().passed;
                    assert_eq!(sweep, delta_condition(&g, d).unwrap().holds, "{g} d={d}");
                }
            }
        }
    }

    #[test]
    fn sweep_equivalence_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut graphs = 0;
        while graphs < 1000 {
            let n = rng.random_range(2..=10);
            let p = rng.random_range(0.1..0.9);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, edges).unwrap();
            if !g.is_connected().unwrap() {
                continue;
            }
            graphs += 1;
            for d in 3..=6 {
                let sweep = isolated_sweep(&g, Predicate::Kaneko { d }).unwrap().passed;
                assert_eq!(sweep, delta_condition(&g, d).unwrap().holds, "{g} d={d}");
            }
        }
    }

    #[test]
    fn equivalence_needs_connectivity() {
        // K_3 ∪ K_1 at d = 3: δ_1 = 0, yet i(G-S) < 2|S| for every nonempty S.
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(isolated_sweep(&g, Predicate::Kaneko { d: 3 }).unwrap().passed);
        assert!(!delta_condition(&g, 3).unwrap().holds);
    }
}
