//! Isomorphism machinery for small graphs.
//!
//! * [`canonical_form`]: individualization-refinement canonical labeling.
//!   Branching skips all but one member of each twin class in the target
//!   cell (swapping twins is an automorphism fixing the current partition),
//!   which keeps complete, empty and other twin-heavy graphs cheap.
//! * [`graphs_on`] / [`connected_graphs_on`]: one representative per
//!   isomorphism class, grown vertex by vertex and deduplicated by canonical
//!   form.
//! * [`are_isomorphic`]: degree-sequence prefilter, equitable refinement and
//!   backtracking with neighborhood-bitset consistency checks.

use std::collections::HashSet;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::bits::{bit, bits};
use crate::graph::Graph;

/// Ordered partition refined until every cell is equitable with respect to
/// every other cell. Cells are split by the vector of neighbor counts into
/// the current cells, sorted ascending, so the result is isomorphism
/// invariant.
fn refine(g: &Graph, mut cells: Vec<u64>) -> Vec<u64> {
    loop {
        let mut next: Vec<u64> = Vec::with_capacity(g.n());
        for &cell in &cells {
            if cell.count_ones() == 1 {
                next.push(cell);
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = bits(cell)
                .map(|v| {
                    let nb = g.neighbors(v);
                    (cells.iter().map(|&c| (nb & c).count_ones()).collect(), v)
                })
                .collect();
            keyed.sort();
            let mut i = 0;
            while i < keyed.len() {
                let mut mask = 0u64;
                let mut j = i;
                while j < keyed.len() && keyed[j].0 == keyed[i].0 {
                    mask |= bit(keyed[j].1);
                    j += 1;
                }
                next.push(mask);
                i = j;
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

fn unit_partition(g: &Graph) -> Vec<u64> {
    if g.n() == 0 {
        Vec::new()
    } else {
        vec![g.vertex_mask()]
    }
}

fn relabeled_rows(g: &Graph, order: &[usize]) -> Vec<u64> {
    let mut pos = [0usize; 64];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    order
        .iter()
        .map(|&v| bits(g.neighbors(v)).fold(0u64, |row, u| row | bit(pos[u])))
        .collect()
}

fn twins(g: &Graph, u: usize, v: usize) -> bool {
    g.neighbors(u) & !bit(v) == g.neighbors(v) & !bit(u)
}

fn search(g: &Graph, cells: Vec<u64>, best: &mut Option<Vec<u64>>) {
    let cells = refine(g, cells);
    let Some(target) = cells.iter().position(|c| c.count_ones() > 1) else {
        let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let code = relabeled_rows(g, &order);
        if best.as_ref().is_none_or(|b| code > *b) {
            *best = Some(code);
        }
        return;
    };
    let cell = cells[target];
    let mut reps: Vec<usize> = Vec::new();
    for v in bits(cell) {
        if !reps.iter().any(|&r| twins(g, r, v)) {
            reps.push(v);
        }
    }
    for v in reps {
        let mut split = Vec::with_capacity(cells.len() + 1);
        split.extend_from_slice(&cells[..target]);
        split.push(bit(v));
        split.push(cell & !bit(v));
        split.extend_from_slice(&cells[target + 1..]);
        search(g, split, best);
    }
}

/// Coarsest equitable partition, cells in refinement order.
pub fn equitable_partition(g: &Graph) -> Vec<Vec<usize>> {
    refine(g, unit_partition(g)).into_iter().map(crate::bits::to_vec).collect()
}

/// Isomorphism-invariant code: the adjacency rows under the canonical
/// labeling. Two graphs are isomorphic iff their codes are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u64>);

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn to_graph(&self) -> Graph {
        Graph::from_rows(self.0.clone()).expect("canonical rows form a simple graph")
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let mut best = None;
    search(g, unit_partition(g), &mut best);
    CanonicalForm(best.unwrap_or_default())
}

/// The canonically relabeled copy of `g`.
pub fn canonical_graph(g: &Graph) -> Graph {
    canonical_form(g).to_graph()
}

fn extend_level(prev: &[Graph]) -> Vec<Graph> {
    let m = prev.first().map_or(0, |g| g.n());
    let forms: HashSet<CanonicalForm> = prev
        .par_iter()
        .flat_map_iter(|g| {
            (0u64..(1u64 << m)).map(move |nbhd| {
                let mut rows: Vec<u64> = g.rows().to_vec();
                for u in bits(nbhd) {
                    rows[u] |= bit(m);
                }
                rows.push(nbhd);
                canonical_form(&Graph::from_rows(rows).expect("valid extension"))
            })
        })
        .collect();
    let mut forms: Vec<CanonicalForm> = forms.into_iter().collect();
    forms.sort();
    forms.iter().map(CanonicalForm::to_graph).collect()
}

/// Largest order cached by [`graphs_on`].
pub const CACHED_ORDER: usize = 8;

fn cached_levels() -> &'static Vec<Vec<Graph>> {
    static LEVELS: OnceLock<Vec<Vec<Graph>>> = OnceLock::new();
    LEVELS.get_or_init(|| {
        let mut levels = vec![vec![Graph::empty(0).expect("order 0")]];
        for _ in 0..CACHED_ORDER {
            let next = extend_level(levels.last().expect("nonempty"));
            levels.push(next);
        }
        levels
    })
}

/// One graph per isomorphism class on `n` vertices, canonically labeled and
/// sorted by canonical code. Orders up to [`CACHED_ORDER`] are computed once
/// per process; larger orders are regenerated on every call.
pub fn graphs_on(n: usize) -> Vec<Graph> {
    if n <= CACHED_ORDER {
        return cached_levels()[n].clone();
    }
    let mut level = cached_levels()[CACHED_ORDER].clone();
    for _ in CACHED_ORDER..n {
        level = extend_level(&level);
    }
    level
}

pub fn connected_graphs_on(n: usize) -> Vec<Graph> {
    graphs_on(n)
        .into_iter()
        .filter(|g| g.n() > 0 && g.is_connected().unwrap_or(false))
        .collect()
}

/// Cell sizes and the (constant) neighbor counts between refined cells.
fn refined_profile(g: &Graph, cells: &[u64]) -> Vec<u32> {
    let mut out = Vec::with_capacity(cells.len() * (cells.len() + 1));
    for &ci in cells {
        out.push(ci.count_ones());
        let v = ci.trailing_zeros() as usize;
        out.extend(cells.iter().map(|&cj| (g.neighbors(v) & cj).count_ones()));
    }
    out
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    find_isomorphism(g, h).is_some()
}

/// A bijection `map` with `g.has_edge(u, v) == h.has_edge(map[u], map[v])`.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() || g.degree_sequence() != h.degree_sequence() {
        return None;
    }
    let cg = refine(g, unit_partition(g));
    let ch = refine(h, unit_partition(h));
    if refined_profile(g, &cg) != refined_profile(h, &ch) {
        return None;
    }
    let n = g.n();
    let mut cell_of = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for (i, &c) in cg.iter().enumerate() {
        for v in bits(c) {
            cell_of[v] = i;
        }
    }
    // Visit g's vertices so that each one (after the first in its component)
    // has an already-mapped neighbor, which maximizes early pruning.
    let mut placed = 0u64;
    while order.len() < n {
        let mut frontier_pick = None;
        for &v in &order {
            let cand = g.neighbors(v) & !placed;
            if cand != 0 {
                // Prefer candidates from the smallest refined cell.
                frontier_pick = bits(cand).min_by_key(|&u| (cg[cell_of[u]].count_ones(), u));
                break;
            }
        }
        let v = frontier_pick.unwrap_or_else(|| {
            (0..n)
                .filter(|&u| placed & bit(u) == 0)
                .min_by_key(|&u| (cg[cell_of[u]].count_ones(), u))
                .expect("unplaced vertex exists")
        });
        placed |= bit(v);
        order.push(v);
    }
    let mut map = vec![usize::MAX; n];
    let mut used = 0u64;
    if backtrack(g, h, &ch, &cell_of, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    g: &Graph,
    h: &Graph,
    ch: &[u64],
    cell_of: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut u64,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    let mapped_g = order[..depth].iter().fold(0u64, |m, &u| m | bit(u));
    let want = bits(g.neighbors(v) & mapped_g).fold(0u64, |m, u| m | bit(map[u]));
    for w in bits(ch[cell_of[v]] & !*used) {
        if h.neighbors(w) & *used != want {
            continue;
        }
        map[v] = w;
        *used |= bit(w);
        if backtrack(g, h, ch, cell_of, order, depth + 1, map, used) {
            return true;
        }
        *used &= !bit(w);
        map[v] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, path, star};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    // Numbers of unlabeled graphs and connected graphs on n = 0..=8 vertices.
    const ALL: [usize; 9] = [1, 1, 2, 4, 11, 34, 156, 1044, 12346];
    const CONNECTED: [usize; 9] = [0, 1, 1, 2, 6, 21, 112, 853, 11117];

    #[test]
    fn census_counts_match_known_sequences() {
        for n in 0..=8 {
            assert_eq!(graphs_on(n).len(), ALL[n], "all graphs on {n}");
            assert_eq!(connected_graphs_on(n).len(), CONNECTED[n], "connected graphs on {n}");
        }
    }

    fn random_perm(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(rng);
        p
    }

    #[test]
    fn canonical_form_is_label_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for g in graphs_on(7).iter().step_by(7) {
            let cf = canonical_form(g);
            for _ in 0..5 {
                let p = random_perm(7, &mut rng);
                assert_eq!(canonical_form(&g.permuted(&p)), cf);
            }
        }
    }

    #[test]
    fn isomorphism_agrees_with_canonical_forms() {
        let graphs = graphs_on(6);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (i, g) in graphs.iter().enumerate() {
            let p = random_perm(6, &mut rng);
            let h = g.permuted(&p);
            let map = find_isomorphism(g, &h).expect("relabeled copy is isomorphic");
            for (u, v) in g.edges() {
                assert!(h.has_edge(map[u], map[v]));
            }
            let other = &graphs[(i + 1) % graphs.len()];
            assert!(!are_isomorphic(g, other));
        }
    }

    #[test]
    fn refinement_indistinguishable_pairs() {
        // C_6 and 2 C_3 are both 2-regular on 6 vertices.
        let c6 = cycle(6).unwrap();
        let two_c3 = cycle(3).unwrap().union(&cycle(3).unwrap()).unwrap();
        assert!(!are_isomorphic(&c6, &two_c3));
        assert_ne!(canonical_form(&c6), canonical_form(&two_c3));
        assert!(!are_isomorphic(&path(4).unwrap(), &star(3).unwrap()));
    }

    #[test]
    fn large_symmetric_graphs_are_cheap() {
        let k = Graph::complete(40).unwrap();
        assert_eq!(canonical_form(&k).to_graph(), k);
        let e = Graph::empty(40).unwrap();
        assert_eq!(canonical_form(&e).to_graph(), e);
    }

    #[test]
    fn equitable_partition_of_the_tree_threshold_graph() {
        let g = crate::family::FamilySpec::TreeExtremal { n: 16, d: 4 }.build().unwrap();
        let mut cells = equitable_partition(&g);
        cells.sort();
        assert_eq!(cells, vec![vec![0], (1..15).collect::<Vec<_>>(), vec![15]]);
        let q = crate::spectral::quotient_matrix(&g, &cells).unwrap();
        assert!(q.equitable);
    }
}
