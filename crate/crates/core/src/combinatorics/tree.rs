//! Spanning trees with large leaf distance.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{CombError, Edge};
use crate::bits::{bit, bits};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeCertificate {
    pub edges: Vec<Edge>,
    /// Minimum tree distance between two leaves; `None` with fewer than two leaves.
    pub leaf_distance: Option<usize>,
    /// Maximum number of leaves adjacent to one vertex.
    pub leaf_degree: usize,
}

fn tree_adjacency(n: usize, edges: &[Edge]) -> Vec<u64> {
    let mut adj = vec![0u64; n];
    for &(u, v) in edges {
        adj[u] |= bit(v);
        adj[v] |= bit(u);
    }
    adj
}

fn leaves(adj: &[u64]) -> u64 {
    adj.iter()
        .enumerate()
        .filter(|(_, a)| a.count_ones() == 1)
        .fold(0, |acc, (v, _)| acc | bit(v))
}

/// `(min leaf distance, ordered leaf pairs at that distance)`.
fn leaf_profile(adj: &[u64]) -> (Option<usize>, usize) {
    let leaf_mask = leaves(adj);
    let mut best: Option<usize> = None;
    let mut count = 0;
    for src in bits(leaf_mask) {
        let mut seen = bit(src);
        let mut frontier = bit(src);
        let mut dist = 0;
        while frontier != 0 {
            if best.is_some_and(|b| dist > b) {
                break;
            }
            let hit = frontier & leaf_mask & !bit(src);
            if hit != 0 {
                let c = hit.count_ones() as usize;
                match best {
                    Some(b) if b == dist => count += c,
                    _ => {
                        best = Some(dist);
                        count = c;
                    }
                }
                break;
            }
            let mut next = 0;
            for v in bits(frontier) {
                next |= adj[v];
            }
            frontier = next & !seen;
            seen |= next;
            dist += 1;
        }
    }
    (best, count)
}

fn leaf_degree(adj: &[u64]) -> usize {
    let leaf_mask = leaves(adj);
    adj.iter()
        .map(|a| (a & leaf_mask).count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn meets(dist: Option<usize>, d: usize) -> bool {
    dist.is_none_or(|x| x >= d)
}

impl TreeCertificate {
    /// Validates `edges` as a spanning tree of `host` and computes its statistics.
    pub fn new(host: &Graph, mut edges: Vec<Edge>) -> Result<Self, CombError> {
        let n = host.n();
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        if edges.len() + 1 != n.max(1) {
            return Err(CombError::NotSpanningTree(format!(
                "{} edges for {n} vertices",
                edges.len()
            )));
        }
        for &(u, v) in &edges {
            if v >= n || !host.has_edge(u, v) {
                return Err(CombError::NotSpanningTree(format!("{u}-{v} is not a host edge")));
            }
        }
        if edges.windows(2).any(|w| w[0] == w[1]) {
            return Err(CombError::NotSpanningTree("repeated edge".into()));
        }
        let adj = tree_adjacency(n, &edges);
        let tree = Graph::from_rows(adj.clone()).map_err(|e| CombError::NotSpanningTree(e.to_string()))?;
        if n > 0 && !tree.is_connected().unwrap_or(false) {
            return Err(CombError::NotSpanningTree("edges do not connect all vertices".into()));
        }
        Ok(Self {
            leaf_distance: leaf_profile(&adj).0,
            leaf_degree: leaf_degree(&adj),
            edges,
        })
    }

    /// Rebuilds the certificate from its edges and compares the statistics.
    pub fn recheck(&self, host: &Graph) -> Result<(), CombError> {
        let fresh = Self::new(host, self.edges.clone())?;
        if fresh != *self {
            return Err(CombError::NotSpanningTree("stored statistics differ".into()));
        }
        Ok(())
    }
}

/// Number of spanning trees, by fraction-free elimination of a Laplacian minor.
pub fn spanning_tree_count(g: &Graph) -> BigInt {
    let n = g.n();
    if n <= 1 {
        return BigInt::from(n);
    }
    let m = n - 1;
    let mut a: Vec<Vec<BigInt>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if i == j {
                        BigInt::from(g.degree(i))
                    } else if g.has_edge(i, j) {
                        BigInt::from(-1)
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..m {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..m).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..m {
            for j in k + 1..m {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[m - 1][m - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TreeMode {
    Exhaustive,
    Construct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeSearchConfig {
    /// Exhaustive mode refuses graphs with more spanning trees than this.
    pub budget: u64,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for TreeSearchConfig {
    fn default() -> Self {
        Self {
            budget: 10_000_000,
            restarts: 64,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum TreeSearch {
    Found { certificate: TreeCertificate },
    Absent { trees_examined: u64, tree_count: String },
    Unknown { reason: String, tree_count: Option<String> },
}

impl TreeSearch {
    pub fn certificate(&self) -> Option<&TreeCertificate> {
        match self {
            TreeSearch::Found { certificate } => Some(certificate),
            _ => None,
        }
    }
}

fn certificate_from(g: &Graph, adj: &[u64]) -> TreeCertificate {
    let edges = (0..adj.len())
        .flat_map(|u| bits(adj[u]).filter(move |&v| v > u).map(move |v| (u, v)))
        .collect();
    TreeCertificate::new(g, edges).expect("search produces spanning trees")
}

/// Finds a spanning tree of `g` whose leaves are pairwise at distance at least `d`.
///
/// Exhaustive mode is exact within the tree-count budget: it tries a short
/// constructive search, then enumerates every spanning tree. Construct mode
/// never reports `Absent`.
pub fn spanning_tree_leafdist(
    g: &Graph,
    d: usize,
    mode: TreeMode,
    config: &TreeSearchConfig,
) -> Result<TreeSearch, CombError> {
    let n = g.n();
    if n == 0 {
        return Err(CombError::InvalidParameter("empty graph".into()));
    }
    if !g.is_connected().unwrap_or(false) {
        return Err(CombError::InvalidParameter("graph is disconnected".into()));
    }
    match mode {
        TreeMode::Construct => Ok(match construct(g, d, config.restarts, config.seed) {
            Some(adj) => TreeSearch::Found {
                certificate: certificate_from(g, &adj),
            },
            None => TreeSearch::Unknown {
                reason: format!("no tree found in {} restarts", config.restarts),
                tree_count: None,
            },
        }),
        TreeMode::Exhaustive => {
            let count = spanning_tree_count(g);
            if count > BigInt::from(config.budget) {
                return Ok(TreeSearch::Unknown {
                    reason: format!("{count} spanning trees exceed the budget of {}", config.budget),
                    tree_count: Some(count.to_string()),
                });
            }
            if let Some(adj) = construct(g, d, config.restarts.min(4), config.seed) {
                return Ok(TreeSearch::Found {
                    certificate: certificate_from(g, &adj),
                });
            }
            let mut search = Enumerator::new(g, d);
            Ok(match search.run() {
                Some(adj) => TreeSearch::Found {
                    certificate: certificate_from(g, &adj),
                },
                None => TreeSearch::Absent {
                    trees_examined: search.examined,
                    tree_count: count.to_string(),
                },
            })
        }
    }
}

/// Include/exclude enumeration over edges. Including never closes a cycle
/// and excluding never disconnects, so every leaf of the recursion is a
/// distinct spanning tree.
struct Enumerator<'a> {
    g: &'a Graph,
    d: usize,
    edges: Vec<Edge>,
    avail: Vec<u64>,
    tree: Vec<u64>,
    examined: u64,
}

impl<'a> Enumerator<'a> {
    fn new(g: &'a Graph, d: usize) -> Self {
        Self {
            g,
            d,
            edges: g.edges().collect(),
            avail: g.rows().to_vec(),
            tree: vec![0; g.n()],
            examined: 0,
        }
    }

    fn run(&mut self) -> Option<Vec<u64>> {
        if self.g.n() == 1 {
            self.examined = 1;
            return Some(vec![0]);
        }
        self.rec(0, 0)
    }

    fn reach(adj: &[u64], from: usize) -> u64 {
        let mut seen = bit(from);
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    }

    /// Two forced leaves that are already too close in the partial tree.
    fn doomed(&self) -> bool {
        let forced: Vec<usize> = (0..self.avail.len())
            .filter(|&v| self.avail[v].count_ones() == 1)
            .collect();
        for (i, &a) in forced.iter().enumerate() {
            for &b in &forced[i + 1..] {
                if self.avail[a] == self.avail[b] && self.d > 2 {
                    return true;
                }
            }
        }
        for &a in &forced {
            if self.tree[a] == 0 {
                continue;
            }
            let mut seen = bit(a);
            let mut frontier = bit(a);
            for _ in 0..self.d.saturating_sub(1) {
                let mut next = 0;
                for v in bits(frontier) {
                    next |= self.tree[v];
                }
                frontier = next & !seen;
                seen |= next;
                if frontier == 0 {
                    break;
                }
                if forced.iter().any(|&b| b != a && frontier & bit(b) != 0) {
                    return true;
                }
            }
        }
        false
    }

    fn rec(&mut self, i: usize, included: usize) -> Option<Vec<u64>> {
        let n = self.g.n();
        if included == n - 1 {
            self.examined += 1;
            return meets(leaf_profile(&self.tree).0, self.d).then(|| self.tree.clone());
        }
        if i == self.edges.len() {
            return None;
        }
        let (u, v) = self.edges[i];
        if Self::reach(&self.tree, u) & bit(v) == 0 {
            self.tree[u] |= bit(v);
            self.tree[v] |= bit(u);
            if !self.doomed() {
                if let found @ Some(_) = self.rec(i + 1, included + 1) {
                    return found;
                }
            }
            self.tree[u] &= !bit(v);
            self.tree[v] &= !bit(u);
        }
        self.avail[u] &= !bit(v);
        self.avail[v] &= !bit(u);
        let mut found = None;
        if Self::reach(&self.avail, 0).count_ones() as usize == n && !self.doomed() {
            found = self.rec(i + 1, included);
        }
        self.avail[u] |= bit(v);
        self.avail[v] |= bit(u);
        found
    }
}

/// Greedy path growth from `root`: always step to the unvisited neighbor
/// with fewest unvisited neighbors; when stuck, resume from a tree leaf if
/// possible so existing legs get longer instead of branching.
fn grow(g: &Graph, root: usize, rng: &mut ChaCha8Rng) -> Vec<u64> {
    let n = g.n();
    let all = g.vertex_mask();
    let mut tree = vec![0u64; n];
    let mut in_tree = bit(root);
    let mut cur = root;
    while in_tree != all {
        let open = g.neighbors(cur) & !in_tree;
        if open != 0 {
            let key = |w: usize| (g.neighbors(w) & !in_tree).count_ones();
            let low = bits(open).map(key).min().expect("open is nonempty");
            let choices: Vec<usize> = bits(open).filter(|&w| key(w) == low).collect();
            let next = *choices.choose(rng).expect("nonempty");
            tree[cur] |= bit(next);
            tree[next] |= bit(cur);
            in_tree |= bit(next);
            cur = next;
            continue;
        }
        let frontier: Vec<usize> = bits(in_tree)
            .filter(|&x| g.neighbors(x) & !in_tree != 0)
            .collect();
        let ends: Vec<usize> = frontier
            .iter()
            .copied()
            .filter(|&x| tree[x].count_ones() <= 1)
            .collect();
        cur = *if ends.is_empty() { &frontier } else { &ends }
            .choose(rng)
            .expect("connected graph has a frontier");
    }
    tree
}

fn tree_path(tree: &[u64], from: usize, to: usize) -> Vec<usize> {
    let n = tree.len();
    let mut parent = vec![usize::MAX; n];
    parent[from] = from;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for y in bits(tree[x]) {
            if parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut path = vec![to];
    let mut x = to;
    while x != from {
        x = parent[x];
        path.push(x);
    }
    path
}

fn score(tree: &[u64]) -> (usize, i64) {
    let (dist, pairs) = leaf_profile(tree);
    (dist.unwrap_or(usize::MAX), -(pairs as i64))
}

/// Edge swaps that never lower `(leaf distance, -closest pairs)`. Half the
/// proposals reroute a leaf from a closest pair.
fn improve(g: &Graph, tree: &mut [u64], d: usize, rng: &mut ChaCha8Rng) {
    let n = g.n();
    let mut current = score(tree);
    for _ in 0..40 * n {
        if current.0 >= d {
            return;
        }
        let leaf_mask = leaves(tree);
        let start = if rng.random_bool(0.5) {
            let close: Vec<usize> = bits(leaf_mask).collect();
            *close.choose(rng).expect("a tree on >= 2 vertices has leaves")
        } else {
            rng.random_range(0..n)
        };
        let options: Vec<usize> = bits(g.neighbors(start) & !tree[start]).collect();
        let Some(&other) = options.choose(rng) else {
            continue;
        };
        let path = tree_path(tree, start, other);
        let cut = rng.random_range(0..path.len() - 1);
        let (a, b) = (path[cut], path[cut + 1]);
        tree[a] &= !bit(b);
        tree[b] &= !bit(a);
        tree[start] |= bit(other);
        tree[other] |= bit(start);
        let next = score(tree);
        if next >= current {
            current = next;
        } else {
            tree[start] &= !bit(other);
            tree[other] &= !bit(start);
            tree[a] |= bit(b);
            tree[b] |= bit(a);
        }
    }
}

fn construct(g: &Graph, d: usize, restarts: usize, seed: u64) -> Option<Vec<u64>> {
    let n = g.n();
    if n == 1 {
        return Some(vec![0]);
    }
    let max_deg = g.max_degree();
    let min_deg = g.min_degree();
    for r in 0..restarts as u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ r.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let pool: Vec<usize> = match r % 3 {
            0 => (0..n).filter(|&v| g.degree(v) == max_deg).collect(),
            1 => (0..n).filter(|&v| g.degree(v) == min_deg).collect(),
            _ => (0..n).collect(),
        };
        let root = *pool.choose(&mut rng).expect("n >= 1");
        let mut tree = grow(g, root, &mut rng);
        improve(g, &mut tree, d, &mut rng);
        if meets(leaf_profile(&tree).0, d) {
            return Some(tree);
        }
    }
    None
}
