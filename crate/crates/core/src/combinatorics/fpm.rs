//! Fractional perfect matchings via perfect matchings of the bipartite double
//! cover. A perfect matching there is a fixed-point-free permutation `σ` with
//! every `v σ(v)` an edge; its cycles give a half-integral certificate.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use super::Edge;
use crate::bits::{bit, bits, mask_from};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalMatching {
    pub weights: BTreeMap<Edge, Ratio<i64>>,
    pub perfect: bool,
}

struct WeightMap<'a>(&'a BTreeMap<Edge, Ratio<i64>>);

struct Frac(Ratio<i64>);

impl Serialize for Frac {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        super::serialize_ratio(&self.0, s)
    }
}

impl Serialize for WeightMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (&(u, v), &w) in self.0 {
            map.serialize_entry(&format!("{u}-{v}"), &Frac(w))?;
        }
        map.end()
    }
}

impl Serialize for FractionalMatching {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FractionalMatching", 2)?;
        st.serialize_field("weights", &WeightMap(&self.weights))?;
        st.serialize_field("perfect", &self.perfect)?;
        st.end()
    }
}

impl FractionalMatching {
    pub fn vertex_sum(&self, v: usize) -> Ratio<i64> {
        self.weights
            .iter()
            .filter(|((a, b), _)| *a == v || *b == v)
            .map(|(_, w)| *w)
            .sum()
    }

    /// Exact re-verification against `g`: supported edges exist, weights lie
    /// in `[0, 1]`, and vertex sums are at most 1 (exactly 1 when perfect).
    pub fn verify(&self, g: &Graph) -> Result<(), String> {
        let zero = Ratio::from_integer(0);
        let one = Ratio::from_integer(1);
        for (&(u, v), &w) in &self.weights {
            if u >= v || v >= g.n() || !g.has_edge(u, v) {
                return Err(format!("{u}-{v} is not an edge"));
            }
            if w < zero || w > one {
                return Err(format!("weight {w} on {u}-{v} is outside [0, 1]"));
            }
        }
        for v in 0..g.n() {
            let sum = self.vertex_sum(v);
            if sum > one || (self.perfect && sum != one) {
                return Err(format!("vertex {v} has weight sum {sum}"));
            }
        }
        Ok(())
    }

    /// Weight-1 edges are pairwise disjoint and touch nothing else, and the
    /// weight-1/2 edges form vertex-disjoint odd cycles.
    pub fn is_half_integral_cover(&self) -> bool {
        let one = Ratio::from_integer(1);
        let half = Ratio::new(1, 2);
        let mut half_adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut full_deg: BTreeMap<usize, usize> = BTreeMap::new();
        for (&(u, v), &w) in &self.weights {
            if w == one {
                *full_deg.entry(u).or_default() += 1;
                *full_deg.entry(v).or_default() += 1;
            } else if w == half {
                half_adj.entry(u).or_default().push(v);
                half_adj.entry(v).or_default().push(u);
            } else {
                return false;
            }
        }
        if full_deg.values().any(|&d| d != 1) || full_deg.keys().any(|v| half_adj.contains_key(v)) {
            return false;
        }
        if half_adj.values().any(|nbrs| nbrs.len() != 2) {
            return false;
        }
        let mut seen = std::collections::BTreeSet::new();
        for &start in half_adj.keys() {
            if seen.contains(&start) {
                continue;
            }
            let (mut prev, mut cur, mut len) = (start, half_adj[&start][0], 1);
            seen.insert(start);
            while cur != start {
                seen.insert(cur);
                let next = if half_adj[&cur][0] == prev { half_adj[&cur][1] } else { half_adj[&cur][0] };
                prev = cur;
                cur = next;
                len += 1;
            }
            if len % 2 == 0 {
                return false;
            }
        }
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FpmResult {
    pub exists: bool,
    pub certificate: Option<FractionalMatching>,
    /// When none exists: a set `X` with `|N(X)| < |X|`.
    pub hall_violator: Option<Vec<usize>>,
}

fn augment(g: &Graph, x: usize, owner: &mut [Option<usize>], seen_right: &mut u64) -> bool {
    for y in bits(g.neighbors(x) & !*seen_right) {
        *seen_right |= bit(y);
        let free = match owner[y] {
            None => true,
            Some(x2) => augment(g, x2, owner, seen_right),
        };
        if free {
            owner[y] = Some(x);
            return true;
        }
    }
    false
}

/// Decides whether `g` has a fractional perfect matching, with a
/// half-integral certificate or a Hall-type obstruction.
pub fn has_fpm(g: &Graph) -> FpmResult {
    let n = g.n();
    // owner[y] = x means left copy x is matched to right copy y, i.e. σ(x) = y.
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for x in 0..n {
        let mut seen_right = 0u64;
        if !augment(g, x, &mut owner, &mut seen_right) {
            let mut violator: Vec<usize> = bits(seen_right)
                .filter_map(|y| owner[y])
                .chain(std::iter::once(x))
                .collect();
            violator.sort_unstable();
            debug_assert!(
                bits(violator.iter().fold(0, |acc, &v| acc | g.neighbors(v))).count() < violator.len()
            );
            return FpmResult {
                exists: false,
                certificate: None,
                hall_violator: Some(violator),
            };
        }
    }
    let mut sigma = vec![0usize; n];
    for (y, x) in owner.iter().enumerate() {
        sigma[x.expect("perfect matching")] = y;
    }
    let mut weights = BTreeMap::new();
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    let mut done = 0u64;
    for start in 0..n {
        if done & bit(start) != 0 {
            continue;
        }
        let mut cycle = vec![start];
        let mut v = sigma[start];
        while v != start {
            cycle.push(v);
            v = sigma[v];
        }
        done |= mask_from(&cycle);
        let len = cycle.len();
        if len == 2 {
            weights.insert(key(cycle[0], cycle[1]), Ratio::from_integer(1));
        } else if len % 2 == 0 {
            for pair in cycle.chunks(2) {
                weights.insert(key(pair[0], pair[1]), Ratio::from_integer(1));
            }
        } else {
            for i in 0..len {
                weights.insert(key(cycle[i], cycle[(i + 1) % len]), Ratio::new(1, 2));
            }
        }
    }
    FpmResult {
        exists: true,
        certificate: Some(FractionalMatching {
            weights,
            perfect: true,
        }),
        hall_violator: None,
    }
}
