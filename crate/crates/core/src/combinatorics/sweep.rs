//! Exhaustive sweeps of `i(G - S)` against a bound in `|S|`.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::matching::MatchingTable;
use super::{serialize_ratio, CombError};
use crate::bits::{bits, lex_less, mask_from, to_vec};
use crate::graph::Graph;

/// Largest `n` for which all `2^n` subsets are swept.
pub const SUBSET_CAP: usize = 20;

/// Below this order the sweep runs on the calling thread.
const PARALLEL_FROM: usize = 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Predicate {
    /// `i(G-S) < 2|S|/(d-2)` for nonempty `S`.
    Kaneko { d: usize },
    /// `i(G-S) <= |S|` for all `S`.
    Fpm,
    /// `i(G-S) <= |S| - 2k` for all `S` whose induced subgraph has a k-matching.
    Fke { k: usize },
}

impl Predicate {
    pub fn label(&self) -> String {
        match self {
            Predicate::Kaneko { d } => format!("kaneko(d={d})"),
            Predicate::Fpm => "fpm".into(),
            Predicate::Fke { k } => format!("fke(k={k})"),
        }
    }

    fn validate(&self) -> Result<(), CombError> {
        match *self {
            Predicate::Kaneko { d } if d < 3 => Err(CombError::InvalidParameter(format!(
                "kaneko needs d >= 3, got {d}"
            ))),
            Predicate::Fke { k } if k < 1 => {
                Err(CombError::InvalidParameter("fke needs k >= 1".into()))
            }
            _ => Ok(()),
        }
    }

    /// `(holds, lhs, rhs)` for one subset.
    fn compare(&self, size: usize, isolated: usize) -> (bool, Ratio<i64>, Ratio<i64>) {
        let (s, i) = (size as i64, isolated as i64);
        match *self {
            Predicate::Kaneko { d } => {
                let rhs = Ratio::new(2 * s, d as i64 - 2);
                (Ratio::from_integer(i) < rhs, Ratio::from_integer(i), rhs)
            }
            Predicate::Fpm => (i <= s, Ratio::from_integer(i), Ratio::from_integer(s)),
            Predicate::Fke { k } => {
                let rhs = s - 2 * k as i64;
                (i <= rhs, Ratio::from_integer(i), Ratio::from_integer(rhs))
            }
        }
    }
}

/// Number of vertices outside `s` with every neighbor inside `s`.
pub fn isolated_count(g: &Graph, s: u64) -> usize {
    bits(g.vertex_mask() & !s)
        .filter(|&v| g.neighbors(v) & !s == 0)
        .count()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubsetWitness {
    pub set: Vec<usize>,
    #[serde(serialize_with = "serialize_ratio")]
    pub lhs: Ratio<i64>,
    #[serde(serialize_with = "serialize_ratio")]
    pub rhs: Ratio<i64>,
    pub predicate: String,
}

impl SubsetWitness {
    /// Recomputes both sides on `g` and checks they match and still violate.
    pub fn recheck(&self, g: &Graph, p: &Predicate) -> bool {
        if self.set.iter().any(|&v| v >= g.n()) {
            return false;
        }
        let s = mask_from(&self.set);
        let (holds, lhs, rhs) = p.compare(self.set.len(), isolated_count(g, s));
        !holds && lhs == self.lhs && rhs == self.rhs && self.predicate == p.label()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepOutcome {
    pub passed: bool,
    /// Lexicographically smallest violating set.
    pub witness: Option<SubsetWitness>,
    /// Subsets the predicate applied to.
    pub subsets_checked: u64,
}

struct Partial {
    first: Option<u64>,
    checked: u64,
}

fn merge(a: Partial, b: Partial) -> Partial {
    let first = match (a.first, b.first) {
        (Some(x), Some(y)) => Some(if lex_less(y, x) { y } else { x }),
        (x, y) => x.or(y),
    };
    Partial {
        first,
        checked: a.checked + b.checked,
    }
}

/// Checks the predicate on every qualifying subset of `V(g)`.
pub fn isolated_sweep(g: &Graph, p: Predicate) -> Result<SweepOutcome, CombError> {
    p.validate()?;
    let n = g.n();
    if n > SUBSET_CAP {
        return Err(CombError::CapExceeded { n, cap: SUBSET_CAP });
    }
    let table = match p {
        Predicate::Fke { .. } => Some(MatchingTable::new(g)?),
        _ => None,
    };
    let scan = |lo: u64, hi: u64| -> Partial {
        let mut part = Partial {
            first: None,
            checked: 0,
        };
        for s in lo..hi {
            let qualifies = match p {
                Predicate::Kaneko { .. } => s != 0,
                Predicate::Fpm => true,
                Predicate::Fke { k } => table.as_ref().is_some_and(|t| t.of(s) >= k),
            };
            if !qualifies {
                continue;
            }
            part.checked += 1;
            let (holds, _, _) = p.compare(s.count_ones() as usize, isolated_count(g, s));
            if !holds && part.first.is_none_or(|f| lex_less(s, f)) {
                part.first = Some(s);
            }
        }
        part
    };
    let total = 1u64 << n;
    let result = if n < PARALLEL_FROM {
        scan(0, total)
    } else {
        let chunk = total / 256;
        (0..256u64)
            .into_par_iter()
            .map(|c| scan(c * chunk, (c + 1) * chunk))
            .reduce(
                || Partial {
                    first: None,
                    checked: 0,
                },
                merge,
            )
    };
    let witness = result.first.map(|s| {
        let (_, lhs, rhs) = p.compare(s.count_ones() as usize, isolated_count(g, s));
        SubsetWitness {
            set: to_vec(s),
            lhs,
            rhs,
            predicate: p.label(),
        }
    });
    Ok(SweepOutcome {
        passed: witness.is_none(),
        witness,
        subsets_checked: result.checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilySpec;
    use crate::graph::cycle;

    #[test]
    fn extremal_a_fails_fke_on_hub_pair() {
        let g = FamilySpec::FkeExtremalA { n: 11, k: 1 }.build().unwrap();
        let out = isolated_sweep(&g, Predicate::Fke { k: 1 }).unwrap();
        assert!(!out.passed);
        let w = out.witness.unwrap();
        assert_eq!(w.set, vec![0, 1]);
        assert_eq!(w.lhs, Ratio::from_integer(1));
        assert_eq!(w.rhs, Ratio::from_integer(0));
        assert!(w.recheck(&g, &Predicate::Fke { k: 1 }));
    }

    #[test]
    fn cycles_pass() {
        let c4 = cycle(4).unwrap();
        let out = isolated_sweep(&c4, Predicate::Fke { k: 1 }).unwrap();
        assert!(out.passed);
        assert!(out.subsets_checked > 0 && out.subsets_checked < 16);
        assert!(isolated_sweep(&cycle(5).unwrap(), Predicate::Fpm).unwrap().passed);
    }

    #[test]
    fn isolated_counting() {
        let c4 = cycle(4).unwrap();
        assert_eq!(isolated_count(&c4, 0b0101), 2);
        assert_eq!(isolated_count(&c4, 0b0011), 0);
        let k1 = Graph::empty(1).unwrap();
        assert_eq!(isolated_count(&k1, 0), 1);
    }

    #[test]
    fn kaneko_is_exact_rational() {
        // Star K_{1,3} with d = 4: S = {center} isolates 3 > 2·1/2.
        let g = crate::graph::star(3).unwrap();
        let out = isolated_sweep(&g, Predicate::Kaneko { d: 4 }).unwrap();
        let w = out.witness.unwrap();
        assert_eq!(w.set, vec![0]);
        assert_eq!(w.rhs, Ratio::new(2, 2));
        // d = 5: rhs = 2/3
        let w = isolated_sweep(&g, Predicate::Kaneko { d: 5 }).unwrap().witness.unwrap();
        assert_eq!(w.rhs, Ratio::new(2, 3));
    }

    #[test]
    fn refusals() {
        let big = Graph::empty(21).unwrap();
        assert_eq!(
            isolated_sweep(&big, Predicate::Fpm),
            Err(CombError::CapExceeded { n: 21, cap: 20 })
        );
        assert!(isolated_sweep(&cycle(4).unwrap(), Predicate::Kaneko { d: 2 }).is_err());
        assert!(isolated_sweep(&cycle(4).unwrap(), Predicate::Fke { k: 0 }).is_err());
    }

    #[test]
    fn parallel_path_matches_sequential_order() {
        // 16 vertices: a perfect matching, where S = {0} isolates vertex 1.
        let g = Graph::from_edges(16, (0..8).map(|i| (2 * i, 2 * i + 1))).unwrap();
        let out = isolated_sweep(&g, Predicate::Kaneko { d: 5 }).unwrap();
        assert_eq!(out.witness.unwrap().set, vec![0]);
        assert_eq!(out.subsets_checked, (1 << 16) - 1);
    }
}
