//! Empirical checks of both threshold statements over graph streams.
//!
//! Streams are drawn sequentially from a seeded generator, judged in
//! parallel, and merged back in input order, so a report depends only on the
//! parameters and the seed.

use std::collections::HashSet;
use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::Path;
use std::sync::Mutex;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::{is_extremal_graph, threshold_fke, threshold_tree, HarnessError, ThresholdResult, Tolerances};
use crate::census::canonical_form;
use crate::combinatorics::{
    independence_number, is_fractional_k_extendable, spanning_tree_leafdist, CombError, FkeMode, TreeMode,
    TreeSearch, TreeSearchConfig,
};
use crate::family::FamilySpec;
use crate::graph::Graph;
use crate::io::emit_graph6;
use crate::spectral::spectral_radius;

/// Largest independence number the leaf-distance statement covers.
const ALPHA_LIMIT: usize = 5;

/// Sources of candidate graphs.
#[derive(Debug, Clone)]
pub enum Sampler {
    /// Graphs read from a graph6 corpus, in file order.
    Corpus(Vec<Graph>),
    /// `samples` graphs, each `base` with between 1 and `max_edits` random
    /// vertex pairs toggled (only existing edges removed when
    /// `deletions_only`).
    Mutations {
        base: Graph,
        samples: usize,
        max_edits: usize,
        deletions_only: bool,
    },
    /// One graph per isomorphism class obtained from `base` by deleting at
    /// most `max_deletions` edges.
    Deletions { base: Graph, max_deletions: usize },
    /// `samples` graphs on `n` vertices, each edge present with a
    /// probability drawn uniformly from `[min_density, 1]`.
    Random { n: usize, samples: usize, min_density: f64 },
}

impl Sampler {
    fn describe(&self) -> Value {
        match self {
            Sampler::Corpus(graphs) => json!({"kind": "corpus", "graphs": graphs.len()}),
            Sampler::Mutations {
                base,
                samples,
                max_edits,
                deletions_only,
            } => json!({
                "kind": "mutations",
                "base": emit_graph6(base),
                "samples": samples,
                "max_edits": max_edits,
                "deletions_only": deletions_only,
            }),
            Sampler::Deletions { base, max_deletions } => json!({
                "kind": "deletions",
                "base": emit_graph6(base),
                "max_deletions": max_deletions,
            }),
            Sampler::Random {
                n,
                samples,
                min_density,
            } => json!({"kind": "random", "n": n, "samples": samples, "min_density": min_density}),
        }
    }

    fn draw(&self, rng: &mut ChaCha8Rng, out: &mut Vec<(String, Graph)>) {
        match self {
            Sampler::Corpus(graphs) => {
                out.extend(graphs.iter().enumerate().map(|(i, g)| (format!("corpus:{i}"), g.clone())));
            }
            Sampler::Mutations {
                base,
                samples,
                max_edits,
                deletions_only,
            } => {
                let n = base.n();
                for i in 0..*samples {
                    let mut g = base.clone();
                    let edits = rng.random_range(1..=(*max_edits).max(1));
                    for _ in 0..edits {
                        if *deletions_only {
                            let edges: Vec<_> = g.edges().collect();
                            if edges.is_empty() {
                                break;
                            }
                            let (u, v) = edges[rng.random_range(0..edges.len())];
                            g = g.without_edge(u, v).expect("edge exists");
                        } else if n >= 2 {
                            let u = rng.random_range(0..n);
                            let mut v = rng.random_range(0..n - 1);
                            if v >= u {
                                v += 1;
                            }
                            g = if g.has_edge(u, v) {
                                g.without_edge(u, v)
                            } else {
                                g.with_edge(u, v)
                            }
                            .expect("vertices in range");
                        }
                    }
                    out.push((format!("mutation:{i}"), g));
                }
            }
            Sampler::Deletions { base, max_deletions } => {
                for (i, (removed, g)) in deletion_closure(base, *max_deletions).into_iter().enumerate() {
                    out.push((format!("deletion:{i}:-{removed}"), g));
                }
            }
            Sampler::Random {
                n,
                samples,
                min_density,
            } => {
                for i in 0..*samples {
                    let p = rng.random_range(min_density.clamp(0.0, 1.0)..=1.0);
                    let edges: Vec<(usize, usize)> = (0..*n)
                        .flat_map(|u| (u + 1..*n).map(move |v| (u, v)))
                        .filter(|_| rng.random_bool(p))
                        .collect();
                    out.push((format!("random:{i}"), Graph::from_edges(*n, edges).expect("n within cap")));
                }
            }
        }
    }
}

/// Every graph reachable from `base` by deleting at most `max_deletions`
/// edges, one representative per isomorphism class, with the number of
/// deleted edges. Order is deterministic: by deletions, then discovery.
pub fn deletion_closure(base: &Graph, max_deletions: usize) -> Vec<(usize, Graph)> {
    let mut seen = HashSet::new();
    seen.insert(canonical_form(base));
    let mut out = vec![(0, base.clone())];
    let mut layer = vec![base.clone()];
    for removed in 1..=max_deletions {
        let mut next = Vec::new();
        for g in &layer {
            for (u, v) in g.edges() {
                let h = g.without_edge(u, v).expect("edge exists");
                if seen.insert(canonical_form(&h)) {
                    next.push(h);
                }
            }
        }
        out.extend(next.iter().map(|g| (removed, g.clone())));
        layer = next;
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
    Unknown,
    Exception,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct VerdictCounts {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub unknown: usize,
    pub exception: usize,
}

impl VerdictCounts {
    fn add(&mut self, v: Verdict) {
        match v {
            Verdict::Pass => self.pass += 1,
            Verdict::Fail => self.fail += 1,
            Verdict::Skipped => self.skipped += 1,
            Verdict::Unknown => self.unknown += 1,
            Verdict::Exception => self.exception += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.pass + self.fail + self.skipped + self.unknown + self.exception
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstanceRecord {
    pub index: usize,
    pub source: String,
    pub graph6: String,
    pub rho: Option<f64>,
    pub verdict: Verdict,
    pub reason: Option<String>,
    pub detail: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub graph6: String,
    pub witness: Value,
}

/// Verdict of the property on an excluded extremal graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalCheck {
    pub family: FamilySpec,
    pub graph6: String,
    /// `None` when the oracle could not decide.
    pub property_holds: Option<bool>,
    /// Informational checks never affect the report verdict.
    pub informational: bool,
    pub detail: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub task: String,
    pub params: Value,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub exploratory: bool,
    pub streams: Vec<Value>,
    pub threshold: ThresholdResult,
    pub instances: usize,
    pub counts: VerdictCounts,
    pub counterexamples: Vec<Counterexample>,
    pub extremal: Vec<ExtremalCheck>,
    pub passed: bool,
    pub grid: Vec<InstanceRecord>,
    pub timing_ms: u64,
}

impl VerificationReport {
    /// The report as JSON without the timing field.
    pub fn body(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().expect("object").remove("timing_ms");
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LeafParams {
    pub n: usize,
    pub d: usize,
    pub seed: u64,
    /// Exhaustive tree-count cap after the constructive search gives up.
    pub budget: u64,
    pub restarts: usize,
    pub exploratory: bool,
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FkeParams {
    pub n: usize,
    pub k: usize,
    pub delta: usize,
    pub seed: u64,
    pub exploratory: bool,
    pub jobs: Option<usize>,
}

struct Outcome {
    verdict: Verdict,
    reason: Option<String>,
    rho: Option<f64>,
    detail: Value,
}

impl Outcome {
    fn skipped(reason: String, rho: Option<f64>) -> Self {
        Self {
            verdict: Verdict::Skipped,
            reason: Some(reason),
            rho,
            detail: Value::Null,
        }
    }
}

struct Quarantine(Option<Mutex<File>>);

impl Quarantine {
    fn open(path: Option<&Path>) -> Result<Self, HarnessError> {
        Ok(Self(match path {
            Some(p) => Some(Mutex::new(OpenOptions::new().create(true).append(true).open(p)?)),
            None => None,
        }))
    }

    fn record(&self, task: &str, graph6: &str, witness: &Value) -> Result<(), HarnessError> {
        if let Some(file) = &self.0 {
            let mut f = file.lock().expect("quarantine lock");
            writeln!(f, "{}", json!({"task": task, "graph6": graph6, "witness": witness}))?;
            f.flush()?;
        }
        Ok(())
    }
}

fn in_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, HarnessError> {
    match jobs {
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j.max(1))
                .build()
                .map_err(|e| HarnessError::Parameters(e.to_string()))?;
            Ok(pool.install(f))
        }
        None => Ok(f()),
    }
}

#[allow(clippy::too_many_arguments)]
fn run<F>(
    task: &str,
    params: Value,
    seed: u64,
    exploratory: bool,
    jobs: Option<usize>,
    samplers: &[Sampler],
    threshold: ThresholdResult,
    extremal: Vec<ExtremalCheck>,
    quarantine: Option<&Path>,
    expected_n: usize,
    judge: F,
) -> Result<VerificationReport, HarnessError>
where
    F: Fn(&Graph) -> Result<Outcome, HarnessError> + Sync,
{
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut drawn = Vec::new();
    for s in samplers {
        s.draw(&mut rng, &mut drawn);
    }
    if let Some((_, g)) = drawn.iter().find(|(_, g)| g.n() != expected_n) {
        return Err(HarnessError::Order {
            expected: expected_n,
            found: g.n(),
        });
    }
    let sink = Quarantine::open(quarantine)?;
    let outcomes: Vec<Outcome> = in_pool(jobs, || {
        drawn
            .par_iter()
            .map(|(_, g)| {
                let out = judge(g)?;
                if out.verdict == Verdict::Fail {
                    sink.record(task, &emit_graph6(g), &out.detail)?;
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>, HarnessError>>()
    })??;
    let mut counts = VerdictCounts::default();
    let mut counterexamples = Vec::new();
    let mut grid = Vec::with_capacity(drawn.len());
    for (index, ((source, g), out)) in drawn.into_iter().zip(outcomes).enumerate() {
        counts.add(out.verdict);
        let graph6 = emit_graph6(&g);
        if out.verdict == Verdict::Fail {
            counterexamples.push(Counterexample {
                graph6: graph6.clone(),
                witness: out.detail.clone(),
            });
        }
        grid.push(InstanceRecord {
            index,
            source,
            graph6,
            rho: out.rho,
            verdict: out.verdict,
            reason: out.reason,
            detail: out.detail,
        });
    }
    let passed = counts.fail == 0 && extremal.iter().all(|e| e.informational || e.property_holds == Some(false));
    Ok(VerificationReport {
        task: task.into(),
        params,
        seed,
        tolerances: Tolerances::default(),
        exploratory,
        streams: samplers.iter().map(Sampler::describe).collect(),
        threshold,
        instances: grid.len(),
        counts,
        counterexamples,
        extremal,
        passed,
        grid,
        timing_ms: start.elapsed().as_millis() as u64,
    })
}

fn tree_detail(r: &TreeSearch) -> Value {
    serde_json::to_value(r).expect("tree search serializes")
}

/// Connected graphs with `α ≤ 5` and `ρ ≥ ρ(K_{⌈d/2⌉-1} ∨ (K_{n-⌈d/2⌉} ∪ K_1))`
/// should have a spanning tree with all leaves pairwise at distance `≥ d`,
/// unless they are that graph.
pub fn verify_leaf_distance(
    p: &LeafParams,
    samplers: &[Sampler],
    quarantine: Option<&Path>,
) -> Result<VerificationReport, HarnessError> {
    let (n, d) = (p.n, p.d);
    if !p.exploratory && (d < 4 || d * d > n) {
        return Err(HarnessError::Parameters(format!(
            "16 <= d^2 <= n fails (n = {n}, d = {d}); pass the exploratory flag to run anyway"
        )));
    }
    let tol = Tolerances::default();
    let threshold = threshold_tree(n, d, tol.eigen)?;
    let spec = FamilySpec::TreeExtremal { n, d };
    let config = TreeSearchConfig {
        budget: p.budget,
        restarts: p.restarts,
        seed: p.seed,
    };
    let search = |g: &Graph| -> Result<TreeSearch, HarnessError> {
        let r = spanning_tree_leafdist(g, d, TreeMode::Construct, &config)?;
        if let TreeSearch::Found { certificate } = &r {
            certificate.recheck(g)?;
            return Ok(r);
        }
        let r = spanning_tree_leafdist(g, d, TreeMode::Exhaustive, &config)?;
        if let TreeSearch::Found { certificate } = &r {
            certificate.recheck(g)?;
        }
        Ok(r)
    };
    let ext_graph = spec.build()?;
    let ext_result = search(&ext_graph)?;
    let extremal = vec![ExtremalCheck {
        family: spec,
        graph6: emit_graph6(&ext_graph),
        property_holds: match &ext_result {
            TreeSearch::Found { .. } => Some(true),
            TreeSearch::Absent { .. } => Some(false),
            TreeSearch::Unknown { .. } => None,
        },
        informational: true,
        detail: tree_detail(&ext_result),
    }];
    let cut = threshold.value - tol.hypothesis;
    let judge = |g: &Graph| -> Result<Outcome, HarnessError> {
        if !g.is_connected().unwrap_or(false) {
            return Ok(Outcome::skipped("disconnected".into(), None));
        }
        let alpha = independence_number(g);
        if alpha > ALPHA_LIMIT {
            return Ok(Outcome::skipped(format!("independence number {alpha} > {ALPHA_LIMIT}"), None));
        }
        let rho = spectral_radius(g, tol.eigen);
        if rho < cut {
            return Ok(Outcome::skipped("spectral radius below threshold".into(), Some(rho)));
        }
        let result = search(g)?;
        let exception = is_extremal_graph(g, &spec)?;
        let (verdict, reason) = match (&result, exception) {
            (_, true) => (Verdict::Exception, Some("extremal graph".into())),
            (TreeSearch::Found { .. }, _) => (Verdict::Pass, None),
            (TreeSearch::Absent { .. }, _) => (Verdict::Fail, Some("no spanning tree with the leaf distance".into())),
            (TreeSearch::Unknown { reason, .. }, _) => (Verdict::Unknown, Some(reason.clone())),
        };
        Ok(Outcome {
            verdict,
            reason,
            rho: Some(rho),
            detail: tree_detail(&result),
        })
    };
    run(
        "leaf-distance",
        json!({"n": n, "d": d, "budget": p.budget, "restarts": p.restarts}),
        p.seed,
        p.exploratory,
        p.jobs,
        samplers,
        threshold,
        extremal,
        quarantine,
        n,
        judge,
    )
}

fn fke_detail(g: &Graph, k: usize) -> Result<(bool, Value), HarnessError> {
    let v = is_fractional_k_extendable(g, k, FkeMode::Both)?;
    Ok((v.extendable, serde_json::to_value(&v).expect("verdict serializes")))
}

/// Connected graphs with minimum degree `δ`, `n ≥ max(2k+9, 5δ+1)` and `ρ` at
/// least the larger extremal radius should be fractional k-extendable,
/// unless they are one of the extremal graphs; the extremal graphs
/// themselves must fail.
pub fn verify_fke(p: &FkeParams, samplers: &[Sampler], quarantine: Option<&Path>) -> Result<VerificationReport, HarnessError> {
    let (n, k, delta) = (p.n, p.k, p.delta);
    if k < 1 {
        return Err(HarnessError::Parameters("k >= 1".into()));
    }
    let bound = (2 * k + 9).max(5 * delta + 1);
    if !p.exploratory && (delta < 1 || n < bound) {
        return Err(HarnessError::Parameters(format!(
            "need delta >= 1 and n >= max(2k+9, 5delta+1) = {bound}; pass the exploratory flag to run anyway"
        )));
    }
    let tol = Tolerances::default();
    let threshold = threshold_fke(n, k, delta, tol.eigen)?;
    let mut specs = vec![FamilySpec::FkeExtremalA { n, k }];
    if delta >= 2 * k && n + 2 * k > 2 * delta {
        specs.push(FamilySpec::FkeExtremalB { n, k, delta });
    }
    let mut extremal = Vec::new();
    for spec in &specs {
        let g = spec.build()?;
        let (extendable, detail) = fke_detail(&g, k)?;
        extremal.push(ExtremalCheck {
            family: *spec,
            graph6: emit_graph6(&g),
            property_holds: Some(extendable),
            informational: false,
            detail,
        });
    }
    let cut = threshold.value - tol.hypothesis;
    let judge = |g: &Graph| -> Result<Outcome, HarnessError> {
        if !g.is_connected().unwrap_or(false) {
            return Ok(Outcome::skipped("disconnected".into(), None));
        }
        let min_degree = g.min_degree();
        if min_degree != delta && !p.exploratory {
            return Ok(Outcome::skipped(format!("minimum degree {min_degree} != {delta}"), None));
        }
        let rho = spectral_radius(g, tol.eigen);
        if rho < cut {
            return Ok(Outcome::skipped("spectral radius below threshold".into(), Some(rho)));
        }
        for spec in &specs {
            if is_extremal_graph(g, spec)? {
                return Ok(Outcome {
                    verdict: Verdict::Exception,
                    reason: Some(format!("isomorphic to {}", spec.name())),
                    rho: Some(rho),
                    detail: Value::Null,
                });
            }
        }
        match fke_detail(g, k) {
            Ok((extendable, detail)) => Ok(Outcome {
                verdict: if extendable { Verdict::Pass } else { Verdict::Fail },
                reason: (!extendable).then(|| "not fractional k-extendable".into()),
                rho: Some(rho),
                detail,
            }),
            Err(HarnessError::Comb(e @ (CombError::NoKMatching { .. } | CombError::TooFewVertices { .. }))) => {
                Ok(Outcome::skipped(e.to_string(), Some(rho)))
            }
            Err(e) => Err(e),
        }
    };
    run(
        "fke",
        json!({"n": n, "k": k, "delta": delta}),
        p.seed,
        p.exploratory,
        p.jobs,
        samplers,
        threshold,
        extremal,
        quarantine,
        n,
        judge,
    )
}
