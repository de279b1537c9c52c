//! Command-line front end. [`run`] parses an argument list and returns the
//! exit code with the rendered output, so the binary only does I/O.
//!
//! Exit codes: 0 all checks pass, 1 a check fails, 2 usage error, 3 a size
//! cap or search budget refused the input.

use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::census::equitable_partition;
use crate::combinatorics::{
    delta_condition, has_fpm, is_fractional_k_extendable, isolated_sweep, spanning_tree_leafdist, CombError, FkeMode,
    Predicate, TreeMode, TreeSearch, TreeSearchConfig,
};
use crate::family::FamilySpec;
use crate::graph::Graph;
use crate::harness::{
    audit_edge_chain, audit_edge_quadratic, audit_large_degree, audit_middle_root, audit_small_degree,
    fke_mode_suite, fpm_suite, hong_suite, interlace_suite, neighborhood_suite, proof_constants, threshold_fke,
    threshold_tree, verify_fke, verify_leaf_distance, AuditKind, AuditPoint, AuditSummary, FkeParams, HarnessError,
    LeafParams, Sampler, SuiteReport, ThresholdResult, VerificationReport,
};
use crate::io::{emit_graph6, parse_graph6, read_graph6_corpus};
use crate::spectral::{
    cubic_largest_root, eigen_sym, quotient_matrix, spectral_radius_detailed, Bracket, SymMatrix, DEFAULT_TOL,
};

#[derive(Debug, Parser, Serialize)]
#[command(name = "spanrad", version, about = "Spectral thresholds, extremal families and exact graph oracles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Args, Serialize)]
struct Output {
    /// Output format; JSON is the authoritative one
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the document here instead of stdout
    #[arg(short = 'o', value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum FamilyName {
    /// K_{ceil(d/2)-1} v (K_{n-ceil(d/2)} u K_1); needs --d
    TreeExtremal,
    /// K_{ceil(q(d-2)/2)} v (K_{n-ceil(q(d-2)/2)-q} u qK_1); needs --d, --q
    TreeProofG1,
    /// K_s v (K_{n-2s+2k-1} u (s-2k+1)K_1); needs --k, --s
    FkeProofG1,
    /// K_{2k} v (K_{n-2k-1} u K_1); needs --k
    FkeExtremalA,
    /// K_delta v (K_{n-2delta+2k-1} u (delta-2k+1)K_1); needs --k, --delta
    FkeExtremalB,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum RhoMethod {
    /// Shifted power iteration with a Jacobi fallback
    Power,
    /// Full Jacobi spectrum
    Jacobi,
    /// Largest eigenvalue of the coarsest equitable quotient
    Quotient,
    /// Power iteration and quotient, with their difference
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum TreeModeArg {
    Exhaustive,
    Construct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum FkeModeArg {
    Definition,
    Sweep,
    Both,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Build an extremal family member and print it as graph6
    Construct {
        #[arg(long, value_enum)]
        family: FamilyName,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        delta: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Spectral radius of a graph6 graph
    Rho {
        /// graph6 file, or - for stdin
        graph: String,
        #[arg(long, value_enum, default_value_t = RhoMethod::Both)]
        method: RhoMethod,
        /// Eigenvalue tolerance
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Spectral thresholds of the two extremal conditions
    #[command(subcommand)]
    Threshold(ThresholdCmd),
    /// Exact property checkers on one graph
    #[command(subcommand)]
    Check(CheckCmd),
    /// Check a threshold statement over graph streams
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Audit an inequality chain or run one small-order suite
    #[command(subcommand)]
    Audit(AuditCmd),
    /// All exhaustive small-order suites
    Sweep {
        /// Largest order
        #[arg(long, default_value_t = 7)]
        n: usize,
        /// Worker threads [default: logical processors]
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum ThresholdCmd {
    /// Radius of K_{ceil(d/2)-1} v (K_{n-ceil(d/2)} u K_1)
    Tree {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Larger radius of the two fractional-extendability extremal graphs
    Fke {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        delta: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum CheckCmd {
    /// Spanning tree whose leaves are pairwise at distance >= d
    TreeDistance {
        graph: String,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value_t = TreeModeArg::Exhaustive)]
        mode: TreeModeArg,
        /// Largest spanning-tree count exhaustive mode accepts
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Fractional perfect matching
    Fpm {
        graph: String,
        #[command(flatten)]
        out: Output,
    },
    /// Fractional k-extendability
    Fke {
        graph: String,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = FkeModeArg::Both)]
        mode: FkeModeArg,
        #[command(flatten)]
        out: Output,
    },
    /// i(G-S) < 2|S|/(d-2) for every nonempty S
    Kaneko {
        graph: String,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        out: Output,
    },
    /// delta_t > t(d-2)/2 for 1 <= t <= alpha
    DeltaT {
        graph: String,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug, Clone, Args, Serialize)]
struct StreamArgs {
    /// Random samples per stream
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Extra graphs, one graph6 per line
    #[arg(long, value_name = "FILE")]
    corpus: Option<PathBuf>,
    /// Worker threads [default: logical processors]
    #[arg(long)]
    jobs: Option<usize>,
    /// Allow parameters outside the hypothesis; the report is labeled exploratory
    #[arg(long)]
    exploratory: bool,
    /// Append counterexamples to this file as they are found
    #[arg(long, value_name = "FILE")]
    quarantine: Option<PathBuf>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum VerifyCmd {
    /// Connected, alpha <= 5, rho >= threshold implies a tree with leaf distance >= d
    LeafDistance {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Spanning-tree count cap for the exhaustive fallback
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        /// Most edges removed from K_n per mutation
        #[arg(long, default_value_t = 6)]
        max_edits: usize,
        #[command(flatten)]
        stream: StreamArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Connected, min degree delta, rho >= threshold implies fractional k-extendable
    Fke {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        delta: usize,
        /// Most edges deleted from K_n in the exhaustive stream, and toggled per mutation
        #[arg(long, default_value_t = 3)]
        max_edits: usize,
        #[command(flatten)]
        stream: StreamArgs,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug, Clone, Args, Serialize)]
struct GridArgs {
    /// Worker threads [default: logical processors]
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum AuditCmd {
    /// (d-1)q^2 - (2n-2)q + n^2 - 2n + 1 peaks at q = 2; default grid without --n/--d
    EdgeQuadratic {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Edge-count chain for the q-isolated cover graph; default grid without --n/--d/--q
    EdgeChain {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Hub s >= 2k+1 against K_{2k} v (K_{n-2k-1} u K_1); default grid without parameters
    SmallDegree {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Hub s >= delta+1 against the delta-hub extremal graph; default grid without parameters
    LargeDegree {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        delta: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Middle quotient eigenvalue of the cover graph; default grid without parameters
    MiddleRoot {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Boundary constants of the fractional-extendability chains
    Constants {
        /// Values of k
        #[arg(long, num_args = 1.., default_values_t = [1, 2, 3, 4, 5])]
        k: Vec<i64>,
        #[command(flatten)]
        out: Output,
    },
    /// rho <= sqrt(2e-n+1) on connected graphs, equality on stars and complete graphs
    Hong {
        /// Largest order
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Cauchy interlacing on random symmetric matrices
    Interlace {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Subset sweep against the delta_t condition on connected graphs
    Neighborhood {
        /// Largest order
        #[arg(long, default_value_t = 7)]
        n: usize,
        /// Values of d
        #[arg(long, num_args = 1.., default_values_t = [3, 4, 5, 6])]
        d: Vec<usize>,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Definition against subset characterization of fractional k-extendability
    FkeModes {
        /// Largest order
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Values of k
        #[arg(long, num_args = 1.., default_values_t = [1, 2])]
        k: Vec<usize>,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: Output,
    },
}

/// Failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        let code = match &e {
            HarnessError::Comb(c) => comb_code(c),
            HarnessError::Agreement { .. } | HarnessError::Quarantine(_) => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn comb_code(e: &CombError) -> i32 {
    match e {
        CombError::CapExceeded { .. } | CombError::BudgetExhausted { .. } => 3,
        CombError::ModeDisagreement { .. } => 1,
        _ => 2,
    }
}

impl From<CombError> for Failure {
    fn from(e: CombError) -> Self {
        Failure {
            code: comb_code(&e),
            message: e.to_string(),
        }
    }
}

impl From<crate::family::FamilyError> for Failure {
    fn from(e: crate::family::FamilyError) -> Self {
        usage(e.to_string())
    }
}

impl From<crate::spectral::SpectralError> for Failure {
    fn from(e: crate::spectral::SpectralError) -> Self {
        usage(e.to_string())
    }
}

/// A rendered command result.
struct Report {
    code: i32,
    json: Value,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    text: String,
}

/// Result of [`run`]: exit code, stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one command line (`argv[0]` is the program name).
pub fn run<I, T>(argv: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CliOutput {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                CliOutput {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let out = output_of(&cli.command).clone();
    let config = json!({"command": &cli.command});
    let report = match dispatch(&cli.command) {
        Ok(r) => r,
        Err(f) => {
            return CliOutput {
                code: f.code,
                stdout: String::new(),
                stderr: format!("error: {}\n", f.message),
            }
        }
    };
    let mut stderr = String::new();
    let document = match out.format {
        Format::Json => {
            let mut doc = report.json;
            if let Value::Object(map) = &mut doc {
                map.insert("config".into(), config);
            }
            serde_json::to_string_pretty(&doc).expect("json renders") + "\n"
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
            w.write_record(&report.header).expect("csv header");
            for row in &report.rows {
                w.write_record(row).expect("csv row");
            }
            let body = String::from_utf8(w.into_inner().expect("csv flush")).expect("utf8");
            format!("# config: {config}\n{body}")
        }
        Format::Text => {
            if matches!(cli.command, Command::Construct { .. }) {
                // Keep the document pure graph6 so it can be piped.
                stderr = format!("config: {config}\n");
                report.text
            } else {
                format!("config: {config}\n{}", report.text)
            }
        }
    };
    match &out.output {
        Some(path) => match std::fs::write(path, &document) {
            Ok(()) => CliOutput {
                code: report.code,
                stdout: String::new(),
                stderr,
            },
            Err(e) => CliOutput {
                code: 2,
                stdout: String::new(),
                stderr: format!("error: cannot write {}: {e}\n", path.display()),
            },
        },
        None => CliOutput {
            code: report.code,
            stdout: document,
            stderr,
        },
    }
}

fn output_of(c: &Command) -> &Output {
    match c {
        Command::Construct { out, .. } | Command::Rho { out, .. } | Command::Sweep { out, .. } => out,
        Command::Threshold(ThresholdCmd::Tree { out, .. } | ThresholdCmd::Fke { out, .. }) => out,
        Command::Check(
            CheckCmd::TreeDistance { out, .. }
            | CheckCmd::Fpm { out, .. }
            | CheckCmd::Fke { out, .. }
            | CheckCmd::Kaneko { out, .. }
            | CheckCmd::DeltaT { out, .. },
        ) => out,
        Command::Verify(VerifyCmd::LeafDistance { out, .. } | VerifyCmd::Fke { out, .. }) => out,
        Command::Audit(
            AuditCmd::EdgeQuadratic { out, .. }
            | AuditCmd::EdgeChain { out, .. }
            | AuditCmd::SmallDegree { out, .. }
            | AuditCmd::LargeDegree { out, .. }
            | AuditCmd::MiddleRoot { out, .. }
            | AuditCmd::Constants { out, .. }
            | AuditCmd::Hong { out, .. }
            | AuditCmd::Interlace { out, .. }
            | AuditCmd::Neighborhood { out, .. }
            | AuditCmd::FkeModes { out, .. },
        ) => out,
    }
}

fn read_graph(source: &str) -> Result<Graph, Failure> {
    let text = if source == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| usage(format!("cannot read stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(source).map_err(|e| usage(format!("cannot read {source}: {e}")))?
    };
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or_else(|| usage(format!("{source}: no graph6 line")))?;
    parse_graph6(line.as_bytes()).map_err(|e| usage(format!("{source}: malformed graph6: {e}")))
}

fn need(value: Option<usize>, flag: &str, family: &str) -> Result<usize, Failure> {
    value.ok_or_else(|| usage(format!("--family {family} requires --{flag}")))
}

fn in_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, Failure> {
    match jobs {
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j.max(1))
                .build()
                .map_err(|e| usage(e.to_string()))?;
            Ok(pool.install(f))
        }
        None => Ok(f()),
    }
}

fn to_json<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("value serializes")
}

fn verdict_code(ok: bool) -> i32 {
    if ok {
        0
    } else {
        1
    }
}

fn dispatch(c: &Command) -> Result<Report, Failure> {
    match c {
        Command::Construct {
            family,
            n,
            d,
            q,
            k,
            s,
            delta,
            ..
        } => construct(*family, *n, *d, *q, *k, *s, *delta),
        Command::Rho { graph, method, tol, .. } => rho(&read_graph(graph)?, *method, *tol),
        Command::Threshold(ThresholdCmd::Tree { n, d, tol, .. }) => Ok(threshold_report(threshold_tree(*n, *d, *tol)?)),
        Command::Threshold(ThresholdCmd::Fke { n, k, delta, tol, .. }) => {
            Ok(threshold_report(threshold_fke(*n, *k, *delta, *tol)?))
        }
        Command::Check(cmd) => check(cmd),
        Command::Verify(cmd) => verify(cmd),
        Command::Audit(cmd) => audit(cmd),
        Command::Sweep { n, jobs, .. } => {
            let suites = in_pool(*jobs, || -> Result<Vec<SuiteReport>, HarnessError> {
                Ok(vec![
                    neighborhood_suite(*n, &[3, 4, 5, 6])?,
                    fke_mode_suite(*n, &[1, 2])?,
                    fpm_suite(*n)?,
                    hong_suite(*n)?,
                ])
            })??;
            Ok(suites_report(suites))
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn construct(
    family: FamilyName,
    n: usize,
    d: Option<usize>,
    q: Option<usize>,
    k: Option<usize>,
    s: Option<usize>,
    delta: Option<usize>,
) -> Result<Report, Failure> {
    let spec = match family {
        FamilyName::TreeExtremal => FamilySpec::TreeExtremal {
            n,
            d: need(d, "d", "tree-extremal")?,
        },
        FamilyName::TreeProofG1 => FamilySpec::TreeProofG1 {
            n,
            d: need(d, "d", "tree-proof-g1")?,
            q: need(q, "q", "tree-proof-g1")?,
        },
        FamilyName::FkeProofG1 => FamilySpec::FkeProofG1 {
            n,
            k: need(k, "k", "fke-proof-g1")?,
            s: need(s, "s", "fke-proof-g1")?,
        },
        FamilyName::FkeExtremalA => FamilySpec::FkeExtremalA {
            n,
            k: need(k, "k", "fke-extremal-a")?,
        },
        FamilyName::FkeExtremalB => FamilySpec::FkeExtremalB {
            n,
            k: need(k, "k", "fke-extremal-b")?,
            delta: need(delta, "delta", "fke-extremal-b")?,
        },
    };
    let shape = spec.shape()?;
    let g = spec.build()?;
    let g6 = emit_graph6(&g);
    Ok(Report {
        code: 0,
        json: json!({"family": spec, "shape": shape, "n": g.n(), "edges": g.edge_count(), "graph6": g6}),
        header: vec!["family", "n", "edges", "graph6"],
        rows: vec![vec![spec.name().into(), g.n().to_string(), g.edge_count().to_string(), g6.clone()]],
        text: g6 + "\n",
    })
}

fn rho(g: &Graph, method: RhoMethod, tol: f64) -> Result<Report, Failure> {
    let mut doc = json!({"graph6": emit_graph6(g), "n": g.n(), "edges": g.edge_count(), "method": method});
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut values = Vec::new();
    if matches!(method, RhoMethod::Power | RhoMethod::Both) {
        let r = spectral_radius_detailed(g, tol);
        doc["eigensolver"] = to_json(&r);
        values.push(r.value);
        rows.push(vec!["eigensolver".to_string(), format!("{:?}", r.method).to_lowercase(), r.value.to_string()]);
        text += &format!("eigensolver: {}\n", r.value);
    }
    if method == RhoMethod::Jacobi {
        let e = eigen_sym(&SymMatrix::adjacency(g), tol);
        let top = e.values.first().copied().unwrap_or(0.0);
        doc["jacobi"] = json!({"value": top, "spectrum": e.values, "sweeps": e.sweeps});
        values.push(top);
        rows.push(vec!["jacobi".into(), "jacobi".into(), top.to_string()]);
        text += &format!("jacobi: {top}\n");
    }
    if matches!(method, RhoMethod::Quotient | RhoMethod::Both) {
        let cells = equitable_partition(g);
        let qm = quotient_matrix(g, &cells)?;
        let sym = qm.largest_eigenvalue(tol.min(1e-12));
        let cubic = match qm.char_poly() {
            Some(p) if g.n() > 0 => Some((p.to_string(), cubic_largest_root(&p, Bracket::Auto { n: g.n() }, tol)?)),
            _ => None,
        };
        let value = cubic.as_ref().map_or(sym, |c| c.1);
        doc["quotient"] = json!({
            "cells": cells,
            "equitable": qm.equitable,
            "matrix": qm.q,
            "polynomial": cubic.as_ref().map(|c| &c.0),
            "value": value,
        });
        values.push(value);
        rows.push(vec!["quotient".into(), format!("{} cells", qm.cells.len()), value.to_string()]);
        text += &format!("quotient ({} cells): {value}\n", qm.cells.len());
    }
    let mut code = 0;
    if method == RhoMethod::Both {
        let diff = (values[0] - values[1]).abs();
        let agree = diff < crate::harness::AGREEMENT_TOL;
        doc["difference"] = json!(diff);
        doc["agree"] = json!(agree);
        text += &format!("difference: {diff:e}\n");
        code = verdict_code(agree);
    }
    Ok(Report {
        code,
        json: doc,
        header: vec!["quantity", "method", "value"],
        rows,
        text,
    })
}

fn threshold_report(t: ThresholdResult) -> Report {
    let rows = t
        .candidates
        .iter()
        .map(|c| {
            vec![
                c.family.name().to_string(),
                c.eigensolver.to_string(),
                c.quotient_root.to_string(),
                c.method_agreement.to_string(),
                c.polynomial.clone(),
            ]
        })
        .collect();
    let mut text = format!("threshold: {} ({})\nagreement: {:e}\n", t.value, t.family.name(), t.method_agreement);
    for w in &t.warnings {
        text += &format!("warning: {w}\n");
    }
    Report {
        code: 0,
        json: to_json(&t),
        header: vec!["family", "eigensolver", "quotient_root", "agreement", "polynomial"],
        rows,
        text,
    }
}

fn check_report(name: &str, g: &Graph, holds: bool, result: Value, code: i32, summary: String) -> Report {
    let g6 = emit_graph6(g);
    Report {
        code,
        json: json!({"check": name, "graph6": g6, "verdict": holds, "result": result}),
        header: vec!["check", "graph6", "verdict"],
        rows: vec![vec![name.into(), g6, holds.to_string()]],
        text: format!("{name}: {}\n{summary}", if holds { "holds" } else { "fails" }),
    }
}

fn check(cmd: &CheckCmd) -> Result<Report, Failure> {
    match cmd {
        CheckCmd::TreeDistance {
            graph,
            d,
            mode,
            budget,
            seed,
            ..
        } => {
            let g = read_graph(graph)?;
            let config = TreeSearchConfig {
                budget: *budget,
                seed: *seed,
                ..TreeSearchConfig::default()
            };
            let mode = match mode {
                TreeModeArg::Exhaustive => TreeMode::Exhaustive,
                TreeModeArg::Construct => TreeMode::Construct,
            };
            let r = spanning_tree_leafdist(&g, *d, mode, &config)?;
            if let Some(c) = r.certificate() {
                c.recheck(&g)?;
            }
            let (holds, code, summary) = match &r {
                TreeSearch::Found { certificate } => (true, 0, format!("tree edges: {:?}\n", certificate.edges)),
                TreeSearch::Absent { trees_examined, .. } => (false, 1, format!("trees examined: {trees_examined}\n")),
                TreeSearch::Unknown { reason, .. } => (false, 3, format!("undecided: {reason}\n")),
            };
            let mut rep = check_report("tree-distance", &g, holds, to_json(&r), code, summary);
            if code == 3 {
                rep.json["verdict"] = Value::Null;
                rep.rows[0][2] = "undecided".into();
                rep.text = rep.text.replacen("fails", "undecided", 1);
            }
            Ok(rep)
        }
        CheckCmd::Fpm { graph, .. } => {
            let g = read_graph(graph)?;
            let r = has_fpm(&g);
            let summary = match &r.hall_violator {
                Some(x) => format!("hall violator: {x:?}\n"),
                None => String::new(),
            };
            Ok(check_report("fpm", &g, r.exists, to_json(&r), verdict_code(r.exists), summary))
        }
        CheckCmd::Fke { graph, k, mode, .. } => {
            let g = read_graph(graph)?;
            let mode = match mode {
                FkeModeArg::Definition => FkeMode::Definition,
                FkeModeArg::Sweep => FkeMode::Sweep,
                FkeModeArg::Both => FkeMode::Both,
            };
            let v = is_fractional_k_extendable(&g, *k, mode)?;
            let mut summary = String::new();
            if let Some(w) = &v.subset_witness {
                summary += &format!("subset witness: {:?}\n", w.set);
            }
            if let Some(m) = &v.matching_witness {
                summary += &format!("matching witness: {m:?}\n");
            }
            Ok(check_report("fke", &g, v.extendable, to_json(&v), verdict_code(v.extendable), summary))
        }
        CheckCmd::Kaneko { graph, d, .. } => {
            let g = read_graph(graph)?;
            if *d < 3 {
                return Err(usage("--d must be at least 3"));
            }
            let r = isolated_sweep(&g, Predicate::Kaneko { d: *d })?;
            let summary = match &r.witness {
                Some(w) => format!("subset witness: {:?}\n", w.set),
                None => String::new(),
            };
            Ok(check_report("kaneko", &g, r.passed, to_json(&r), verdict_code(r.passed), summary))
        }
        CheckCmd::DeltaT { graph, d, .. } => {
            let g = read_graph(graph)?;
            let r = delta_condition(&g, *d)?;
            let summary = format!("alpha: {}\ndelta_t: {:?}\n", r.alpha, r.deltas);
            Ok(check_report("delta-t", &g, r.holds, to_json(&r), verdict_code(r.holds), summary))
        }
    }
}

fn corpus(path: &Option<PathBuf>) -> Result<Vec<Sampler>, Failure> {
    match path {
        None => Ok(vec![]),
        Some(p) => {
            let file = std::fs::File::open(p).map_err(|e| usage(format!("cannot read {}: {e}", p.display())))?;
            let graphs = read_graph6_corpus(std::io::BufReader::new(file))
                .map_err(|e| usage(format!("{}: {e}", p.display())))?;
            Ok(vec![Sampler::Corpus(graphs)])
        }
    }
}

fn resolved_jobs(jobs: Option<usize>) -> usize {
    jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn verification_report(r: VerificationReport) -> Report {
    let rows = r
        .grid
        .iter()
        .map(|i| {
            vec![
                i.index.to_string(),
                i.source.clone(),
                i.graph6.clone(),
                i.rho.map_or(String::new(), |x| x.to_string()),
                to_json(&i.verdict).as_str().unwrap_or_default().to_string(),
                i.reason.clone().unwrap_or_default(),
            ]
        })
        .collect();
    let c = r.counts;
    let mut text = format!(
        "{}: {}\nthreshold: {}\ninstances: {} (pass {}, fail {}, skipped {}, unknown {}, exception {})\n",
        r.task,
        if r.passed { "PASS" } else { "FAIL" },
        r.threshold.value,
        r.instances,
        c.pass,
        c.fail,
        c.skipped,
        c.unknown,
        c.exception
    );
    if r.exploratory {
        text += "exploratory: parameters outside the hypothesis\n";
    }
    for e in &r.extremal {
        text += &format!(
            "extremal {} {}: property {}{}\n",
            e.family.name(),
            e.graph6,
            match e.property_holds {
                Some(true) => "holds",
                Some(false) => "fails",
                None => "undecided",
            },
            if e.informational { " (informational)" } else { "" }
        );
    }
    for ce in &r.counterexamples {
        text += &format!("counterexample: {}\n", ce.graph6);
    }
    Report {
        code: verdict_code(r.passed),
        json: to_json(&r),
        header: vec!["index", "source", "graph6", "rho", "verdict", "reason"],
        rows,
        text,
    }
}

fn verify(cmd: &VerifyCmd) -> Result<Report, Failure> {
    match cmd {
        VerifyCmd::LeafDistance {
            n,
            d,
            budget,
            max_edits,
            stream,
            ..
        } => {
            let kn = Graph::complete(*n).map_err(|e| usage(e.to_string()))?;
            let mut samplers = vec![Sampler::Corpus(vec![kn.clone()])];
            samplers.extend(corpus(&stream.corpus)?);
            samplers.push(Sampler::Mutations {
                base: kn,
                samples: stream.samples,
                max_edits: *max_edits,
                deletions_only: true,
            });
            samplers.push(Sampler::Random {
                n: *n,
                samples: stream.samples,
                min_density: 0.9,
            });
            let params = LeafParams {
                n: *n,
                d: *d,
                seed: stream.seed,
                budget: *budget,
                restarts: TreeSearchConfig::default().restarts,
                exploratory: stream.exploratory,
                jobs: Some(resolved_jobs(stream.jobs)),
            };
            Ok(verification_report(verify_leaf_distance(&params, &samplers, stream.quarantine.as_deref())?))
        }
        VerifyCmd::Fke {
            n,
            k,
            delta,
            max_edits,
            stream,
            ..
        } => {
            let kn = Graph::complete(*n).map_err(|e| usage(e.to_string()))?;
            let mut samplers = vec![Sampler::Deletions {
                base: kn,
                max_deletions: *max_edits,
            }];
            samplers.extend(corpus(&stream.corpus)?);
            let mut bases = vec![FamilySpec::FkeExtremalA { n: *n, k: *k }];
            if *delta > 2 * k && n + 2 * k > 2 * delta {
                bases.push(FamilySpec::FkeExtremalB {
                    n: *n,
                    k: *k,
                    delta: *delta,
                });
            }
            for spec in bases {
                samplers.push(Sampler::Mutations {
                    base: spec.build()?,
                    samples: stream.samples,
                    max_edits: *max_edits,
                    deletions_only: false,
                });
            }
            samplers.push(Sampler::Random {
                n: *n,
                samples: stream.samples,
                min_density: 0.9,
            });
            let params = FkeParams {
                n: *n,
                k: *k,
                delta: *delta,
                seed: stream.seed,
                exploratory: stream.exploratory,
                jobs: Some(resolved_jobs(stream.jobs)),
            };
            Ok(verification_report(verify_fke(&params, &samplers, stream.quarantine.as_deref())?))
        }
    }
}

fn point_report(p: AuditPoint) -> Report {
    let rows = p.checks.iter().map(|c| check_row(&p.params, c)).collect();
    let mut text = format!("{} {}: {}\n", p.audit, p.params, if p.passed { "PASS" } else { "FAIL" });
    for c in &p.checks {
        text += &format!("  [{}] {c}\n", if c.holds { "ok" } else { "FAILED" });
    }
    for note in &p.notes {
        text += &format!("  note: {note}\n");
    }
    Report {
        code: verdict_code(p.passed),
        json: to_json(&p),
        header: vec!["params", "label", "lhs", "relation", "rhs", "holds"],
        rows,
        text,
    }
}

fn check_row(params: &Value, c: &crate::harness::Check) -> Vec<String> {
    vec![
        params.to_string(),
        c.label.clone(),
        c.lhs.to_string(),
        c.relation.to_string(),
        c.rhs.to_string(),
        c.holds.to_string(),
    ]
}

fn summary_report(s: AuditSummary) -> Report {
    let rows = s
        .failures
        .iter()
        .flat_map(|p| p.failures().map(|c| check_row(&p.params, c)).collect::<Vec<_>>())
        .collect();
    let mut text = format!(
        "{}: {} ({} points, {} failing)\n",
        s.audit,
        if s.passed { "PASS" } else { "FAIL" },
        s.points,
        s.failures.len()
    );
    for p in &s.failures {
        for c in p.failures() {
            text += &format!("  {} {c}\n", p.params);
        }
    }
    Report {
        code: verdict_code(s.passed),
        json: to_json(&s),
        header: vec!["params", "label", "lhs", "relation", "rhs", "holds"],
        rows,
        text,
    }
}

fn suites_report(suites: Vec<SuiteReport>) -> Report {
    let passed = suites.iter().all(|s| s.passed);
    let rows = suites
        .iter()
        .map(|s| vec![s.suite.clone(), s.cases.to_string(), s.failures.len().to_string(), s.passed.to_string()])
        .collect();
    let text = suites
        .iter()
        .map(|s| {
            format!(
                "{}: {} ({} cases, {} failures)\n",
                s.suite,
                if s.passed { "PASS" } else { "FAIL" },
                s.cases,
                s.failures.len()
            )
        })
        .collect();
    Report {
        code: verdict_code(passed),
        json: json!({"passed": passed, "suites": suites}),
        header: vec!["suite", "cases", "failures", "passed"],
        rows,
        text,
    }
}

/// Single point when every parameter is given, the default grid when none is.
fn point_or_grid<const N: usize>(
    params: [Option<usize>; N],
    names: [&str; N],
    kind: AuditKind,
    jobs: Option<usize>,
    point: impl FnOnce([usize; N]) -> Result<AuditPoint, HarnessError>,
) -> Result<Report, Failure> {
    let given = params.iter().filter(|p| p.is_some()).count();
    if given == N {
        Ok(point_report(point(params.map(|p| p.expect("given")))?))
    } else if given == 0 {
        Ok(summary_report(in_pool(jobs, || kind.run_default_grid())??))
    } else {
        Err(usage(format!(
            "{}: pass all of --{} or none for the default grid",
            kind.name(),
            names.join(", --")
        )))
    }
}

fn audit(cmd: &AuditCmd) -> Result<Report, Failure> {
    match cmd {
        AuditCmd::EdgeQuadratic { n, d, grid, .. } => {
            point_or_grid([*n, *d], ["n", "d"], AuditKind::EdgeQuadratic, grid.jobs, |[n, d]| {
                audit_edge_quadratic(n, d)
            })
        }
        AuditCmd::EdgeChain { n, d, q, grid, .. } => {
            point_or_grid([*n, *d, *q], ["n", "d", "q"], AuditKind::EdgeChain, grid.jobs, |[n, d, q]| {
                audit_edge_chain(n, d, q)
            })
        }
        AuditCmd::SmallDegree { n, k, s, grid, .. } => {
            point_or_grid([*n, *k, *s], ["n", "k", "s"], AuditKind::SmallDegree, grid.jobs, |[n, k, s]| {
                audit_small_degree(n, k, s)
            })
        }
        AuditCmd::LargeDegree { n, k, delta, s, grid, .. } => point_or_grid(
            [*n, *k, *delta, *s],
            ["n", "k", "delta", "s"],
            AuditKind::LargeDegree,
            grid.jobs,
            |[n, k, delta, s]| audit_large_degree(n, k, delta, s),
        ),
        AuditCmd::MiddleRoot { n, k, s, grid, .. } => {
            point_or_grid([*n, *k, *s], ["n", "k", "s"], AuditKind::MiddleRoot, grid.jobs, |[n, k, s]| {
                audit_middle_root(n, k, s)
            })
        }
        AuditCmd::Constants { k, .. } => {
            let constants: Vec<_> = k.iter().flat_map(|&k| proof_constants(k)).collect();
            let passed = constants.iter().all(|c| c.matches);
            let rows = constants
                .iter()
                .map(|c| vec![c.name.into(), c.k.to_string(), c.computed.clone(), c.claimed.clone(), c.matches.to_string()])
                .collect();
            let text = constants
                .iter()
                .map(|c| {
                    format!(
                        "[{}] k={} {}: computed {}, stated {}\n",
                        if c.matches { "ok" } else { "MISMATCH" },
                        c.k,
                        c.name,
                        c.computed,
                        c.claimed
                    )
                })
                .collect();
            Ok(Report {
                code: verdict_code(passed),
                json: json!({"passed": passed, "constants": constants}),
                header: vec!["name", "k", "computed", "stated", "matches"],
                rows,
                text,
            })
        }
        AuditCmd::Hong { n, grid, .. } => Ok(suites_report(vec![in_pool(grid.jobs, || hong_suite(*n))??])),
        AuditCmd::Interlace { samples, seed, grid, .. } => {
            Ok(suites_report(vec![in_pool(grid.jobs, || interlace_suite(*samples, *seed))??]))
        }
        AuditCmd::Neighborhood { n, d, grid, .. } => {
            if d.iter().any(|&d| d < 3) {
                return Err(usage("--d values must be at least 3"));
            }
            Ok(suites_report(vec![in_pool(grid.jobs, || neighborhood_suite(*n, d))??]))
        }
        AuditCmd::FkeModes { n, k, grid, .. } => {
            if k.contains(&0) {
                return Err(usage("--k values must be at least 1"));
            }
            Ok(suites_report(vec![in_pool(grid.jobs, || fke_mode_suite(*n, k))??]))
        }
    }
}
