//! C ABI over the spanrad library.
//!
//! Graphs cross the boundary as opaque `SpanradGraph` handles. Every function
//! returns a `SpanradStatus`; results go through out-pointers. On failure the
//! message is available from `spanrad_last_error` on the same thread until the
//! next call. Panics are caught and reported as `SPANRAD_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use spanrad::combinatorics::{
    has_fpm, independence_number, is_fractional_k_extendable, spanning_tree_leafdist, CombError, FkeMode, TreeMode,
    TreeSearch, TreeSearchConfig,
};
use spanrad::harness::{threshold_fke, threshold_tree, HarnessError};
use spanrad::io::{emit_graph6, parse_graph6};
use spanrad::spectral::{hong_bound, spectral_radius};
use spanrad::{FamilySpec, Graph};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpanradStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    /// Input is larger than an exhaustive routine accepts.
    CapExceeded = 4,
    /// An enumeration budget ran out.
    BudgetExhausted = 5,
    /// The question is undefined for this input, e.g. no k-matching exists.
    NotApplicable = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpanradFamily {
    /// Needs `d`.
    TreeExtremal = 0,
    /// Needs `d`, `q`.
    TreeProofG1 = 1,
    /// Needs `k`, `s`.
    FkeProofG1 = 2,
    /// Needs `k`.
    FkeExtremalA = 3,
    /// Needs `k`, `delta`.
    FkeExtremalB = 4,
}

/// Family selector and parameters; fields a family does not use are ignored.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SpanradFamilyParams {
    pub family: SpanradFamily,
    pub n: usize,
    pub d: usize,
    pub q: usize,
    pub k: usize,
    pub s: usize,
    pub delta: usize,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpanradTreeOutcome {
    Found = 0,
    Absent = 1,
    Unknown = 2,
}

/// Opaque graph handle.
pub struct SpanradGraph(Graph);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(SpanradStatus, String);

impl From<CombError> for Failure {
    fn from(e: CombError) -> Self {
        let status = match e {
            CombError::CapExceeded { .. } => SpanradStatus::CapExceeded,
            CombError::BudgetExhausted { .. } => SpanradStatus::BudgetExhausted,
            CombError::NoKMatching { .. } | CombError::TooFewVertices { .. } => SpanradStatus::NotApplicable,
            _ => SpanradStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::Comb(c) => c.into(),
            other => Failure(SpanradStatus::InvalidArgument, other.to_string()),
        }
    }
}

fn invalid(e: impl ToString) -> Failure {
    Failure(SpanradStatus::InvalidArgument, e.to_string())
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SpanradStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SpanradStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {message}"));
            SpanradStatus::Panic
        }
    }
}

fn graph<'a>(g: *const SpanradGraph) -> Result<&'a Graph, Failure> {
    // SAFETY: the caller passes a handle from this library that is still live.
    unsafe { g.as_ref() }
        .map(|h| &h.0)
        .ok_or_else(|| Failure(SpanradStatus::NullPointer, "graph handle is null".into()))
}

fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(SpanradStatus::NullPointer, "output pointer is null".into()));
    }
    // SAFETY: non-null and, by contract, valid for writes of T.
    unsafe { out.write(value) };
    Ok(())
}

fn handle(g: Graph) -> *mut SpanradGraph {
    Box::into_raw(Box::new(SpanradGraph(g)))
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next call into the library on this thread.
#[no_mangle]
pub extern "C" fn spanrad_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses one graph6 string.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn spanrad_graph_from_graph6(text: *const c_char, out: *mut *mut SpanradGraph) -> SpanradStatus {
    guard(|| {
        if text.is_null() {
            return Err(Failure(SpanradStatus::NullPointer, "text is null".into()));
        }
        let bytes = unsafe { CStr::from_ptr(text) }.to_bytes();
        let g = parse_graph6(bytes.trim_ascii()).map_err(|e| Failure(SpanradStatus::Parse, e.to_string()))?;
        write(out, handle(g))
    })
}

/// Builds a graph from `edge_count` vertex pairs stored flat in `edges`.
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable values (may be NULL when
/// `edge_count` is 0); `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn spanrad_graph_from_edges(
    n: usize,
    edges: *const usize,
    edge_count: usize,
    out: *mut *mut SpanradGraph,
) -> SpanradStatus {
    guard(|| {
        let flat: &[usize] = if edge_count == 0 {
            &[]
        } else if edges.is_null() {
            return Err(Failure(SpanradStatus::NullPointer, "edges is null".into()));
        } else {
            unsafe { std::slice::from_raw_parts(edges, 2 * edge_count) }
        };
        let g = Graph::from_edges(n, flat.chunks_exact(2).map(|p| (p[0], p[1]))).map_err(invalid)?;
        write(out, handle(g))
    })
}

/// Builds one member of an extremal family.
///
/// # Safety
/// `params` must be readable; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn spanrad_family_build(
    params: *const SpanradFamilyParams,
    out: *mut *mut SpanradGraph,
) -> SpanradStatus {
    guard(|| {
        let p = unsafe { params.as_ref() }.ok_or_else(|| Failure(SpanradStatus::NullPointer, "params is null".into()))?;
        let spec = match p.family {
            SpanradFamily::TreeExtremal => FamilySpec::TreeExtremal { n: p.n, d: p.d },
            SpanradFamily::TreeProofG1 => FamilySpec::TreeProofG1 { n: p.n, d: p.d, q: p.q },
            SpanradFamily::FkeProofG1 => FamilySpec::FkeProofG1 { n: p.n, k: p.k, s: p.s },
            SpanradFamily::FkeExtremalA => FamilySpec::FkeExtremalA { n: p.n, k: p.k },
            SpanradFamily::FkeExtremalB => FamilySpec::FkeExtremalB {
                n: p.n,
                k: p.k,
                delta: p.delta,
            },
        };
        write(out, handle(spec.build().map_err(invalid)?))
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `g` must be NULL or a live handle from this library, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn spanrad_graph_free(g: *mut SpanradGraph) {
    if !g.is_null() {
        drop(unsafe { Box::from_raw(g) });
    }
}

/// Encodes a graph as a newly allocated graph6 string; release it with
/// `spanrad_string_free`.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn spanrad_graph_to_graph6(g: *const SpanradGraph, out: *mut *mut c_char) -> SpanradStatus {
    guard(|| {
        let s = CString::new(emit_graph6(graph(g)?)).expect("graph6 is printable ASCII");
        write(out, s.into_raw())
    })
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a string from this library, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn spanrad_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// # Safety
/// `g` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn spanrad_graph_order(g: *const SpanradGraph, out: *mut usize) -> SpanradStatus {
    guard(|| write(out, graph(g)?.n()))
}

/// # Safety
/// `g` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn spanrad_graph_edge_count(g: *const SpanradGraph, out: *mut usize) -> SpanradStatus {
    guard(|| write(out, graph(g)?.edge_count()))
}

/// Largest adjacency eigenvalue to absolute tolerance `tol`.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn spanrad_spectral_radius(g: *const SpanradGraph, tol: f64, out: *mut f64) -> SpanradStatus {
    guard(|| {
        if tol.is_nan() || tol <= 0.0 {
            return Err(invalid("tol must be positive"));
        }
        write(out, spectral_radius(graph(g)?, tol))
    })
}

/// `sqrt(2e - n + 1)` and whether the graph is a star or complete (the
/// equality cases). `SPANRAD_STATUS_NOT_APPLICABLE` when `2e - n + 1 < 0`.
///
/// # Safety
/// `g` must be a live handle; `bound` and `equality` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn spanrad_hong_bound(
    g: *const SpanradGraph,
    bound: *mut f64,
    equality: *mut bool,
) -> SpanradStatus {
    guard(|| {
        let h = hong_bound(graph(g)?);
        let value = h.value.ok_or_else(|| Failure(SpanradStatus::NotApplicable, "2e - n + 1 is negative".into()))?;
        write(bound, value)?;
        write(equality, h.equality_flag)
    })
}

/// Spectral radius of the leaf-distance extremal graph on `n` vertices.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn spanrad_threshold_tree(n: usize, d: usize, tol: f64, out: *mut f64) -> SpanradStatus {
    guard(|| write(out, threshold_tree(n, d, tol)?.value))
}

/// Larger spectral radius of the two fractional-extendability extremal graphs.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn spanrad_threshold_fke(
    n: usize,
    k: usize,
    delta: usize,
    tol: f64,
    out: *mut f64,
) -> SpanradStatus {
    guard(|| write(out, threshold_fke(n, k, delta, tol)?.value))
}

/// # Safety
/// `g` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn spanrad_has_fpm(g: *const SpanradGraph, out: *mut bool) -> SpanradStatus {
    guard(|| write(out, has_fpm(graph(g)?).exists))
}

/// Fractional k-extendability by the subset characterization.
/// `SPANRAD_STATUS_NOT_APPLICABLE` when there is no k-matching or `n < 2k+2`.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn spanrad_is_fke(g: *const SpanradGraph, k: usize, out: *mut bool) -> SpanradStatus {
    guard(|| write(out, is_fractional_k_extendable(graph(g)?, k, FkeMode::Sweep)?.extendable))
}

/// # Safety
/// `g` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn spanrad_independence_number(g: *const SpanradGraph, out: *mut usize) -> SpanradStatus {
    guard(|| write(out, independence_number(graph(g)?)))
}

/// Searches for a spanning tree whose leaves are pairwise at distance at
/// least `d`. Exhaustive mode (`construct == false`) refuses graphs with more
/// than `budget` spanning trees by reporting `SPANRAD_TREE_OUTCOME_UNKNOWN`;
/// construct mode never reports `SPANRAD_TREE_OUTCOME_ABSENT`.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn spanrad_tree_leaf_distance(
    g: *const SpanradGraph,
    d: usize,
    construct: bool,
    budget: u64,
    seed: u64,
    out: *mut SpanradTreeOutcome,
) -> SpanradStatus {
    guard(|| {
        let g = graph(g)?;
        let config = TreeSearchConfig {
            budget,
            seed,
            ..TreeSearchConfig::default()
        };
        let mode = if construct { TreeMode::Construct } else { TreeMode::Exhaustive };
        let outcome = match spanning_tree_leafdist(g, d, mode, &config)? {
            TreeSearch::Found { certificate } => {
                certificate.recheck(g)?;
                SpanradTreeOutcome::Found
            }
            TreeSearch::Absent { .. } => SpanradTreeOutcome::Absent,
            TreeSearch::Unknown { .. } => SpanradTreeOutcome::Unknown,
        };
        write(out, outcome)
    })
}
