use std::ffi::{CStr, CString};
use std::ptr;

use spanrad_ffi::*;

fn from_graph6(text: &str) -> *mut SpanradGraph {
    let c = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { spanrad_graph_from_graph6(c.as_ptr(), &mut g) }, SpanradStatus::Ok);
    g
}

fn family(p: SpanradFamilyParams) -> *mut SpanradGraph {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { spanrad_family_build(&p, &mut g) }, SpanradStatus::Ok);
    g
}

fn params(family: SpanradFamily, n: usize) -> SpanradFamilyParams {
    SpanradFamilyParams {
        family,
        n,
        d: 0,
        q: 0,
        k: 0,
        s: 0,
        delta: 0,
    }
}

fn last_error() -> String {
    let p = spanrad_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn graph6_round_trip() {
    let g = from_graph6("J~~~~~~~}??\n");
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { spanrad_graph_to_graph6(g, &mut s) }, SpanradStatus::Ok);
    assert_eq!(unsafe { CStr::from_ptr(s) }.to_str().unwrap(), "J~~~~~~~}??");
    let (mut n, mut e) = (0, 0);
    unsafe {
        assert_eq!(spanrad_graph_order(g, &mut n), SpanradStatus::Ok);
        assert_eq!(spanrad_graph_edge_count(g, &mut e), SpanradStatus::Ok);
        spanrad_string_free(s);
        spanrad_graph_free(g);
    }
    // K2 v (K8 u K1): C(11,2) less the 8 missing pendant edges.
    assert_eq!((n, e), (11, 47));
}

#[test]
fn errors_are_reported() {
    let bad = CString::new("J~~").unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { spanrad_graph_from_graph6(bad.as_ptr(), &mut g) }, SpanradStatus::Parse);
    assert!(g.is_null());
    assert!(!last_error().is_empty());

    let mut x = 0.0;
    assert_eq!(unsafe { spanrad_spectral_radius(ptr::null(), 1e-10, &mut x) }, SpanradStatus::NullPointer);
    assert_eq!(unsafe { spanrad_graph_from_graph6(ptr::null(), &mut g) }, SpanradStatus::NullPointer);

    let mut p = params(SpanradFamily::TreeExtremal, 3);
    p.d = 8;
    assert_eq!(unsafe { spanrad_family_build(&p, &mut g) }, SpanradStatus::InvalidArgument);

    let edges = [0usize, 0];
    assert_eq!(unsafe { spanrad_graph_from_edges(2, edges.as_ptr(), 1, &mut g) }, SpanradStatus::InvalidArgument);

    // A successful call clears the message.
    let ok = from_graph6("A_");
    assert!(spanrad_last_error().is_null());
    unsafe { spanrad_graph_free(ok) };
}

#[test]
fn spectral_and_thresholds() {
    let mut p = params(SpanradFamily::FkeExtremalA, 11);
    p.k = 1;
    let a = family(p);
    let (mut rho, mut t) = (0.0, 0.0);
    unsafe {
        assert_eq!(spanrad_spectral_radius(a, 1e-12, &mut rho), SpanradStatus::Ok);
        assert_eq!(spanrad_threshold_fke(11, 1, 2, 1e-12, &mut t), SpanradStatus::Ok);
    }
    assert!((rho - t).abs() < 1e-8);

    let mut p = params(SpanradFamily::TreeExtremal, 16);
    p.d = 4;
    let tree = family(p);
    unsafe {
        assert_eq!(spanrad_spectral_radius(tree, 1e-12, &mut rho), SpanradStatus::Ok);
        assert_eq!(spanrad_threshold_tree(16, 4, 1e-12, &mut t), SpanradStatus::Ok);
    }
    assert!((rho - t).abs() < 1e-8);

    let k5 = from_graph6("D~{");
    let (mut bound, mut eq) = (0.0, false);
    unsafe {
        assert_eq!(spanrad_hong_bound(k5, &mut bound, &mut eq), SpanradStatus::Ok);
        assert_eq!(spanrad_spectral_radius(k5, 1e-12, &mut rho), SpanradStatus::Ok);
    }
    assert!(eq && (bound - 4.0).abs() < 1e-12 && (rho - 4.0).abs() < 1e-9);

    let mut split = ptr::null_mut();
    assert_eq!(unsafe { spanrad_graph_from_edges(3, ptr::null(), 0, &mut split) }, SpanradStatus::Ok);
    assert_eq!(unsafe { spanrad_hong_bound(split, &mut bound, &mut eq) }, SpanradStatus::NotApplicable);
    unsafe {
        for g in [a, tree, k5, split] {
            spanrad_graph_free(g);
        }
    }
}

#[test]
fn combinatorial_oracles() {
    let mut p = params(SpanradFamily::FkeExtremalA, 11);
    p.k = 1;
    let a = family(p);
    let (mut fpm, mut fke, mut alpha) = (false, true, 0);
    unsafe {
        assert_eq!(spanrad_has_fpm(a, &mut fpm), SpanradStatus::Ok);
        assert_eq!(spanrad_is_fke(a, 1, &mut fke), SpanradStatus::Ok);
        assert_eq!(spanrad_independence_number(a, &mut alpha), SpanradStatus::Ok);
    }
    assert!(fpm && !fke);
    assert_eq!(alpha, 2);

    let empty = from_graph6("E???");
    assert_eq!(unsafe { spanrad_is_fke(empty, 1, &mut fke) }, SpanradStatus::NotApplicable);

    let mut outcome = SpanradTreeOutcome::Absent;
    unsafe {
        assert_eq!(spanrad_tree_leaf_distance(a, 4, true, 0, 1, &mut outcome), SpanradStatus::Ok);
        assert_eq!(outcome, SpanradTreeOutcome::Found);
        assert_eq!(spanrad_tree_leaf_distance(a, 4, false, 10, 1, &mut outcome), SpanradStatus::Ok);
        assert_eq!(outcome, SpanradTreeOutcome::Unknown);
    }
    // P4's only spanning tree has its leaves at distance 3.
    let p4 = from_graph6("Ch");
    unsafe {
        assert_eq!(spanrad_tree_leaf_distance(p4, 4, false, 100, 0, &mut outcome), SpanradStatus::Ok);
        assert_eq!(outcome, SpanradTreeOutcome::Absent);
        for g in [a, empty, p4] {
            spanrad_graph_free(g);
        }
    }
}

#[test]
fn header_is_valid_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/spanrad.h");
    let text = std::fs::read_to_string(header).unwrap();
    for symbol in ["spanrad_graph_from_graph6", "spanrad_last_error", "SPANRAD_STATUS_PANIC", "SpanradGraph"] {
        assert!(text.contains(symbol), "{symbol}");
    }
    let Ok(status) = std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-x", "c", header])
        .status()
    else {
        eprintln!("no C compiler; skipping syntax check");
        return;
    };
    assert!(status.success());
}
