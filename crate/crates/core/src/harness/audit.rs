//! Numeric audits of the inequality chains behind both thresholds.
//!
//! Each audit evaluates every step of a chain at one parameter point and
//! records both sides of each comparison. Polynomial identities and integer
//! bounds are checked in exact rationals; steps involving a spectral radius
//! or a cubic root are checked in floating point.

use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use super::{threshold_tree, HarnessError, AUDIT_TOL};
use crate::family::FamilySpec;
use crate::spectral::{
    cubic_largest_root, eigenvalues_sym, phi_b1, phi_b2, phi_b3, spectral_radius, Bracket, CubicPoly, SymMatrix,
    DEFAULT_TOL,
};

pub(super) type Q = Ratio<i64>;

pub(super) fn q(x: i64) -> Q {
    Q::from_integer(x)
}

pub(super) fn frac(a: i64, b: i64) -> Q {
    Q::new(a, b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        })
    }
}

/// An exact rational or a floating-point value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Quantity {
    Exact(Q),
    Float(f64),
}

impl Quantity {
    pub fn as_f64(&self) -> f64 {
        match *self {
            Quantity::Exact(r) => *r.numer() as f64 / *r.denom() as f64,
            Quantity::Float(x) => x,
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Exact(r) => write!(f, "{r}"),
            Quantity::Float(x) => write!(f, "{x}"),
        }
    }
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Quantity::Exact(r) => s.serialize_str(&r.to_string()),
            Quantity::Float(x) => s.serialize_f64(*x),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub label: String,
    pub lhs: Quantity,
    pub relation: Relation,
    pub rhs: Quantity,
    pub holds: bool,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} {} {}", self.label, self.lhs, self.relation, self.rhs)
    }
}

fn exact(label: impl Into<String>, lhs: Q, relation: Relation, rhs: Q) -> Check {
    let holds = match relation {
        Relation::Lt => lhs < rhs,
        Relation::Le => lhs <= rhs,
        Relation::Eq => lhs == rhs,
        Relation::Ge => lhs >= rhs,
        Relation::Gt => lhs > rhs,
    };
    Check {
        label: label.into(),
        lhs: Quantity::Exact(lhs),
        relation,
        rhs: Quantity::Exact(rhs),
        holds,
    }
}

/// Non-strict relations and equality get `tol` slack; strict ones get none.
fn float(label: impl Into<String>, lhs: f64, relation: Relation, rhs: f64, tol: f64) -> Check {
    let holds = match relation {
        Relation::Lt => lhs < rhs,
        Relation::Le => lhs <= rhs + tol,
        Relation::Eq => (lhs - rhs).abs() <= tol,
        Relation::Ge => lhs + tol >= rhs,
        Relation::Gt => lhs > rhs,
    };
    Check {
        label: label.into(),
        lhs: Quantity::Float(lhs),
        relation,
        rhs: Quantity::Float(rhs),
        holds,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditPoint {
    pub audit: &'static str,
    pub params: Value,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl AuditPoint {
    fn new(audit: &'static str, params: Value, checks: Vec<Check>) -> Self {
        Self {
            audit,
            params,
            passed: checks.iter().all(|c| c.holds),
            checks,
            notes: Vec::new(),
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

fn int(x: usize) -> i64 {
    i64::try_from(x).expect("parameter fits in i64")
}

fn require(cond: bool, what: &str) -> Result<(), HarnessError> {
    if cond {
        Ok(())
    } else {
        Err(HarnessError::Parameters(what.into()))
    }
}

fn coefficient_checks(label: &str, diff: [i64; 3], factor: i64, quad: [i64; 3]) -> Vec<Check> {
    ["x^2", "x", "1"]
        .iter()
        .enumerate()
        .map(|(i, term)| {
            exact(
                format!("{label}: {term} coefficient"),
                q(diff[i]),
                Relation::Eq,
                q(factor * quad[i]),
            )
        })
        .collect()
}

fn eval_quadratic(c: [i64; 3], x: f64) -> f64 {
    (c[0] as f64 * x + c[1] as f64) * x + c[2] as f64
}

pub(super) fn eval_quadratic_exact(c: [i64; 3], x: Q) -> Q {
    (q(c[0]) * x + q(c[1])) * x + q(c[2])
}

/// `(d-1)x² - (2n-2)x + n² - 2n + 1`, the edge-count bound of the
/// `q`-isolated cover graph after rounding `⌈q(d-2)/2⌉` up to `(q(d-2)+1)/2`.
pub fn edge_quadratic(n: usize, d: usize, x: Q) -> Q {
    let (n, d) = (int(n), int(d));
    q(d - 1) * x * x - q(2 * n - 2) * x + q(n * n - 2 * n + 1)
}

/// The edge-count quadratic peaks at `x = 2` on `[2, 2n/d]` and stays below
/// `(n-2)²` there.
pub fn audit_edge_quadratic(n: usize, d: usize) -> Result<AuditPoint, HarnessError> {
    require(d >= 3 && n >= d * d, "n >= d^2 >= 9")?;
    let psi = |x: Q| edge_quadratic(n, d, x);
    let (ni, di) = (int(n), int(d));
    let at2 = psi(q(2));
    let top = 2 * n / d;
    let (argmax, max) = (2..=top)
        .map(|x| (x, psi(q(int(x)))))
        .fold((2, at2), |best, cur| if cur.1 > best.1 { cur } else { best });
    let diff = psi(frac(2 * ni, di)) - at2;
    let closed = -frac(4, di * di) * q(ni - di) * q(ni - di * di);
    let checks = vec![
        exact(format!("max over integers 2..={top} (attained at {argmax})"), max, Relation::Eq, at2),
        exact("value at 2n/d minus value at 2", diff, Relation::Eq, closed),
        exact("value at 2n/d minus value at 2", diff, Relation::Le, q(0)),
        exact("value at 2", at2, Relation::Eq, q((ni - 2) * (ni - 2) - 2 * ni + 4 * di - 3)),
        exact(
            "value at 2 with n >= d^2",
            at2,
            Relation::Le,
            q((ni - 2) * (ni - 2) - 2 * (di - 1) * (di - 1) - 1),
        ),
        exact("value at 2 against (n-2)^2", at2, Relation::Lt, q((ni - 2) * (ni - 2))),
        float("sqrt of value at 2", (*at2.numer() as f64).sqrt(), Relation::Lt, (ni - 2) as f64, 0.0),
    ];
    Ok(AuditPoint::new("edge-quadratic", json!({"n": n, "d": d}), checks))
}

/// `ρ(G1) ≤ √(2e(G1)-n+1) ≤ √ψ(q) ≤ √ψ(2) < n-2 < ρ(threshold graph)` for
/// the cover graph `K_{⌈q(d-2)/2⌉} ∨ (K_{n-⌈q(d-2)/2⌉-q} ∪ q K_1)`.
pub fn audit_edge_chain(n: usize, d: usize, qv: usize) -> Result<AuditPoint, HarnessError> {
    require(d >= 3 && n >= d * d, "d >= 3 and n >= d^2")?;
    require(qv >= 2 && qv * d <= 2 * n, "2 <= q <= 2n/d")?;
    let g1 = FamilySpec::TreeProofG1 { n, d, q: qv }.build()?;
    let (ni, qi) = (int(n), int(qv));
    let hub = int((qv * (d - 2)).div_ceil(2));
    let e = int(g1.edge_count());
    let radicand = 2 * e - ni + 1;
    let rho_g1 = spectral_radius(&g1, DEFAULT_TOL);
    let threshold = threshold_tree(n, d, DEFAULT_TOL)?.value;
    let psi_q = edge_quadratic(n, d, q(qi));
    let psi_2 = edge_quadratic(n, d, q(2));
    let checks = vec![
        exact("edge count", q(e), Relation::Eq, q((ni - qi) * (ni - qi - 1) / 2 + qi * hub)),
        float("spectral radius against edge bound", rho_g1, Relation::Le, (radicand as f64).sqrt(), AUDIT_TOL),
        exact("2e - n + 1 against quadratic at q", q(radicand), Relation::Le, psi_q),
        exact("quadratic at q against quadratic at 2", psi_q, Relation::Le, psi_2),
        exact("quadratic at 2 against (n-2)^2", psi_2, Relation::Lt, q((ni - 2) * (ni - 2))),
        float("n - 2 against threshold", (ni - 2) as f64, Relation::Lt, threshold, 0.0),
        float("spectral radius against threshold", rho_g1, Relation::Lt, threshold, 0.0),
    ];
    Ok(AuditPoint::new("edge-chain", json!({"n": n, "d": d, "q": qv}), checks))
}

fn largest(p: &CubicPoly, n: usize) -> Result<f64, HarnessError> {
    Ok(cubic_largest_root(p, Bracket::Auto { n }, DEFAULT_TOL)?)
}

/// `f(x) = x² - sx + (s+1)n - 2s² + 2ks - 4s - 2k - 2`.
pub(super) fn small_degree_quadratic(n: i64, k: i64, s: i64) -> [i64; 3] {
    [1, -s, (s + 1) * n - 2 * s * s + 2 * k * s - 4 * s - 2 * k - 2]
}

/// Cover graph with hub `s ≥ 2k+1` against `K_{2k} ∨ (K_{n-2k-1} ∪ K_1)`:
/// `φ_B1 - φ_B2 = (s-2k) f`, `f` is positive at the larger graph's radius,
/// so the cover graph has the smaller radius.
pub fn audit_small_degree(n: usize, k: usize, s: usize) -> Result<AuditPoint, HarnessError> {
    require(k >= 1 && s > 2 * k, "k >= 1 and s >= 2k+1")?;
    require(n >= 2 * k + 9 && n + 2 * k > 2 * s, "n >= max(2k+9, 2s-2k+1)")?;
    let (ni, ki, si) = (int(n), int(k), int(s));
    let p1 = phi_b1(n, k, s);
    let p2 = phi_b2(n, k);
    let f = small_degree_quadratic(ni, ki, si);
    let mut checks = coefficient_checks("cover minus extremal polynomial", p1.minus(&p2), si - 2 * ki, f);
    let rho2 = largest(&p2, n)?;
    let rho1 = largest(&p1, n)?;
    let f_edge = eval_quadratic_exact(f, q(ni - 2));
    checks.push(float("extremal radius against n - 2", rho2, Relation::Gt, (ni - 2) as f64, 0.0));
    checks.push(exact("vertex of f against n - 2", frac(si, 2), Relation::Lt, q(ni - 2)));
    checks.push(exact(
        "f(n-2)",
        f_edge,
        Relation::Eq,
        q(ni * ni - 3 * ni - 2 * si * si + 2 * ki * si - 2 * si - 2 * ki + 2),
    ));
    let mut notes = Vec::new();
    if ni == 2 * si - 2 * ki + 1 {
        let closed = q(2 * si * si - (6 * ki + 4) * si + 4 * ki * ki);
        checks.push(exact("f(n-2) at n = 2s-2k+1", f_edge, Relation::Eq, closed));
        checks.push(exact("s at n = 2s-2k+1", q(si), Relation::Ge, q(2 * ki + 4)));
        checks.push(exact("f(n-2) at n = 2s-2k+1", f_edge, Relation::Ge, q(16)));
    } else if si >= 2 * ki + 2 {
        let bound = q(2 * si * si - 6 * ki * si + 4 * ki * ki - 4 * ki);
        checks.push(exact("f(n-2) with n >= 2s-2k+2", f_edge, Relation::Ge, bound));
        checks.push(exact("bound with s >= 2k+2", bound, Relation::Ge, q(8)));
    } else {
        let floor = eval_quadratic_exact(small_degree_quadratic(2 * ki + 9, ki, si), q(2 * ki + 7));
        checks.push(exact("f(n-2) with s = 2k+1", f_edge, Relation::Ge, floor));
        checks.push(exact("f(n-2) at n = 2k+9, s = 2k+1", floor, Relation::Eq, q(18 * ki + 52)));
        notes.push(format!("boundary value at n = 2k+9, s = 2k+1 is 18k+52 = {}", 18 * ki + 52));
    }
    let f_rho = eval_quadratic(f, rho2);
    checks.push(float("f at extremal radius against f(n-2)", f_rho, Relation::Ge, f_edge.to_integer() as f64, AUDIT_TOL));
    checks.push(float("f at extremal radius", f_rho, Relation::Gt, 0.0, 0.0));
    let lhs = p1.eval(rho2);
    let rhs = (si - 2 * ki) as f64 * f_rho;
    checks.push(float("cover polynomial at extremal radius", lhs, Relation::Eq, rhs, AUDIT_TOL * rhs.abs().max(1.0)));
    checks.push(float("cover polynomial at extremal radius", lhs, Relation::Gt, 0.0, 0.0));
    let roots = p1.real_roots(DEFAULT_TOL);
    if let Some(&mid) = roots.get(1) {
        checks.push(float("middle root of cover polynomial against n - 2", mid, Relation::Le, (ni - 2) as f64, AUDIT_TOL));
    }
    let g1 = FamilySpec::FkeProofG1 { n, k, s }.build()?;
    checks.push(float("cover radius by eigensolver", spectral_radius(&g1, DEFAULT_TOL), Relation::Eq, rho1, AUDIT_TOL));
    checks.push(float("cover radius against extremal radius", rho1, Relation::Lt, rho2, 0.0));
    let mut point = AuditPoint::new("small-degree", json!({"n": n, "k": k, "s": s}), checks);
    point.notes = notes;
    Ok(point)
}

/// `g(x)` with `φ_B1 - φ_B3 = (s-δ) g`.
fn large_degree_quadratic(n: i64, k: i64, d: i64, s: i64) -> [i64; 3] {
    [
        1,
        -(s + d - 2 * k),
        -2 * s * s + n * s + 6 * k * s - 2 * d * s - 4 * s - 2 * k * n + d * n + n - 2 * d * d + 6 * k * d - 4 * d
            - 4 * k * k
            + 6 * k
            - 2,
    ]
}

/// `g(n-δ+k-2)` in closed form.
pub(super) fn large_degree_floor(n: Q, k: Q, d: Q, s: Q) -> Q {
    n * n - (q(2) * d - q(2) * k + q(3)) * n - q(2) * s * s + (q(5) * k - d - q(2)) * s + k * d + q(2) * d - k * k
        - q(2) * k
        + q(2)
}

/// `h(s) = 2s² - (5δ-k+4)s + 5kδ - k² + 2k`.
pub(super) fn large_degree_h(k: Q, d: Q, s: Q) -> Q {
    q(2) * s * s - (q(5) * d - k + q(4)) * s + q(5) * k * d - k * k + q(2) * k
}

/// Cover graph with hub `s ≥ δ+1` against `K_δ ∨ (K_{n-2δ+2k-1} ∪ (δ-2k+1) K_1)`
/// when `δ ≥ 2k+1`: `φ_B1 - φ_B3 = (s-δ) g`, with `g` and `g'` positive at
/// the larger graph's radius in both ranges of `s`.
pub fn audit_large_degree(n: usize, k: usize, delta: usize, s: usize) -> Result<AuditPoint, HarnessError> {
    require(k >= 1 && delta > 2 * k, "k >= 1 and delta >= 2k+1")?;
    require(s > delta, "s >= delta+1")?;
    require(n + 2 * k > 2 * s && n > 5 * delta, "n >= max(2s-2k+1, 5delta+1)")?;
    let (ni, ki, di, si) = (int(n), int(k), int(delta), int(s));
    let (nq, kq, dq, sq) = (q(ni), q(ki), q(di), q(si));
    let p1 = phi_b1(n, k, s);
    let p3 = phi_b3(n, k, delta);
    let g = large_degree_quadratic(ni, ki, di, si);
    let mut checks = coefficient_checks("cover minus extremal polynomial", p1.minus(&p3), si - di, g);
    let rho3 = largest(&p3, n)?;
    let rho1 = largest(&p1, n)?;
    let clique_radius = ni - di + ki - 2;
    checks.push(float("extremal radius against n - delta + k - 2", rho3, Relation::Gt, clique_radius as f64, 0.0));
    checks.push(exact(
        "vertex of g against n - delta + k - 2",
        frac(si + di - 2 * ki, 2),
        Relation::Lt,
        q(clique_radius),
    ));
    let floor = eval_quadratic_exact(g, q(clique_radius));
    checks.push(exact("g(n-delta+k-2)", floor, Relation::Eq, large_degree_floor(nq, kq, dq, sq)));
    let g_rho = eval_quadratic(g, rho3);
    checks.push(float("g at extremal radius against g(n-delta+k-2)", g_rho, Relation::Ge, floor.to_integer() as f64, AUDIT_TOL));
    let pivot = q(5) * dq / q(2) + q(1);
    let derivative_floor = q(2 * ni - 3 * di - si + 4 * ki - 4);
    if sq >= pivot {
        let h_s = large_degree_h(kq, dq, sq);
        let at_min_n = q(2 * si - 2 * ki + 1);
        checks.push(exact("g floor at n = 2s-2k+1", large_degree_floor(at_min_n, kq, dq, sq), Relation::Eq, h_s));
        checks.push(exact("g floor against h(s)", floor, Relation::Ge, h_s));
        checks.push(exact("vertex of h against 5delta/2+1", (q(5) * dq - kq + q(4)) / q(4), Relation::Lt, pivot));
        let h_pivot = large_degree_h(kq, dq, pivot);
        checks.push(exact("h(s) against h(5delta/2+1)", h_s, Relation::Ge, h_pivot));
        checks.push(exact(
            "h(5delta/2+1)",
            h_pivot,
            Relation::Eq,
            (frac(15, 2) * kq - q(5)) * dq - kq * kq + q(3) * kq - q(2),
        ));
        let weak = frac(5, 2) * kq * dq - kq * kq + q(3) * kq - q(2);
        checks.push(exact("h(5delta/2+1) with k >= 1", h_pivot, Relation::Ge, weak));
        let constant = q(4) * kq * kq + frac(11, 2) * kq - q(2);
        checks.push(exact("bound with delta >= 2k+1", weak, Relation::Ge, constant));
        checks.push(exact("4k^2 + 11k/2 - 2", constant, Relation::Gt, q(0)));
        checks.push(exact("derivative floor", derivative_floor, Relation::Ge, q(3 * si - 3 * di - 2)));
        checks.push(exact("3s - 3delta - 2", q(3 * si - 3 * di - 2), Relation::Gt, q(0)));
    } else {
        checks.push(exact("vertex of g floor in s against delta + 1", (q(5) * kq - dq - q(2)) / q(4), Relation::Lt, dq + q(1)));
        let m = |nn: Q| {
            nn * nn - (q(2) * dq - q(2) * kq + q(3)) * nn - q(15) * dq * dq + frac(27, 2) * kq * dq - q(14) * dq
                - kq * kq
                + q(3) * kq
                - q(2)
        };
        checks.push(exact("g floor at s = 5delta/2+1", large_degree_floor(nq, kq, dq, pivot), Relation::Eq, m(nq)));
        checks.push(exact("g floor against s = 5delta/2+1", floor, Relation::Gt, m(nq)));
        let at_min_n = m(q(5 * di + 1));
        checks.push(exact("g floor at s = 5delta/2+1 against n = 5delta+1", m(nq), Relation::Ge, at_min_n));
        checks.push(exact(
            "g floor at n = 5delta+1",
            at_min_n,
            Relation::Eq,
            (frac(47, 2) * kq - q(21)) * dq - kq * kq + q(5) * kq - q(4),
        ));
        let constant = q(46) * kq * kq - frac(27, 2) * kq - q(25);
        checks.push(exact("bound with delta >= 2k+1", at_min_n, Relation::Ge, constant));
        checks.push(exact("46k^2 - 27k/2 - 25", constant, Relation::Gt, q(0)));
        checks.push(exact("derivative floor", derivative_floor, Relation::Ge, q(7 * di - si + 4 * ki - 2)));
        checks.push(exact("7delta - s + 4k - 2", q(7 * di - si + 4 * ki - 2), Relation::Gt, q(0)));
    }
    checks.push(float("g at extremal radius", g_rho, Relation::Gt, 0.0, 0.0));
    checks.push(float("g' at extremal radius", 2.0 * rho3 - (si + di - 2 * ki) as f64, Relation::Gt, 0.0, 0.0));
    let lhs = p1.eval(rho3);
    let rhs = (si - di) as f64 * g_rho;
    checks.push(float("cover polynomial at extremal radius", lhs, Relation::Eq, rhs, AUDIT_TOL * rhs.abs().max(1.0)));
    checks.push(float("cover polynomial at extremal radius", lhs, Relation::Gt, 0.0, 0.0));
    checks.push(float("cover radius against extremal radius", rho1, Relation::Lt, rho3, 0.0));
    Ok(AuditPoint::new(
        "large-degree",
        json!({"n": n, "k": k, "delta": delta, "s": s}),
        checks,
    ))
}

/// The middle eigenvalue of the cover graph's quotient is at most
/// `n-2s+2k-2`, the top of its lower-right `2×2` block.
pub fn audit_middle_root(n: usize, k: usize, s: usize) -> Result<AuditPoint, HarnessError> {
    require(k >= 1 && s >= 2 * k, "k >= 1 and s >= 2k")?;
    require(n + 2 * k > 2 * s, "n >= 2s-2k+1")?;
    let (ni, ki, si) = (int(n), int(k), int(s));
    let p1 = phi_b1(n, k, s);
    let roots = p1.real_roots(DEFAULT_TOL);
    let bound = ni - 2 * si + 2 * ki - 2;
    let mut checks = vec![exact("real roots", q(int(roots.len())), Relation::Eq, q(3))];
    if roots.len() == 3 {
        checks.push(float("middle root", roots[1], Relation::Le, bound as f64, 1e-9));
        let mid = ni - 2 * si + 2 * ki - 1;
        if mid > 0 {
            let (a, b) = (((si * mid) as f64).sqrt(), ((si * (si - 2 * ki + 1)) as f64).sqrt());
            let sym = SymMatrix::from_rows(&[
                vec![(si - 1) as f64, a, b],
                vec![a, (mid - 1) as f64, 0.0],
                vec![b, 0.0, 0.0],
            ])?;
            let eig = eigenvalues_sym(&sym, 1e-14);
            for (i, (&e, &r)) in eig.iter().zip(&roots).enumerate() {
                checks.push(float(format!("eigenvalue {i} against root"), e, Relation::Eq, r, AUDIT_TOL));
            }
        }
    }
    checks.push(exact("bound against n - 2", q(bound), Relation::Lt, q(ni - 2)));
    Ok(AuditPoint::new("middle-root", json!({"n": n, "k": k, "s": s}), checks))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditSummary {
    pub audit: String,
    pub points: usize,
    pub passed: bool,
    pub failures: Vec<AuditPoint>,
}

/// Runs `f` over `grid` in parallel, keeping failures in grid order.
pub fn summarize<P, F>(audit: &str, grid: Vec<P>, f: F) -> Result<AuditSummary, HarnessError>
where
    P: Send + Sync,
    F: Fn(&P) -> Result<AuditPoint, HarnessError> + Sync,
{
    let points: Vec<AuditPoint> = grid.par_iter().map(&f).collect::<Result<_, _>>()?;
    let failures: Vec<AuditPoint> = points.iter().filter(|p| !p.passed).cloned().collect();
    Ok(AuditSummary {
        audit: audit.into(),
        points: points.len(),
        passed: failures.is_empty(),
        failures,
    })
}
