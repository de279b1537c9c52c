//! Monic integer cubics `x³ + c2·x² + c1·x + c0`, the closed-form quotient
//! polynomials of the fractional-extendability families, and a largest-root
//! solver.
//!
//! Root structure is decided from the exact integer discriminant, so double
//! roots are returned exactly and bisection always runs on a monotone piece.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::SpectralError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CubicPoly {
    pub c2: i64,
    pub c1: i64,
    pub c0: i64,
}

impl std::fmt::Display for CubicPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "x^3")?;
        for (c, tail) in [(self.c2, "x^2"), (self.c1, "x"), (self.c0, "")] {
            if c != 0 {
                let sign = if c < 0 { '-' } else { '+' };
                let mag = c.unsigned_abs();
                if mag == 1 && !tail.is_empty() {
                    write!(f, " {sign} {tail}")?;
                } else {
                    write!(f, " {sign} {mag}{tail}")?;
                }
            }
        }
        Ok(())
    }
}

impl CubicPoly {
    pub fn new(c2: i64, c1: i64, c0: i64) -> Self {
        Self { c2, c1, c0 }
    }

    /// `det(xI - m)` computed exactly.
    pub fn char_poly(m: &[[i64; 3]; 3]) -> Self {
        let tr = m[0][0] + m[1][1] + m[2][2];
        let minors = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2]
            - m[0][2] * m[2][0]
            + m[1][1] * m[2][2]
            - m[1][2] * m[2][1];
        let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        Self::new(-tr, minors, -det)
    }

    pub fn eval(&self, x: f64) -> f64 {
        ((x + self.c2 as f64) * x + self.c1 as f64) * x + self.c0 as f64
    }

    pub fn derivative(&self, x: f64) -> f64 {
        (3.0 * x + 2.0 * self.c2 as f64) * x + self.c1 as f64
    }

    pub fn eval_exact(&self, x: &BigRational) -> BigRational {
        let c = |v: i64| BigRational::from_integer(BigInt::from(v));
        ((x + c(self.c2)) * x + c(self.c1)) * x + c(self.c0)
    }

    /// Exact value at a decimal point, useful for sign checks like `p(9.1)`.
    pub fn eval_at_ratio(&self, num: i64, den: i64) -> BigRational {
        self.eval_exact(&BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Coefficientwise `self - other`, as `[x², x, 1]` coefficients.
    pub fn minus(&self, other: &CubicPoly) -> [i64; 3] {
        [self.c2 - other.c2, self.c1 - other.c1, self.c0 - other.c0]
    }

    /// `18bcd - 4b³d + b²c² - 4c³ - 27d²`.
    pub fn discriminant(&self) -> i128 {
        let (b, c, d) = (self.c2 as i128, self.c1 as i128, self.c0 as i128);
        18 * b * c * d - 4 * b * b * b * d + b * b * c * c - 4 * c * c * c - 27 * d * d
    }

    fn cauchy_bound(&self) -> f64 {
        1.0 + [self.c2, self.c1, self.c0]
            .iter()
            .map(|c| c.unsigned_abs() as f64)
            .fold(0.0, f64::max)
    }

    /// Critical points `a < b` when the derivative has two distinct roots.
    fn critical_points(&self) -> Option<(f64, f64)> {
        let d = (self.c2 as i128).pow(2) - 3 * self.c1 as i128;
        if d <= 0 {
            return None;
        }
        let r = (d as f64).sqrt();
        Some(((-self.c2 as f64 - r) / 3.0, (-self.c2 as f64 + r) / 3.0))
    }

    /// All real roots in non-increasing order, repeated by multiplicity.
    pub fn real_roots(&self, tol: f64) -> Vec<f64> {
        let disc = self.discriminant();
        if disc == 0 {
            return self.repeated_roots();
        }
        let big = self.cauchy_bound();
        match self.critical_points() {
            Some((a, b)) if disc > 0 => vec![
                bisect_increasing(self, b, big, tol),
                bisect_decreasing(self, a, b, tol),
                bisect_increasing(self, -big, a, tol),
            ],
            Some((a, b)) => {
                // One real root; p(a)·p(b) = -disc/27 keeps both away from 0.
                let pa = self.eval(a);
                let pb = self.eval(b);
                let above = if pa.abs() >= pb.abs() { pa > 0.0 } else { pb > 0.0 };
                if above {
                    vec![bisect_increasing(self, -big, a, tol)]
                } else {
                    vec![bisect_increasing(self, b, big, tol)]
                }
            }
            None => vec![bisect_increasing(self, -big, big, tol)],
        }
    }

    /// Roots when the discriminant vanishes. A monic integer cubic with a
    /// repeated root has integer roots, given here in closed form.
    fn repeated_roots(&self) -> Vec<f64> {
        let (b, c, d) = (self.c2 as i128, self.c1 as i128, self.c0 as i128);
        let den = b * b - 3 * c;
        let mut roots = if den == 0 {
            let r = -(self.c2 as f64) / 3.0;
            vec![r, r, r]
        } else {
            let double = (9 * d - b * c) as f64 / (2 * den) as f64;
            let simple = (4 * b * c - 9 * d - b * b * b) as f64 / den as f64;
            vec![double, double, simple]
        };
        roots.sort_by(|x, y| y.total_cmp(x));
        roots
    }

    /// Largest real root, no bracket needed.
    pub fn largest_root(&self, tol: f64) -> f64 {
        self.real_roots(tol)[0]
    }
}

fn bisect_increasing(p: &CubicPoly, lo: f64, hi: f64, tol: f64) -> f64 {
    bisect(p, lo, hi, tol, 1.0)
}

fn bisect_decreasing(p: &CubicPoly, lo: f64, hi: f64, tol: f64) -> f64 {
    bisect(p, lo, hi, tol, -1.0)
}

/// Root of `p` on `[lo, hi]` where `direction·p` is increasing, by
/// bisection down to `tol` followed by bracket-guarded Newton steps.
fn bisect(p: &CubicPoly, mut lo: f64, mut hi: f64, tol: f64, direction: f64) -> f64 {
    let f = |x: f64| direction * p.eval(x);
    for _ in 0..400 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..4 {
        let d = p.derivative(x);
        if d == 0.0 {
            break;
        }
        let next = x - p.eval(x) / d;
        if !(lo..=hi).contains(&next) || p.eval(next).abs() >= p.eval(x).abs() {
            break;
        }
        x = next;
    }
    x
}

/// Search interval for [`cubic_largest_root`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bracket {
    /// Caller-supplied; must show a sign change and contain the largest root.
    Given { lo: f64, hi: f64 },
    /// `[n-2, n-1]`, widened geometrically until it brackets the largest root.
    Auto { n: usize },
}

/// Largest real root of `p` inside the bracket, to within `tol`.
pub fn cubic_largest_root(p: &CubicPoly, bracket: Bracket, tol: f64) -> Result<f64, SpectralError> {
    let root = p.largest_root(tol);
    let brackets = |lo: f64, hi: f64| p.eval(lo) <= 0.0 && p.eval(hi) >= 0.0;
    match bracket {
        Bracket::Given { lo, hi } => {
            if lo.partial_cmp(&hi).is_none_or(|o| o.is_gt()) || p.eval(lo) * p.eval(hi) > 0.0 {
                return Err(SpectralError::Bracket(format!(
                    "no sign change of {p} on [{lo}, {hi}]"
                )));
            }
            if root < lo - tol || root > hi + tol {
                return Err(SpectralError::Bracket(format!(
                    "largest root {root} of {p} lies outside [{lo}, {hi}]"
                )));
            }
            Ok(root)
        }
        Bracket::Auto { n } => {
            let (mut lo, mut hi) = (n as f64 - 2.0, n as f64 - 1.0);
            let mut width = 1.0;
            for _ in 0..64 {
                if brackets(lo, hi) && lo <= root && root <= hi {
                    return Ok(root);
                }
                lo -= width;
                hi += width;
                width *= 2.0;
            }
            Err(SpectralError::Bracket(format!(
                "automatic bracket around [{}, {}] never isolated the largest root of {p}",
                n as f64 - 2.0,
                n as f64 - 1.0
            )))
        }
    }
}

fn int(x: usize) -> i64 {
    i64::try_from(x).expect("parameter fits in i64")
}

/// Quotient matrix of `K_s ∨ (K_{n-2s+2k-1} ∪ (s-2k+1) K_1)` on its three
/// parts. The middle row is formal when that clique is empty.
pub fn join_family_matrix(n: usize, k: usize, s: usize) -> [[i64; 3]; 3] {
    let (n, k, s) = (int(n), int(k), int(s));
    let mid = n - 2 * s + 2 * k - 1;
    let iso = s - 2 * k + 1;
    [[s - 1, mid, iso], [s, mid - 1, 0], [s, 0, 0]]
}

/// `x³ + (s-2k+3-n)x² + (2ks-s²-2k+2-n)x + s(s-2k+1)(n-2s+2k-2)`.
pub fn phi_b1(n: usize, k: usize, s: usize) -> CubicPoly {
    let (n, k, s) = (int(n), int(k), int(s));
    CubicPoly::new(
        s - 2 * k + 3 - n,
        2 * k * s - s * s - 2 * k + 2 - n,
        s * (s - 2 * k + 1) * (n - 2 * s + 2 * k - 2),
    )
}

/// `x³ + (3-n)x² + (2-2k-n)x + 2k(n-2k-2)`.
pub fn phi_b2(n: usize, k: usize) -> CubicPoly {
    let (n, k) = (int(n), int(k));
    CubicPoly::new(3 - n, 2 - 2 * k - n, 2 * k * (n - 2 * k - 2))
}

/// [`phi_b1`] with `s` replaced by `delta`.
pub fn phi_b3(n: usize, k: usize, delta: usize) -> CubicPoly {
    phi_b1(n, k, delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use proptest::prelude::*;

    #[test]
    fn phi_b2_at_eleven_one() {
        let p = phi_b2(11, 1);
        assert_eq!(p, CubicPoly::new(-8, -11, 14));
        assert_eq!(p.to_string(), "x^3 - 8x^2 - 11x + 14");
        assert_eq!(p.eval_at_ratio(9, 1), BigRational::from_integer((-4).into()));
        let at91 = p.eval_at_ratio(91, 10);
        assert!(at91.is_positive());
        // 9.1³ - 8·9.1² - 11·9.1 + 14 = 4.991
        assert_eq!(at91, BigRational::new(4991.into(), 1000.into()));
        let r = cubic_largest_root(&p, Bracket::Given { lo: 9.0, hi: 9.1 }, 1e-12).unwrap();
        assert!(r > 9.0 && r < 9.1);
        assert!(p.eval(r).abs() < 1e-9);
    }

    #[test]
    fn double_root_is_exact() {
        let p = CubicPoly::new(0, -3, 2);
        assert_eq!(p.discriminant(), 0);
        assert_eq!(p.real_roots(1e-12), vec![1.0, 1.0, -2.0]);
        assert_eq!(cubic_largest_root(&p, Bracket::Auto { n: 3 }, 1e-12).unwrap(), 1.0);
        let triple = CubicPoly::new(-6, 12, -8);
        assert_eq!(triple.real_roots(1e-12), vec![2.0, 2.0, 2.0]);
        // (x+1)²(x-4): the double root is the smaller one
        let p = CubicPoly::new(-2, -7, -4);
        assert_eq!(p.real_roots(1e-12), vec![4.0, -1.0, -1.0]);
    }

    #[test]
    fn char_poly_of_matrix_matches_closed_forms() {
        for n in 4..30 {
            for k in 1..=(n - 2) / 2 {
                if n < 2 * k + 2 {
                    continue;
                }
                assert_eq!(CubicPoly::char_poly(&join_family_matrix(n, k, 2 * k)), phi_b2(n, k));
                for s in 2 * k..=(n + 2 * k - 1) / 2 {
                    assert_eq!(
                        CubicPoly::char_poly(&join_family_matrix(n, k, s)),
                        phi_b1(n, k, s),
                        "n={n} k={k} s={s}"
                    );
                }
            }
        }
        assert_eq!(
            join_family_matrix(11, 1, 2),
            [[1, 8, 1], [2, 7, 0], [2, 0, 0]]
        );
    }

    #[test]
    fn b1_at_two_k_is_b2_and_b3_substitutes() {
        for n in 6..20 {
            for k in 1..=(n - 2) / 2 {
                assert_eq!(phi_b1(n, k, 2 * k), phi_b2(n, k));
                for d in 2 * k..n / 2 {
                    assert_eq!(phi_b3(n, k, d), phi_b1(n, k, d));
                }
            }
        }
    }

    #[test]
    fn bracket_failures() {
        let p = phi_b2(11, 1);
        assert!(matches!(
            cubic_largest_root(&p, Bracket::Given { lo: 0.0, hi: 0.5 }, 1e-12),
            Err(SpectralError::Bracket(_))
        ));
        // sign change around a smaller root only
        assert!(cubic_largest_root(&p, Bracket::Given { lo: 0.5, hi: 2.0 }, 1e-12).is_err());
        // auto bracket widens from a far-off n
        let r = cubic_largest_root(&p, Bracket::Auto { n: 40 }, 1e-12).unwrap();
        assert!((r - p.largest_root(1e-12)).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn roots_of_products_are_recovered(a in -20i64..20, b in -20i64..20, c in -20i64..20) {
            let p = CubicPoly::new(-(a + b + c), a * b + b * c + a * c, -a * b * c);
            let mut want = vec![a as f64, b as f64, c as f64];
            want.sort_by(|x, y| y.total_cmp(x));
            let got = p.real_roots(1e-13);
            prop_assert_eq!(got.len(), 3);
            for (g, w) in got.iter().zip(&want) {
                prop_assert!((g - w).abs() < 1e-9, "{} vs {}", g, w);
            }
        }

        #[test]
        fn single_real_root_is_a_root(c2 in -50i64..50, c1 in -50i64..50, c0 in -50i64..50) {
            let p = CubicPoly::new(c2, c1, c0);
            let roots = p.real_roots(1e-13);
            prop_assert!(roots.len() == 1 || roots.len() == 3);
            for r in &roots {
                let scale = 1.0 + r.abs().powi(3);
                prop_assert!(p.eval(*r).abs() <= 1e-9 * scale);
            }
            let largest = roots[0];
            // nothing beyond the largest root changes sign
            prop_assert!(p.eval(largest + 1e-6) > 0.0);
        }
    }
}
