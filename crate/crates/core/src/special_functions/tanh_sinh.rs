//! Double-exponential (tanh-sinh) quadrature on finite intervals.
//!
//! Used by the integral regime of the Mittag-Leffler evaluator, where the
//! integrand carries an algebraic endpoint singularity at the origin.

use std::f64::consts::FRAC_PI_2;

const MAX_LEVEL: u32 = 10;

/// Integrate `f` over `[a, b]`, halving the step until two successive
/// levels agree to `rel_tol` (or `abs_tol`). Returns `(value, last_change)`.
///
/// Nodes are placed by their distance to the nearer endpoint so that `f`
/// is never evaluated exactly at `a` or `b`.
pub(crate) fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> (f64, f64) {
    let len = b - a;
    if len <= 0.0 {
        return (0.0, 0.0);
    }
    let half = 0.5 * len;

    // Contribution of the symmetric node pair at parameter t.
    let pair = |t: f64| -> Option<f64> {
        let u = FRAC_PI_2 * t.sinh();
        let e = (2.0 * u).exp();
        let offset = len / (1.0 + e);
        if offset == 0.0 || !offset.is_finite() {
            return None;
        }
        let cu = u.cosh();
        let w = half * FRAC_PI_2 * t.cosh() / (cu * cu);
        if w == 0.0 {
            return None;
        }
        Some(w * (f(a + offset) + f(b - offset)))
    };

    // level 0: step 1
    let mut h = 1.0;
    let mut sum = half * FRAC_PI_2 * f(a + half);
    let mut k = 1;
    while let Some(p) = pair(k as f64) {
        sum += p;
        k += 1;
    }
    let mut estimate = h * sum;
    let mut change = f64::INFINITY;

    for _ in 1..=MAX_LEVEL {
        h *= 0.5;
        // new nodes are the odd multiples of h
        let mut j = 1;
        while let Some(p) = pair(j as f64 * h) {
            sum += p;
            j += 2;
        }
        let next = h * sum;
        change = (next - estimate).abs();
        estimate = next;
        if change <= rel_tol * estimate.abs() || change <= abs_tol {
            break;
        }
    }
    (estimate, change)
}
