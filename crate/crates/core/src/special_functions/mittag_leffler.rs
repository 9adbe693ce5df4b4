//! Two-parameter Mittag-Leffler function `E_{ρ,μ}(z) = Σ z^k / Γ(ρk + μ)`
//! on the closed negative real axis, for `0 < ρ <= 1` and `μ > 0`.
//!
//! The defining series cancels catastrophically for moderately large `|z|`,
//! so evaluation switches between algorithms by `x = -z`:
//!
//! | regime        | where                     | method                                   |
//! |---------------|---------------------------|------------------------------------------|
//! | `Origin`      | `x = 0`                   | `1/Γ(μ)`                                 |
//! | `Taylor`      | `0 < x <= 1`, `ρ < 1`     | defining series, compensated summation   |
//! | `Integral`    | `1 < x < 60^ρ`, `ρ < 1`   | real integral along the branch cut       |
//! | `Asymptotic`  | `x >= 60^ρ` (`ρ < 1`)     | `-Σ_j (-x)^{-j}/Γ(μ-ρj)`, optimally cut  |
//! | `Exponential` | `ρ = 1`                   | Kummer-transformed positive series       |
//!
//! For `ρ = 1` the asymptotic regime is used for `x >= 50` when `μ` is not
//! an integer (the exponential remainder is then below `e^{-50}`), and for
//! `x > 700` when it is.

use std::f64::consts::PI;

use super::gamma::{cos_pi, rgamma, sin_pi};
use super::tanh_sinh;
use crate::{Error, Result};

/// Taylor regime upper bound on `x = -z` (for `ρ < 1`).
pub const TAYLOR_LIMIT: f64 = 1.0;
/// The asymptotic regime starts where `x^{1/ρ}` reaches this value; its
/// truncation error is then of order `exp(-x^{1/ρ})`.
pub const ASYMPTOTIC_SCALE: f64 = 60.0;
/// Asymptotic threshold for `ρ = 1` and non-integer `μ`.
pub const EXPONENTIAL_LIMIT: f64 = 50.0;
/// Beyond this the Kummer series overflows; integer `μ` then switches to the
/// (terminating) asymptotic sum.
const KUMMER_OVERFLOW: f64 = 700.0;

/// Parameters `(ρ, μ)` of `E_{ρ,μ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlParams {
    rho: f64,
    mu: f64,
}

impl MlParams {
    pub fn new(rho: f64, mu: f64) -> Result<Self> {
        if !(rho > 0.0 && rho <= 1.0) {
            return Err(Error::Domain(format!("Mittag-Leffler rho must lie in (0, 1], got {rho}")));
        }
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(Error::Domain(format!("Mittag-Leffler mu must be positive, got {mu}")));
        }
        Ok(Self { rho, mu })
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }
}

/// Evaluation algorithm used for a given argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Origin,
    Taylor,
    Integral,
    Asymptotic,
    Exponential,
}

impl Regime {
    pub fn name(&self) -> &'static str {
        match self {
            Regime::Origin => "origin",
            Regime::Taylor => "taylor",
            Regime::Integral => "integral",
            Regime::Asymptotic => "asymptotic",
            Regime::Exponential => "exponential",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

fn is_integer(v: f64) -> bool {
    v == v.floor()
}

/// Internal regime boundaries in `x = -z`, as `(lower, upper)`.
///
/// For `ρ < 1` these separate Taylor/Integral and Integral/Asymptotic; for
/// `ρ = 1` both entries are the Exponential/Asymptotic switch point.
pub fn regime_boundaries(params: MlParams) -> (f64, f64) {
    if params.rho == 1.0 {
        let switch = if is_integer(params.mu) { KUMMER_OVERFLOW } else { EXPONENTIAL_LIMIT };
        return (switch, switch);
    }
    let upper = ASYMPTOTIC_SCALE.powf(params.rho).max(TAYLOR_LIMIT);
    (TAYLOR_LIMIT, upper)
}

/// Regime that [`ml`] uses at `z`.
pub fn select_regime(params: MlParams, z: f64) -> Regime {
    let x = -z;
    if x == 0.0 {
        return Regime::Origin;
    }
    let (lower, upper) = regime_boundaries(params);
    if params.rho == 1.0 {
        let closed_form = params.mu == 1.0 || params.mu == 2.0;
        if closed_form || x <= upper {
            Regime::Exponential
        } else {
            Regime::Asymptotic
        }
    } else if x <= lower {
        Regime::Taylor
    } else if x < upper {
        Regime::Integral
    } else {
        Regime::Asymptotic
    }
}

fn check_argument(z: f64) -> Result<()> {
    if z.is_nan() || z > 0.0 {
        return Err(Error::Domain(format!("Mittag-Leffler argument must satisfy z <= 0, got {z}")));
    }
    Ok(())
}

/// `E_{ρ,μ}(z)` for `z <= 0`.
pub fn ml(params: MlParams, z: f64) -> Result<f64> {
    ml_with_regime(params, z).map(|(v, _)| v)
}

/// `E_{ρ,μ}(z)` together with the regime that produced it.
pub fn ml_with_regime(params: MlParams, z: f64) -> Result<(f64, Regime)> {
    check_argument(z)?;
    let regime = select_regime(params, z);
    Ok((eval_regime(params, -z, regime), regime))
}

/// Evaluate with a forced algorithm, ignoring regime selection.
///
/// Intended for cross-checking adjacent regimes at their shared boundary.
/// `Exponential` requires `ρ = 1`; `Integral` requires `ρ < 1`.
pub fn ml_in_regime(params: MlParams, z: f64, regime: Regime) -> Result<f64> {
    check_argument(z)?;
    match regime {
        Regime::Exponential if params.rho != 1.0 => {
            return Err(Error::Domain("exponential regime requires rho = 1".into()))
        }
        Regime::Integral if params.rho == 1.0 => {
            return Err(Error::Domain("integral regime requires rho < 1".into()))
        }
        Regime::Origin if z != 0.0 => return Err(Error::Domain("origin regime requires z = 0".into())),
        _ => {}
    }
    Ok(eval_regime(params, -z, regime))
}

fn eval_regime(params: MlParams, x: f64, regime: Regime) -> f64 {
    let MlParams { rho, mu } = params;
    match regime {
        Regime::Origin => rgamma(mu),
        Regime::Taylor => taylor(rho, mu, x),
        Regime::Integral => branch_cut_integral(rho, mu, x),
        Regime::Asymptotic => asymptotic(rho, mu, x),
        Regime::Exponential => exponential(mu, x),
    }
}

/// Leading-order check of `E_{ρ,ρ+1}(-t) = (1/t)(1 + O(1/t))` for `t > 1`.
/// Returns `(E_{ρ,ρ+1}(-t), 1/t)`.
pub fn ml_asymptotic_check(params: MlParams, t: f64) -> Result<(f64, f64)> {
    if (params.mu - (params.rho + 1.0)).abs() > 1e-12 {
        return Err(Error::Domain(format!(
            "asymptotic check needs mu = rho + 1, got rho = {}, mu = {}",
            params.rho, params.mu
        )));
    }
    if !(t > 1.0) {
        return Err(Error::Domain(format!("asymptotic check needs t > 1, got {t}")));
    }
    Ok((ml(params, -t)?, 1.0 / t))
}

/// Neumaier-compensated accumulator.
#[derive(Default)]
struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

fn taylor(rho: f64, mu: f64, x: f64) -> f64 {
    let mut acc = Compensated::default();
    let mut k: i32 = 0;
    loop {
        let arg = rho * k as f64 + mu;
        let term = x.powi(k) * rgamma(arg);
        let signed = if k % 2 == 0 { term } else { -term };
        acc.add(signed);
        // past the Gamma minimum the terms decrease monotonically
        if arg > 2.0 && term.abs() <= 1e-17 * acc.value().abs() {
            break;
        }
        if term == 0.0 && arg > 2.0 {
            break;
        }
        k += 1;
        if k > 2_000_000 {
            break;
        }
    }
    acc.value()
}

/// `-Σ_{j>=1} (-x)^{-j} / Γ(μ - ρj)`, truncated once the terms are
/// negligible or, past the optimal truncation point, start to grow.
fn asymptotic(rho: f64, mu: f64, x: f64) -> f64 {
    let mut acc = Compensated::default();
    let mut previous_envelope = f64::INFINITY;
    let log_x = x.ln();
    for j in 1..100_000 {
        let arg = mu - rho * j as f64;
        let scale = (-(j as f64) * log_x).exp();
        // |1/Γ(arg)| <= Γ(1 - arg)/π for arg < 0; the envelope skips the
        // dips of sin(π arg) near the poles
        let reflected = if arg < 1.0 {
            (super::gamma::ln_gamma_positive(1.0 - arg) - PI.ln()).exp()
        } else {
            0.0
        };
        let envelope = scale * rgamma(arg).abs().max(reflected);
        if arg < 0.0 && envelope > previous_envelope {
            break;
        }
        previous_envelope = envelope;
        let term = scale * rgamma(arg);
        acc.add(if j % 2 == 1 { term } else { -term });
        if envelope <= 1e-18 * acc.value().abs() {
            break;
        }
    }
    acc.value()
}

/// Integral along both banks of the branch cut of the inverse Laplace
/// transform `s^{ρ-μ}/(s^ρ + x)`, for `ρ < 1`:
///
/// `E_{ρ,μ}(-x) = 1/(πρ) ∫_0^∞ e^{-v^{1/ρ}} v^{(1-μ)/ρ}
///     (v sin πμ + x sin π(μ-ρ)) / ((v + x cos πρ)² + (x sin πρ)²) dv`.
///
/// The representation needs `μ < 1 + ρ`; larger `μ` are brought into
/// `(1-ρ, 1]` with `E_{ρ,μ}(-x) = (1/Γ(μ-ρ) - E_{ρ,μ-ρ}(-x)) / x`.
fn branch_cut_integral(rho: f64, mu: f64, x: f64) -> f64 {
    if mu > 1.0 {
        let lower = branch_cut_integral(rho, mu - rho, x);
        return (rgamma(mu - rho) - lower) / x;
    }
    let s1 = sin_pi(mu);
    let s2 = sin_pi(mu - rho);
    let centre = -x * cos_pi(rho);
    let width = x * sin_pi(rho);
    let power = (1.0 - mu) / rho;
    let inv_rho = 1.0 / rho;
    let integrand = |v: f64| -> f64 {
        let d = v - centre;
        let damping = (-v.powf(inv_rho)).exp();
        if damping == 0.0 {
            return 0.0;
        }
        let weight = if power == 0.0 { 1.0 } else { v.powf(power) };
        damping * weight * (v * s1 + x * s2) / (d * d + width * width)
    };

    // e^{-v^{1/ρ}} < 1e-35 beyond this point
    let v_max = 80f64.powf(rho);
    let mut cuts = vec![0.0, v_max];
    for k in -3..=3 {
        cuts.push(x * 2f64.powi(k));
    }
    if centre > 0.0 {
        // near-pole of the denominator: grade geometrically around it
        cuts.push(centre);
        let mut step = width;
        while step < v_max {
            cuts.push(centre - step);
            cuts.push(centre + step);
            step *= 2.0;
        }
    }
    cuts.retain(|c| *c >= 0.0 && *c <= v_max);
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * v_max);

    let total: f64 = cuts
        .windows(2)
        .map(|w| tanh_sinh::integrate(&integrand, w[0], w[1], 1e-15, 1e-300).0)
        .sum();
    total / (PI * rho)
}

/// `ρ = 1`: `E_{1,μ}(-x) = e^{-x} ₁F₁(μ-1; μ; x) / Γ(μ)` (Kummer), a series of
/// positive terms for `μ >= 1`. Smaller `μ` go through
/// `E_{1,μ}(-x) = 1/Γ(μ) - x E_{1,μ+1}(-x)`.
fn exponential(mu: f64, x: f64) -> f64 {
    if mu == 1.0 {
        return (-x).exp();
    }
    if mu == 2.0 {
        return -(-x).exp_m1() / x;
    }
    if mu < 1.0 {
        return rgamma(mu) - x * exponential(mu + 1.0, x);
    }
    if x > KUMMER_OVERFLOW {
        return asymptotic(1.0, mu, x);
    }
    let mut acc = Compensated::default();
    let mut term = 1.0;
    let mut k = 0.0;
    loop {
        acc.add(term);
        term *= x * (mu - 1.0 + k) / ((mu + k) * (k + 1.0));
        k += 1.0;
        if term <= 1e-17 * acc.value() || term == 0.0 {
            break;
        }
    }
    (-x).exp() * acc.value() * rgamma(mu)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(rho: f64, mu: f64) -> MlParams {
        MlParams::new(rho, mu).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn classical_reductions() {
        assert!(rel(ml(p(1.0, 1.0), -1.0).unwrap(), 0.36787944117144233) < 1e-15);
        assert!(rel(ml(p(1.0, 2.0), -1.0).unwrap(), 0.6321205588285577) < 1e-15);
        let g17 = crate::special_functions::gamma(1.7).unwrap();
        assert_eq!(ml(p(0.7, 1.7), 0.0).unwrap(), 1.0 / g17);
    }

    #[test]
    fn parameter_and_argument_validation() {
        assert!(MlParams::new(0.0, 1.0).is_err());
        assert!(MlParams::new(1.5, 1.0).is_err());
        assert!(MlParams::new(0.5, 0.0).is_err());
        assert!(MlParams::new(0.5, f64::NAN).is_err());
        assert!(matches!(ml(p(0.5, 1.0), 0.1), Err(Error::Domain(_))));
        assert!(matches!(ml(p(0.5, 1.0), f64::NAN), Err(Error::Domain(_))));
    }

    #[test]
    fn regime_selection() {
        let q = p(0.5, 1.0);
        assert_eq!(select_regime(q, 0.0), Regime::Origin);
        assert_eq!(select_regime(q, -0.5), Regime::Taylor);
        assert_eq!(select_regime(q, -3.0), Regime::Integral);
        assert_eq!(select_regime(q, -100.0), Regime::Asymptotic);
        assert_eq!(select_regime(p(1.0, 1.0), -1e4), Regime::Exponential);
        assert_eq!(select_regime(p(1.0, 1.5), -10.0), Regime::Exponential);
        assert_eq!(select_regime(p(1.0, 1.5), -60.0), Regime::Asymptotic);
    }

    #[test]
    fn forced_regime_errors() {
        assert!(ml_in_regime(p(1.0, 1.0), -1.0, Regime::Integral).is_err());
        assert!(ml_in_regime(p(0.5, 1.0), -1.0, Regime::Exponential).is_err());
        assert!(ml_in_regime(p(0.5, 1.0), -1.0, Regime::Origin).is_err());
    }

    #[test]
    fn asymptotic_check_contract() {
        let (v, lead) = ml_asymptotic_check(p(1.0, 2.0), 100.0).unwrap();
        assert_eq!(lead, 0.01);
        assert!(rel(v, (1.0 - (-100f64).exp()) / 100.0) < 1e-15);
        let (v, _) = ml_asymptotic_check(p(0.5, 1.5), 1e6).unwrap();
        assert!((v * 1e6 - 1.0).abs() <= 1e-4);
        assert!(ml_asymptotic_check(p(0.5, 1.0), 10.0).is_err());
        assert!(ml_asymptotic_check(p(0.5, 1.5), 0.5).is_err());
    }

    #[test]
    fn adjacent_regimes_agree_at_boundaries() {
        let rhos = [0.05, 0.1, 0.2, 0.25, 0.3, 0.4, 0.5, 0.6, 0.7, 0.75, 0.8, 0.9, 0.95, 0.99, 0.999, 0.99999];
        for &rho in &rhos {
            for mu in [0.2, 0.5, rho, 1.0, rho + 1.0, 1.5, 2.5] {
                let q = p(rho, mu);
                let (lower, upper) = regime_boundaries(q);
                let pairs = [
                    (lower, Regime::Taylor, Regime::Integral),
                    (upper, Regime::Integral, Regime::Asymptotic),
                ];
                for (x, a, b) in pairs {
                    let va = ml_in_regime(q, -x, a).unwrap();
                    let vb = ml_in_regime(q, -x, b).unwrap();
                    let err = rel(va, vb);
                    assert!(err <= 1e-11, "rho={rho} mu={mu} x={x}: {a}={va} {b}={vb} rel {err:e}");
                }
            }
        }
        for mu in [0.3, 0.5, 1.5, 2.5, 3.0, 4.0] {
            let q = p(1.0, mu);
            let (switch, _) = regime_boundaries(q);
            let va = ml_in_regime(q, -switch, Regime::Exponential).unwrap();
            let vb = ml_in_regime(q, -switch, Regime::Asymptotic).unwrap();
            assert!(rel(va, vb) <= 1e-11, "rho=1 mu={mu}: {va} vs {vb}");
        }
    }
}
