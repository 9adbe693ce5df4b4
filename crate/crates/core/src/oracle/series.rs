use super::double_double::{DoubleDouble, DD_EPSILON};
use crate::special_functions::ln_gamma;
use crate::{Error, Result};

/// Taylor coefficients of `1/Γ(1+z)` about `z = 0` as double-double pairs;
/// the truncation error on `|z| <= 1/2` is below `1e-44`.
const RGAMMA_TAYLOR: &[(f64, f64)] = &[
    (1.0, 0.0),
    (0.5772156649015329, -4.942915152430645e-18),
    (-0.6558780715202539, 2.137185197068536e-17),
    (-0.04200263503409524, 1.4920306285650505e-18),
    (0.16653861138229148, 1.0189144546842026e-17),
    (-0.04219773455554433, -3.3579992682480134e-18),
    (-0.009621971527876973, -5.300031368830263e-19),
    (0.0072189432466631, -3.6006537063394283e-19),
    (-0.0011651675918590652, 5.659947853880981e-20),
    (-0.00021524167411495098, 2.3758686180729364e-21),
    (0.0001280502823881162, -9.359124499198967e-21),
    (-2.013485478078824e-05, 3.0488773972037385e-23),
    (-1.2504934821426706e-06, -2.66214092271898e-23),
    (1.133027231981696e-06, -4.622235212104869e-23),
    (-2.056338416977607e-07, -3.0061601618645134e-24),
    (6.116095104481416e-09, -2.693458298171306e-25),
    (5.002007644469223e-09, -1.538123614056751e-26),
    (-1.18127457048702e-09, -1.0052356155716208e-25),
    (1.0434267116911005e-10, -2.9298419956825035e-27),
    (7.782263439905071e-12, 4.397255556595848e-28),
    (-3.696805618642206e-12, 2.7050034921703885e-28),
    (5.100370287454476e-13, 2.253001461085878e-29),
    (-2.0583260535665066e-14, -1.4747481491954336e-30),
    (-5.348122539423018e-15, -1.6208384686356568e-31),
    (1.2267786282382608e-15, -5.072915146023867e-32),
    (-1.1812593016974588e-16, 6.422257838149681e-33),
    (1.1866922547516004e-18, -4.2037265494226014e-35),
    (1.4123806553180319e-18, -7.576946701116294e-35),
    (-2.29874568443537e-19, 1.3335481917069145e-36),
    (1.7144063219273374e-20, 5.230715150426935e-38),
    (1.337351730493693e-22, 2.6434059649079228e-39),
    (-2.0542335517666728e-22, 3.6856892424568953e-39),
    (2.736030048608e-23, -2.8599315416397774e-39),
    (-1.7323564459105165e-24, -1.7540883508197598e-40),
    (-2.3606190244992872e-26, -1.260225016995785e-42),
    (1.8649829417172943e-26, 8.774775617290965e-43),
    (-2.2180956242071973e-27, 6.809640315042753e-44),
    (1.2977819749479937e-28, -3.325692466804093e-45),
    (1.1806974749665284e-30, -4.184949275966516e-48),
    (-1.124584349277088e-30, -2.01842815487355e-47),
    (1.277085175140866e-31, 1.0535632367878753e-47),
    (-7.391451169615141e-33, 1.8114253268366145e-49),];

/// Most terms the series may use before the reference gives up.
const MAX_TERMS: usize = 100_000;

/// `1/Γ(y)` in double-double arithmetic for `y > 0`.
pub fn rgamma_dd(y: DoubleDouble) -> DoubleDouble {
    let (core, shift) = rgamma_split(y);
    shift.fold(core, |acc, (i, z)| acc / (z + i as f64))
}

/// Split `1/Γ(y)` as `r / Π_{i=1}^{m-1} (z+i)` with `z = y - m`,
/// `m = round(y)`. Returns `r` and an iterator over the divisors.
fn rgamma_split(y: DoubleDouble) -> (DoubleDouble, impl Iterator<Item = (usize, DoubleDouble)>) {
    let m = y.hi.round();
    let z = y - m;
    let mut r = DoubleDouble::ZERO;
    for &(hi, lo) in RGAMMA_TAYLOR.iter().rev() {
        r = r * z + DoubleDouble::new(hi, lo);
    }
    let divisors = (m as usize).saturating_sub(1);
    if m == 0.0 {
        // 1/Γ(z) = z / Γ(1+z)
        r = r * z;
    }
    (r, (1..=divisors).map(move |i| (i, z)))
}

/// `x^k / Γ(y)` evaluated by interleaving the `k` multiplications with the
/// `Γ` recurrence divisions so that no intermediate over- or underflows.
fn scaled_term(x: f64, k: usize, y: DoubleDouble) -> DoubleDouble {
    let (mut value, divisors) = rgamma_split(y);
    let mut remaining = k;
    for (i, z) in divisors {
        while remaining > 0 && value.hi.abs() < 1.0 {
            value = value * x;
            remaining -= 1;
        }
        value = value / (z + i as f64);
    }
    for _ in 0..remaining {
        value = value * x;
    }
    value
}

/// `E_{ρ,μ}(z) = Σ_k z^k / Γ(ρk+μ)` summed in double-double arithmetic for
/// `z <= 0`, with a certified absolute error bound of at most `tol`.
///
/// Any `ρ > 0` is accepted. Returns [`Error::Cancellation`] when the largest
/// term is too big for the double-double working precision to reach `tol`.
pub fn ml_series_reference(rho: f64, mu: f64, z: f64, tol: f64) -> Result<DoubleDouble> {
    Ok(ml_series_with_bound(rho, mu, z, tol)?.0)
}

/// [`ml_series_reference`] together with its error bound.
pub fn ml_series_with_bound(rho: f64, mu: f64, z: f64, tol: f64) -> Result<(DoubleDouble, f64)> {
    if !(rho > 0.0 && rho.is_finite() && mu > 0.0 && mu.is_finite()) {
        return Err(Error::Domain(format!("series parameters must be positive, got rho={rho}, mu={mu}")));
    }
    if !(z <= 0.0 && z.is_finite()) {
        return Err(Error::Domain(format!("series argument must be finite and <= 0, got {z}")));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let x = -z;
    if x == 0.0 {
        return Ok((rgamma_dd(mu.into()), 1e-44));
    }

    // Magnitude scan: ln|t_k| = k ln x - lnΓ(ρk+μ) is concave in k.
    let log_x = x.ln();
    let log_term = |k: usize| k as f64 * log_x - ln_gamma(rho * k as f64 + mu).unwrap_or(f64::INFINITY);
    let log_budget = (tol / DD_EPSILON).ln();
    let mut peak = f64::NEG_INFINITY;
    let mut last = 0;
    loop {
        let current = log_term(last);
        peak = peak.max(current);
        if peak > log_budget {
            return Err(Error::Cancellation { bound: (peak - log_budget).exp() * tol, tol });
        }
        let log_ratio = log_term(last + 1) - current;
        if log_ratio < 0.0 {
            let ratio = log_ratio.exp();
            let tail = (current + log_ratio).exp() / (1.0 - ratio);
            if tail < 1e-3 * tol {
                break;
            }
        }
        last += 1;
        if last >= MAX_TERMS {
            return Err(Error::Cancellation { bound: f64::INFINITY, tol });
        }
    }

    let mut sum = DoubleDouble::ZERO;
    let mut weighted = 0.0;
    let mut total = 0.0;
    for k in 0..=last {
        let y = DoubleDouble::product(rho, k as f64) + mu;
        let term = scaled_term(x, k, y);
        let term = if k % 2 == 1 { -term } else { term };
        let magnitude = term.hi.abs();
        weighted += magnitude * (8.0 * (k as f64 + y.hi) + 100.0);
        total += magnitude;
        sum = sum + term;
    }
    // Past the peak the term ratios decrease, so the tail is dominated by a
    // geometric series.
    let next = log_term(last + 1);
    let tail = next.exp() / (1.0 - (log_term(last + 2) - next).exp());
    let bound = DD_EPSILON * (weighted + 2.0 * last as f64 * total) + 1e-44 * total + tail;
    if bound > tol {
        return Err(Error::Cancellation { bound, tol });
    }
    Ok((sum, bound))
}
