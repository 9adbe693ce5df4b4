//! Smoothness and stability checks for inverse-problem data.
//!
//! The existence theory asks for `φ ∈ L₂^τ` and `Ψ ∈ L₂^{τ+1}` with
//! `τ > N/2`. Whether `τ` is a Sobolev order or a power of the operator
//! (Sobolev order `τm`) is not settled, so both readings are reported. On a
//! finite grid every norm is finite; membership is judged heuristically from
//! the fitted coefficient decay rate.

use serde::{Deserialize, Serialize};

use crate::subdiffusion::{amplification, FractionalOrder, ProblemSpec};
use crate::torus_spectral::{decay_exponent, shell_maxima, sobolev_norm, DecayEstimate, EllipticSymbol, SpectralField, TorusGrid};
use crate::{Error, Result};

/// Verdict thresholds. The defaults are written into every report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Thresholds {
    /// Required excess of the heuristic Sobolev order over the hypothesis.
    pub slope_margin: f64,
    /// Largest acceptable share of amplified data energy in the outer half
    /// of the shells, see [`ConditionReport::amplified_tail_ratio`].
    pub tail_ratio_ceiling: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self { slope_margin: 0.5, tail_ratio_ceiling: 0.1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    ExactBandLimited,
    ConditionsPlausible,
    ConditionsSuspect,
}

/// Decay fit of one data field.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FieldDecay {
    /// `None` when there were too few nonzero shells to fit.
    pub estimate: Option<DecayEstimate>,
    /// Largest `a` with `g ∈ L₂^a` suggested by the fit; `None` for
    /// band-limited data (any `a`) and for failed fits.
    pub sobolev_bound: Option<f64>,
    pub note: Option<String>,
}

impl FieldDecay {
    fn of(field: &SpectralField) -> Self {
        match decay_exponent(field) {
            Ok(estimate) => Self {
                sobolev_bound: (!estimate.is_exact()).then(|| estimate.sobolev_bound(field.grid().dim())),
                estimate: Some(estimate),
                note: None,
            },
            Err(e) => Self { estimate: None, sobolev_bound: None, note: Some(e.to_string()) },
        }
    }

    fn is_exact(&self) -> bool {
        self.estimate.is_some_and(|e| e.is_exact())
    }

    /// Whether the field plausibly lies in `L₂^order` with `margin` to spare.
    fn satisfies(&self, order: f64, margin: f64) -> bool {
        self.is_exact() || self.sobolev_bound.is_some_and(|a| a >= order + margin)
    }
}

/// One reading of the smoothness hypothesis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Interpretation {
    pub name: &'static str,
    /// Sobolev order required of `φ`.
    pub phi_order: f64,
    /// Sobolev order required of `Ψ`.
    pub psi_order: f64,
    pub phi_norm: f64,
    pub psi_norm: f64,
    pub phi_plausible: bool,
    pub psi_plausible: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionReport {
    pub dim: usize,
    pub symbol_order: u32,
    /// `N/2`, the threshold `τ` must exceed.
    pub tau_required: f64,
    pub thresholds: Thresholds,
    pub phi_decay: FieldDecay,
    pub psi_decay: FieldDecay,
    /// `direct`: orders `τ`, `τ+1`. `operator_power`: orders `τm`, `(τ+1)m`.
    pub interpretations: Vec<Interpretation>,
    /// Per-shell maxima of `1/(T^ρ E_{ρ,ρ+1}(-A(n)T^ρ))`.
    pub amplification: Vec<f64>,
    /// `max_{r > R/2} amp_r·|Ψ|_r / max_r amp_r·|Ψ|_r` over shell maxima,
    /// where `R` is the outermost shell.
    pub amplified_tail_ratio: f64,
    pub amplification_flagged: bool,
    /// The amplification grows like `A(n) ~ |n|^m`: a mild, order-`m`
    /// ill-posedness, equivalent to differentiating the data `m` times.
    pub ill_posedness_order: u32,
    pub verdict: Verdict,
}

/// Shell maxima of the inversion amplification factor, indexed by
/// `r = round(|n|)`.
pub fn amplification_profile(rho: FractionalOrder, final_time: f64, symbol: &EllipticSymbol, grid: &TorusGrid) -> Result<Vec<f64>> {
    let eigenvalues = symbol.tabulate(grid)?;
    let radii = grid.squared_radii();
    let outer = radii.iter().map(|r2| r2.sqrt().round() as usize).max().unwrap_or(0);
    let mut shells = vec![0.0f64; outer + 1];
    let mut seen = std::collections::HashMap::new();
    for (lambda, r2) in eigenvalues.iter().zip(radii) {
        let amp = match seen.get(&lambda.to_bits()) {
            Some(&a) => a,
            None => {
                let a = amplification(rho, final_time, *lambda)?;
                seen.insert(lambda.to_bits(), a);
                a
            }
        };
        let r = r2.sqrt().round() as usize;
        shells[r] = shells[r].max(amp);
    }
    Ok(shells)
}

/// Judge the smoothness and stability of inverse-problem data.
pub fn check_conditions(spec: &ProblemSpec, thresholds: &Thresholds) -> Result<ConditionReport> {
    let psi = spec
        .observation()
        .ok_or_else(|| Error::Config("condition checks need a problem with an observation field".into()))?;
    let phi = spec.phi();
    let grid = spec.grid();
    let dim = grid.dim();
    let m = spec.symbol().order();
    let tau = dim as f64 / 2.0;

    let phi_decay = FieldDecay::of(phi);
    let psi_decay = FieldDecay::of(psi);
    let interpretations = [("direct", 1.0), ("operator_power", m as f64)]
        .into_iter()
        .map(|(name, scale)| {
            let (phi_order, psi_order) = (tau * scale, (tau + 1.0) * scale);
            Interpretation {
                name,
                phi_order,
                psi_order,
                phi_norm: sobolev_norm(phi, phi_order),
                psi_norm: sobolev_norm(psi, psi_order),
                phi_plausible: phi_decay.satisfies(phi_order, thresholds.slope_margin),
                psi_plausible: psi_decay.satisfies(psi_order, thresholds.slope_margin),
            }
        })
        .collect::<Vec<_>>();

    let amplification = amplification_profile(spec.rho(), spec.final_time(), spec.symbol(), &grid)?;
    let weighted: Vec<f64> = shell_maxima(psi).iter().zip(&amplification).map(|(g, a)| g * a).collect();
    let peak = weighted.iter().copied().fold(0.0, f64::max);
    let outer = weighted.len() - 1;
    let tail = weighted[outer / 2 + 1..].iter().copied().fold(0.0, f64::max);
    let amplified_tail_ratio = if peak > 0.0 { tail / peak } else { 0.0 };
    let amplification_flagged = amplified_tail_ratio > thresholds.tail_ratio_ceiling;

    let direct = &interpretations[0];
    let verdict = if phi_decay.is_exact() && psi_decay.is_exact() {
        Verdict::ExactBandLimited
    } else if direct.phi_plausible && direct.psi_plausible && !amplification_flagged {
        Verdict::ConditionsPlausible
    } else {
        Verdict::ConditionsSuspect
    };

    Ok(ConditionReport {
        dim,
        symbol_order: m,
        tau_required: tau,
        thresholds: *thresholds,
        phi_decay,
        psi_decay,
        interpretations,
        amplification,
        amplified_tail_ratio,
        amplification_flagged,
        ill_posedness_order: m,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};

    use super::*;
    use crate::special_functions::gamma;

    fn order(r: f64) -> FractionalOrder {
        FractionalOrder::new(r).unwrap()
    }

    fn radial(grid: TorusGrid, decay: f64) -> SpectralField {
        let coeffs = grid.squared_radii().iter().map(|r2| Complex64::new((1.0 + r2).powf(decay / 2.0), 0.0)).collect();
        SpectralField::from_coeffs(grid, coeffs).unwrap()
    }

    fn band_limited(grid: TorusGrid) -> SpectralField {
        let terms = [(vec![1], Complex64::new(1.0, 0.0)), (vec![-1], Complex64::new(1.0, 0.0)), (vec![0], Complex64::new(0.5, 0.0))];
        SpectralField::from_trig_terms(grid, &terms).unwrap()
    }

    fn inverse(grid: TorusGrid, phi: SpectralField, psi: SpectralField) -> ProblemSpec {
        ProblemSpec::inverse(order(0.5), 1.0, EllipticSymbol::laplacian(grid.dim()), phi, psi).unwrap()
    }

    #[test]
    fn band_limited_data_is_exact() {
        let grid = TorusGrid::new(1, 32).unwrap();
        let report = check_conditions(&inverse(grid, band_limited(grid), band_limited(grid)), &Thresholds::default()).unwrap();
        assert_eq!(report.verdict, Verdict::ExactBandLimited);
        assert!(!report.amplification_flagged);
    }

    #[test]
    fn smooth_observation_is_plausible() {
        // τ = N/2 + 1/2 and Ψ_n ~ |n|^{-(τ+1) - N/2 - 1}.
        let grid = TorusGrid::new(1, 64).unwrap();
        let tau = 1.0;
        let psi = radial(grid, -(tau + 1.0) - 0.5 - 1.0);
        let report = check_conditions(&inverse(grid, band_limited(grid), psi), &Thresholds::default()).unwrap();
        assert_eq!(report.verdict, Verdict::ConditionsPlausible, "{report:#?}");
        assert_eq!(report.interpretations[1].name, "operator_power");
    }

    #[test]
    fn white_noise_is_suspect() {
        let grid = TorusGrid::new(1, 64).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        let coeffs = (0..64).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let mut psi = SpectralField::from_coeffs(grid, coeffs).unwrap();
        psi.symmetrize();
        let report = check_conditions(&inverse(grid, band_limited(grid), psi), &Thresholds::default()).unwrap();
        assert_eq!(report.verdict, Verdict::ConditionsSuspect);
        assert!(report.amplification_flagged && report.amplified_tail_ratio > 0.5);
    }

    #[test]
    fn scaling_keeps_verdict() {
        let grid = TorusGrid::new(2, 32).unwrap();
        let phi = radial(grid, -4.0);
        let psi = radial(grid, -5.0);
        let base = check_conditions(&inverse(grid, phi.clone(), psi.clone()), &Thresholds::default()).unwrap();
        let scaled = check_conditions(&inverse(grid, phi.scaled(-1e3), psi.scaled(-1e3)), &Thresholds::default()).unwrap();
        assert_eq!(base.verdict, scaled.verdict);
        let slope = |d: &FieldDecay| d.estimate.unwrap().slope();
        assert!((slope(&base.psi_decay) - slope(&scaled.psi_decay)).abs() < 1e-12);
        assert!((base.amplified_tail_ratio - scaled.amplified_tail_ratio).abs() < 1e-12);
    }

    #[test]
    fn forward_problems_rejected() {
        let grid = TorusGrid::new(1, 8).unwrap();
        let z = SpectralField::zeros(grid);
        let spec = ProblemSpec::forward(order(0.5), 1.0, EllipticSymbol::laplacian(1), z.clone(), z).unwrap();
        assert!(matches!(check_conditions(&spec, &Thresholds::default()), Err(Error::Config(_))));
    }

    #[test]
    fn profile_values() {
        let grid = TorusGrid::new(2, 32).unwrap();
        for r in [0.25, 0.5, 1.0] {
            let t: f64 = 2.0;
            let profile = amplification_profile(order(r), t, &EllipticSymbol::laplacian(2), &grid).unwrap();
            let floor = gamma(r + 1.0).unwrap() / t.powf(r);
            assert!((profile[0] - floor).abs() < 1e-14 * floor);
            assert!(profile.windows(2).all(|w| w[1] > w[0]));
        }
        // Classical closed form at λT = 1.
        let grid = TorusGrid::new(1, 8).unwrap();
        let profile = amplification_profile(order(1.0), 1.0, &EllipticSymbol::laplacian(1), &grid).unwrap();
        assert!((profile[1] - 1.0 / (1.0 - (-1.0f64).exp())).abs() < 1e-14);
    }

    #[test]
    fn profile_tracks_eigenvalue() {
        let grid = TorusGrid::new(1, 64).unwrap();
        for r in [0.1, 0.5, 0.9, 1.0] {
            let profile = amplification_profile(order(r), 1.0, &EllipticSymbol::bilaplacian(1), &grid).unwrap();
            for (n, amp) in profile.iter().enumerate().skip(4) {
                let lambda = (n as f64).powi(4);
                assert!((amp / lambda - 1.0).abs() <= 0.05, "rho {r}, n {n}: {}", amp / lambda);
            }
        }
    }
}
