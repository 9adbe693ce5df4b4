use std::collections::HashMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::mode::{invert, mode_kernels, DEFAULT_AMPLIFICATION_FLOOR};
use super::{FractionalOrder, ProblemSpec};
use crate::torus_spectral::{EllipticSymbol, SpectralField};
use crate::{Error, Result};

/// Guard rails for the inversion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolveOptions {
    /// Modes whose denominator `T^ρ E_{ρ,ρ+1}(-λT^ρ)` falls below this are
    /// zeroed and reported.
    pub amplification_floor: f64,
    /// Spectral cutoff `K`: source modes with `|n| > K` are zeroed. Off by
    /// default, which gives the exact inversion.
    pub cutoff: Option<f64>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { amplification_floor: DEFAULT_AMPLIFICATION_FLOOR, cutoff: None }
    }
}

/// Source field together with the mode coefficients `T_n(t)` of `u(·, t)`
/// at each requested time.
#[derive(Debug, Clone)]
pub struct SolutionPair {
    pub source: SpectralField,
    pub times: Vec<f64>,
    pub trajectories: Vec<SpectralField>,
    /// Frequencies zeroed because their inversion denominator underflowed.
    pub overflowed_modes: Vec<Vec<i64>>,
    /// Frequencies zeroed by the spectral cutoff.
    pub truncated_modes: Vec<Vec<i64>>,
}

/// Evaluates `mode_kernels` once per distinct eigenvalue at a fixed time.
struct KernelCache {
    rho: FractionalOrder,
    t: f64,
    values: HashMap<u64, (f64, f64)>,
}

impl KernelCache {
    fn new(rho: FractionalOrder, t: f64) -> Self {
        Self { rho, t, values: HashMap::new() }
    }

    fn get(&mut self, lambda: f64) -> Result<(f64, f64)> {
        if let Some(&v) = self.values.get(&lambda.to_bits()) {
            return Ok(v);
        }
        let v = mode_kernels(self.rho, self.t, lambda)?;
        self.values.insert(lambda.to_bits(), v);
        Ok(v)
    }
}

fn check_times(times: &[f64], final_time: f64) -> Result<()> {
    match times.iter().find(|&&t| !(0.0..=final_time).contains(&t)) {
        Some(t) => Err(Error::Config(format!("time {t} lies outside [0, {final_time}]"))),
        None => Ok(()),
    }
}

fn trajectories(spec: &ProblemSpec, source: &SpectralField, times: &[f64]) -> Result<Vec<SpectralField>> {
    let phi = spec.phi().coeffs();
    let f = source.coeffs();
    times
        .iter()
        .map(|&t| {
            if t == 0.0 {
                return Ok(spec.phi().clone());
            }
            let mut cache = KernelCache::new(spec.rho(), t);
            let coeffs = spec
                .eigenvalues()
                .iter()
                .enumerate()
                .map(|(i, &lambda)| {
                    let (decay, weight) = cache.get(lambda)?;
                    Ok(phi[i] * decay + f[i] * weight)
                })
                .collect::<Result<Vec<Complex64>>>()?;
            SpectralField::from_coeffs(spec.grid(), coeffs)
        })
        .collect()
}

/// Evaluate `u(·, t)` mode-wise from `φ` and the given source.
pub fn solve_forward(spec: &ProblemSpec, times: &[f64]) -> Result<SolutionPair> {
    let source = spec
        .source()
        .ok_or_else(|| Error::Config("solve_forward needs a problem with a source field".into()))?;
    check_times(times, spec.final_time())?;
    Ok(SolutionPair {
        source: source.clone(),
        times: times.to_vec(),
        trajectories: trajectories(spec, source, times)?,
        overflowed_modes: Vec::new(),
        truncated_modes: Vec::new(),
    })
}

/// Recover `f` from `(φ, Ψ)` mode-wise, then evaluate `u(·, t)`.
pub fn solve_inverse(spec: &ProblemSpec, times: &[f64], options: &SolveOptions) -> Result<SolutionPair> {
    let psi = spec
        .observation()
        .ok_or_else(|| Error::Config("solve_inverse needs a problem with an observation field".into()))?;
    check_times(times, spec.final_time())?;
    let grid = spec.grid();
    let radii = grid.squared_radii();
    let phi = spec.phi().coeffs();
    let mut cache = KernelCache::new(spec.rho(), spec.final_time());
    let mut coeffs = vec![Complex64::new(0.0, 0.0); grid.len()];
    let mut overflowed_modes = Vec::new();
    let mut truncated_modes = Vec::new();
    for (i, &lambda) in spec.eigenvalues().iter().enumerate() {
        if options.cutoff.is_some_and(|k| radii[i] > k * k) {
            truncated_modes.push(grid.frequency(i));
            continue;
        }
        let (decay, denominator) = cache.get(lambda)?;
        match invert(decay, denominator, phi[i], psi.coeffs()[i], options.amplification_floor) {
            Ok(f) => coeffs[i] = f,
            Err(Error::AmplificationOverflow { .. }) => overflowed_modes.push(grid.frequency(i)),
            Err(e) => return Err(e),
        }
    }
    let source = SpectralField::from_coeffs(grid, coeffs)?;
    let trajectories = trajectories(spec, &source, times)?;
    Ok(SolutionPair { source, times: times.to_vec(), trajectories, overflowed_modes, truncated_modes })
}

/// Errors of a forward solve followed by an inversion of its final state.
#[derive(Debug, Clone)]
pub struct RoundTripReport {
    /// `Ψ = u(·, T)` from the forward solve.
    pub observation: SpectralField,
    /// Source recovered from `(φ, Ψ)`.
    pub reconstructed: SpectralField,
    /// `‖f_rec - f‖ / ‖f‖` (absolute when `f = 0`).
    pub source_error: f64,
    /// `‖u_rec(·, T) - Ψ‖ / ‖Ψ‖` (absolute when `Ψ = 0`).
    pub observation_error: f64,
    pub overflowed_modes: Vec<Vec<i64>>,
    pub truncated_modes: Vec<Vec<i64>>,
}

fn relative_l2(approx: &SpectralField, exact: &SpectralField) -> Result<f64> {
    let distance = approx.l2_distance(exact)?;
    let norm = exact.l2_norm();
    Ok(if norm > 0.0 { distance / norm } else { distance })
}

pub fn round_trip(
    rho: FractionalOrder,
    final_time: f64,
    symbol: &EllipticSymbol,
    phi: &SpectralField,
    source: &SpectralField,
    options: &SolveOptions,
) -> Result<RoundTripReport> {
    let forward = ProblemSpec::forward(rho, final_time, symbol.clone(), phi.clone(), source.clone())?;
    let observation = solve_forward(&forward, &[final_time])?.trajectories.remove(0);
    let inverse = ProblemSpec::inverse(rho, final_time, symbol.clone(), phi.clone(), observation.clone())?;
    let solution = solve_inverse(&inverse, &[final_time], options)?;
    Ok(RoundTripReport {
        source_error: relative_l2(&solution.source, source)?,
        observation_error: relative_l2(&solution.trajectories[0], &observation)?,
        observation,
        reconstructed: solution.source,
        overflowed_modes: solution.overflowed_modes,
        truncated_modes: solution.truncated_modes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_functions::{ml, MlParams};
    use crate::torus_spectral::TorusGrid;

    fn order(r: f64) -> FractionalOrder {
        FractionalOrder::new(r).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample_field(grid: TorusGrid, terms: &[(Vec<i64>, Complex64)]) -> SpectralField {
        let mut all = Vec::new();
        for (n, a) in terms {
            all.push((n.clone(), *a));
            all.push((n.iter().map(|k| -k).collect(), a.conj()));
        }
        SpectralField::from_trig_terms(grid, &all).unwrap()
    }

    #[test]
    fn heat_semigroup_when_classical() {
        let grid = TorusGrid::new(2, 16).unwrap();
        let phi = sample_field(grid, &[(vec![1, 2], c(0.5, 0.25)), (vec![0, 3], c(1.0, 0.0)), (vec![0, 0], c(0.5, 0.0))]);
        let spec = ProblemSpec::forward(order(1.0), 2.0, EllipticSymbol::laplacian(2), phi.clone(), SpectralField::zeros(grid))
            .unwrap();
        let times = [0.0, 0.1, 1.0, 2.0];
        let sol = solve_forward(&spec, &times).unwrap();
        assert_eq!(sol.trajectories[0], phi);
        for (t, u) in times.iter().zip(&sol.trajectories) {
            for (i, n) in grid.frequencies().iter().enumerate() {
                let lambda = (n[0] * n[0] + n[1] * n[1]) as f64;
                let expected = phi.coeffs()[i] * (-lambda * t).exp();
                assert!((u.coeffs()[i] - expected).norm() <= 1e-12 * phi.max_abs());
            }
            assert!(u.hermitian_defect() == 0.0);
        }
    }

    #[test]
    fn cosine_source_from_rest() {
        let grid = TorusGrid::new(1, 8).unwrap();
        let f = sample_field(grid, &[(vec![1], c(0.5, 0.0))]);
        let spec =
            ProblemSpec::forward(order(0.5), 1.0, EllipticSymbol::laplacian(1), SpectralField::zeros(grid), f.clone()).unwrap();
        let u = solve_forward(&spec, &[1.0]).unwrap().trajectories.remove(0);
        let weight = ml(MlParams::new(0.5, 1.5).unwrap(), -1.0).unwrap();
        assert!((weight - 0.5724164238441930).abs() < 1e-15);
        assert!(u.max_abs_distance(&f.scaled(weight)).unwrap() < 1e-15);
    }

    #[test]
    fn times_outside_horizon_rejected() {
        let grid = TorusGrid::new(1, 8).unwrap();
        let z = SpectralField::zeros(grid);
        let spec = ProblemSpec::forward(order(0.5), 1.0, EllipticSymbol::laplacian(1), z.clone(), z).unwrap();
        assert!(matches!(solve_forward(&spec, &[1.5]), Err(Error::Config(_))));
        assert!(matches!(solve_forward(&spec, &[-0.1]), Err(Error::Config(_))));
        assert!(matches!(solve_inverse(&spec, &[0.5], &SolveOptions::default()), Err(Error::Config(_))));
    }

    #[test]
    fn zero_data_gives_zero_source() {
        let grid = TorusGrid::new(2, 8).unwrap();
        let z = SpectralField::zeros(grid);
        let spec = ProblemSpec::inverse(order(0.3), 1.0, EllipticSymbol::bilaplacian(2), z.clone(), z.clone()).unwrap();
        let sol = solve_inverse(&spec, &[0.0, 0.5, 1.0], &SolveOptions::default()).unwrap();
        assert_eq!(sol.source, z);
        assert!(sol.trajectories.iter().all(|u| *u == z));
    }

    #[test]
    fn steady_eigenmode_when_classical() {
        let grid = TorusGrid::new(1, 16).unwrap();
        let g = sample_field(grid, &[(vec![3], c(0.2, -0.4))]);
        let spec = ProblemSpec::inverse(order(1.0), 1.5, EllipticSymbol::laplacian(1), g.clone(), g.clone()).unwrap();
        let sol = solve_inverse(&spec, &[0.7, 1.5], &SolveOptions::default()).unwrap();
        assert!(sol.source.max_abs_distance(&g.scaled(9.0)).unwrap() < 1e-13);
        for u in &sol.trajectories {
            assert!(u.max_abs_distance(&g).unwrap() < 1e-13);
        }
    }

    #[test]
    fn round_trip_recovers_source() {
        let grid = TorusGrid::new(2, 16).unwrap();
        let phi = sample_field(grid, &[(vec![1, 1], c(1.0, 0.5)), (vec![0, 2], c(-0.3, 0.0))]);
        let f = sample_field(grid, &[(vec![2, -1], c(0.7, 0.1)), (vec![4, 0], c(0.0, 1.0)), (vec![0, 0], c(2.0, 0.0))]);
        for r in [0.1, 0.5, 0.9, 1.0] {
            for symbol in [EllipticSymbol::laplacian(2), EllipticSymbol::bilaplacian(2)] {
                let report = round_trip(order(r), 1.3, &symbol, &phi, &f, &SolveOptions::default()).unwrap();
                assert!(report.source_error < 1e-12, "rho {r}: {}", report.source_error);
                assert!(report.observation_error < 1e-14);
                assert!(report.overflowed_modes.is_empty());
            }
        }
    }

    #[test]
    fn linear_in_data() {
        let grid = TorusGrid::new(1, 16).unwrap();
        let phi1 = sample_field(grid, &[(vec![1], c(1.0, 0.0))]);
        let phi2 = sample_field(grid, &[(vec![5], c(0.0, 2.0))]);
        let f1 = sample_field(grid, &[(vec![2], c(0.3, 0.3))]);
        let f2 = sample_field(grid, &[(vec![0], c(1.0, 0.0)), (vec![7], c(0.5, 0.0))]);
        let solve = |phi: &SpectralField, f: &SpectralField| {
            let spec = ProblemSpec::forward(order(0.6), 2.0, EllipticSymbol::laplacian(1), phi.clone(), f.clone()).unwrap();
            solve_forward(&spec, &[2.0]).unwrap().trajectories.remove(0)
        };
        let (a, b) = (1.5, -0.25);
        let combined = solve(&phi1.linear_combination(a, &phi2, b).unwrap(), &f1.linear_combination(a, &f2, b).unwrap());
        let separate = solve(&phi1, &f1).linear_combination(a, &solve(&phi2, &f2), b).unwrap();
        assert!(combined.max_abs_distance(&separate).unwrap() < 1e-12);
    }

    #[test]
    fn floor_and_cutoff_zero_modes() {
        let grid = TorusGrid::new(1, 16).unwrap();
        let phi = sample_field(grid, &[(vec![1], c(1.0, 0.0))]);
        let f = sample_field(grid, &[(vec![1], c(1.0, 0.0)), (vec![6], c(1.0, 0.0))]);
        let spec = ProblemSpec::forward(order(0.5), 1.0, EllipticSymbol::laplacian(1), phi.clone(), f).unwrap();
        let psi = solve_forward(&spec, &[1.0]).unwrap().trajectories.remove(0);
        let inverse = ProblemSpec::inverse(order(0.5), 1.0, EllipticSymbol::laplacian(1), phi, psi).unwrap();

        let floor = SolveOptions { amplification_floor: 0.05, cutoff: None };
        let sol = solve_inverse(&inverse, &[1.0], &floor).unwrap();
        assert!(sol.overflowed_modes.contains(&vec![6]) && sol.overflowed_modes.contains(&vec![-6]));
        assert!(!sol.overflowed_modes.contains(&vec![1]));
        assert_eq!(sol.source.coeff(&[6]), c(0.0, 0.0));

        let cut = SolveOptions { cutoff: Some(3.0), ..SolveOptions::default() };
        let sol = solve_inverse(&inverse, &[1.0], &cut).unwrap();
        assert_eq!(sol.truncated_modes.len(), 16 - 7);
        assert!((sol.source.coeff(&[1]).re - (2.0 * std::f64::consts::PI).sqrt()).abs() < 1e-13);
    }
}
