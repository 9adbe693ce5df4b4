use num_complex::Complex64;
use serde::Serialize;

use crate::special_functions::gamma;
use crate::subdiffusion::{forward_mode_coeff, FractionalOrder};
use crate::{Error, Result};

/// Uniform-step L1 discretization of `D_t^ρ T + λT = f`, `T(0) = φ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct L1SchemeConfig {
    pub steps: usize,
    pub rho: FractionalOrder,
    /// Add `(f - λφ)/2` to the first step's right-hand side (the modified
    /// L1 scheme of Yan, Khan and Ford, 2018). The exact solution contains
    /// `t^ρ`, which limits the plain scheme to first order at fixed `T`; the
    /// correction restores order `2 - ρ`. Ignored for `ρ = 1`.
    pub start_correction: bool,
}

impl L1SchemeConfig {
    pub fn new(steps: usize, rho: FractionalOrder) -> Result<Self> {
        if steps < 2 {
            return Err(Error::Config(format!("L1 scheme needs at least 2 steps, got {steps}")));
        }
        Ok(Self { steps, rho, start_correction: true })
    }

    pub fn plain(self) -> Self {
        Self { start_correction: false, ..self }
    }
}

/// `T_n` at `t_k = kT/M`, `k = 0..=M`.
pub fn l1_solve_mode(cfg: &L1SchemeConfig, lambda: f64, phi: Complex64, f: Complex64, final_time: f64) -> Result<Vec<Complex64>> {
    if cfg.steps < 2 {
        return Err(Error::Config(format!("L1 scheme needs at least 2 steps, got {}", cfg.steps)));
    }
    if !(lambda >= 0.0 && lambda.is_finite() && final_time > 0.0 && final_time.is_finite()) {
        return Err(Error::Domain(format!("need lambda >= 0 and T > 0, got lambda={lambda}, T={final_time}")));
    }
    let rho = cfg.rho.value();
    let m = cfg.steps;
    let dt = final_time / m as f64;
    let c = dt.powf(-rho) / gamma(2.0 - rho)?;
    let weights: Vec<f64> = (0..m).map(|k| ((k + 1) as f64).powf(1.0 - rho) - (k as f64).powf(1.0 - rho)).collect();
    let mut values = Vec::with_capacity(m + 1);
    let mut increments: Vec<Complex64> = Vec::with_capacity(m);
    values.push(phi);
    for n in 1..=m {
        // Σ_{k=1}^{n-1} b_k (T^{n-k} - T^{n-k-1})
        let history: Complex64 = (1..n).map(|k| increments[n - k - 1] * weights[k]).sum();
        let mut rhs = f;
        if n == 1 && cfg.start_correction && rho < 1.0 {
            rhs += (f - phi * lambda) * 0.5;
        }
        let next = (rhs + (values[n - 1] - history) * c) / (c + lambda);
        if !(next.re.is_finite() && next.im.is_finite()) {
            return Err(Error::Overflow(format!("L1 step {n} produced a non-finite value")));
        }
        increments.push(next - values[n - 1]);
        values.push(next);
    }
    Ok(values)
}

/// One scalar mode problem `D_t^ρ T + λT = f`, `T(0) = φ`, observed at `T`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModeProblem {
    pub rho: FractionalOrder,
    pub lambda: f64,
    pub phi: f64,
    pub source: f64,
    pub final_time: f64,
}

/// Errors of the L1 stepper against the closed form on a refinement ladder.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceStudy {
    pub problem: ModeProblem,
    pub exact: f64,
    pub steps: Vec<usize>,
    pub errors: Vec<f64>,
    /// `log2(e_M / e_2M)` for successive rungs.
    pub orders: Vec<f64>,
    /// Least-squares slope of `ln e` against `ln Δt`.
    pub fitted_order: f64,
}

pub fn convergence_study(problem: &ModeProblem, ladder: &[usize], start_correction: bool) -> Result<ConvergenceStudy> {
    if ladder.len() < 2 {
        return Err(Error::Config("a convergence study needs at least two step counts".into()));
    }
    let exact = forward_mode_coeff(
        problem.rho,
        problem.final_time,
        problem.lambda,
        problem.phi.into(),
        problem.source.into(),
    )?
    .re;
    let errors = ladder
        .iter()
        .map(|&m| {
            let cfg = L1SchemeConfig { start_correction, ..L1SchemeConfig::new(m, problem.rho)? };
            let values = l1_solve_mode(&cfg, problem.lambda, problem.phi.into(), problem.source.into(), problem.final_time)?;
            Ok((values[m].re - exact).abs())
        })
        .collect::<Result<Vec<f64>>>()?;
    let orders = ladder
        .windows(2)
        .zip(errors.windows(2))
        .map(|(m, e)| (e[0] / e[1]).ln() / (m[1] as f64 / m[0] as f64).ln())
        .collect();
    let points: Vec<(f64, f64)> = ladder.iter().zip(&errors).map(|(&m, &e)| ((problem.final_time / m as f64).ln(), e.ln())).collect();
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = points.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    Ok(ConvergenceStudy { problem: *problem, exact, steps: ladder.to_vec(), errors, orders, fitted_order: sxy / sxx })
}
