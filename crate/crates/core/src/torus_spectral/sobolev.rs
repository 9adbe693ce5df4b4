use serde::Serialize;

use super::SpectralField;
use crate::{Error, Result};

/// Coefficients below this fraction of the field's largest shell maximum
/// count as zero when classifying shells.
pub const SHELL_NOISE_FLOOR: f64 = 1e-13;
/// Fewest nonzero shells for a slope fit.
pub const MIN_FIT_SHELLS: usize = 8;

/// `‖g‖_{L₂^a} = (Σ_n (1+|n|²)^a |g_n|²)^{1/2}` over the frequency box.
pub fn sobolev_norm(field: &SpectralField, a: f64) -> f64 {
    let radii = field.grid().squared_radii();
    field
        .coeffs()
        .iter()
        .zip(radii)
        .map(|(c, r2)| (1.0 + r2).powf(a) * c.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Largest `|g_n|` on each shell `round(|n|) = r`, indexed by `r`.
pub fn shell_maxima(field: &SpectralField) -> Vec<f64> {
    let radii = field.grid().squared_radii();
    let outer = radii.iter().map(|r2| r2.sqrt().round() as usize).max().unwrap_or(0);
    let mut maxima = vec![0.0f64; outer + 1];
    for (c, r2) in field.coeffs().iter().zip(radii) {
        let r = r2.sqrt().round() as usize;
        maxima[r] = maxima[r].max(c.norm());
    }
    maxima
}

/// Result of [`decay_exponent`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DecayEstimate {
    /// Every nonzero shell lies in the inner half of the box: the data is
    /// band-limited and the decay rate is effectively `-∞`.
    SpectrallyExact { highest_shell: Option<usize> },
    /// Least-squares slope of `ln max|g_n|` against `ln(1+r)`.
    Slope { slope: f64, shells: usize },
}

impl DecayEstimate {
    /// The fitted slope; `-∞` for band-limited data.
    pub fn slope(&self) -> f64 {
        match self {
            DecayEstimate::SpectrallyExact { .. } => f64::NEG_INFINITY,
            DecayEstimate::Slope { slope, .. } => *slope,
        }
    }

    /// Heuristic Sobolev order: shell maxima `~ r^s` put the field in
    /// `L₂^a` for every `a < -s - N/2`.
    pub fn sobolev_bound(&self, dim: usize) -> f64 {
        -self.slope() - dim as f64 / 2.0
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, DecayEstimate::SpectrallyExact { .. })
    }
}

/// Fit the algebraic decay rate of the coefficients from their shell maxima.
pub fn decay_exponent(field: &SpectralField) -> Result<DecayEstimate> {
    let maxima = shell_maxima(field);
    let peak = maxima.iter().copied().fold(0.0, f64::max);
    if peak == 0.0 {
        return Ok(DecayEstimate::SpectrallyExact { highest_shell: None });
    }
    let floor = SHELL_NOISE_FLOOR * peak;
    let nonzero: Vec<usize> = (0..maxima.len()).filter(|&r| maxima[r] > floor).collect();
    let highest = *nonzero.last().expect("peak shell is nonzero");
    let outer = maxima.len() - 1;
    if 2 * highest <= outer {
        return Ok(DecayEstimate::SpectrallyExact { highest_shell: Some(highest) });
    }
    if nonzero.len() < MIN_FIT_SHELLS {
        return Err(Error::InsufficientData(format!(
            "{} nonzero shells, at least {MIN_FIT_SHELLS} needed for a decay fit",
            nonzero.len()
        )));
    }
    let points: Vec<(f64, f64)> = nonzero.iter().map(|&r| ((1.0 + r as f64).ln(), maxima[r].ln())).collect();
    let count = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / count;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / count;
    let sxy: f64 = points.iter().map(|(x, y)| (x - mean_x) * (y - mean_y)).sum();
    let sxx: f64 = points.iter().map(|(x, _)| (x - mean_x).powi(2)).sum();
    Ok(DecayEstimate::Slope { slope: sxy / sxx, shells: points.len() })
}
