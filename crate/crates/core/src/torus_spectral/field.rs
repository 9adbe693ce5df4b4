use std::f64::consts::PI;

use num_complex::Complex64;

use super::TorusGrid;
use crate::{Error, Result};

/// Fourier coefficients `g_n` of a function on `T^N`, stored in the grid's
/// FFT order (see [`TorusGrid`]).
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    grid: TorusGrid,
    coeffs: Vec<Complex64>,
}

impl SpectralField {
    pub fn zeros(grid: TorusGrid) -> Self {
        Self { grid, coeffs: vec![Complex64::new(0.0, 0.0); grid.len()] }
    }

    pub fn from_coeffs(grid: TorusGrid, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(Error::Shape { expected: grid.len(), actual: coeffs.len() });
        }
        Ok(Self { grid, coeffs })
    }

    /// Field of the trigonometric polynomial `Σ c e^{inx}` given as
    /// `(n, c)` pairs. Repeated frequencies accumulate.
    pub fn from_trig_terms(grid: TorusGrid, terms: &[(Vec<i64>, Complex64)]) -> Result<Self> {
        let scale = (2.0 * PI).powf(grid.dim() as f64 / 2.0);
        let mut field = Self::zeros(grid);
        for (n, c) in terms {
            let index = grid.index_of(n).ok_or_else(|| {
                Error::Config(format!("frequency {n:?} lies outside the {}-point frequency box", grid.points_per_dim()))
            })?;
            field.coeffs[index] += c * scale;
        }
        Ok(field)
    }

    pub fn grid(&self) -> TorusGrid {
        self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient at frequency `n` (zero outside the box).
    pub fn coeff(&self, n: &[i64]) -> Complex64 {
        self.grid.index_of(n).map_or(Complex64::new(0.0, 0.0), |i| self.coeffs[i])
    }

    /// Largest `|g_{-n} - conj(g_n)|` over the box.
    pub fn hermitian_defect(&self) -> f64 {
        (0..self.coeffs.len())
            .map(|i| (self.coeffs[self.grid.mirror_index(i)] - self.coeffs[i].conj()).norm())
            .fold(0.0, f64::max)
    }

    /// Replace the field by its Hermitian part `(g_n + conj(g_{-n}))/2`.
    pub fn symmetrize(&mut self) {
        let original = self.coeffs.clone();
        for (i, c) in self.coeffs.iter_mut().enumerate() {
            *c = 0.5 * (original[i] + original[self.grid.mirror_index(i)].conj());
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Plain ℓ² norm of the coefficient array.
    pub fn l2_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    fn check_grid(&self, other: &Self) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::Config("fields live on different grids".into()));
        }
        Ok(())
    }

    /// ℓ² norm of `self - other`.
    pub fn l2_distance(&self, other: &Self) -> Result<f64> {
        self.check_grid(other)?;
        Ok(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt())
    }

    /// Largest coefficient-wise `|self - other|`.
    pub fn max_abs_distance(&self, other: &Self) -> Result<f64> {
        self.check_grid(other)?;
        Ok(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    /// `a·self + b·other`.
    pub fn linear_combination(&self, a: f64, other: &Self, b: f64) -> Result<Self> {
        self.check_grid(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x * a + y * b).collect();
        Ok(Self { grid: self.grid, coeffs })
    }

    pub fn scaled(&self, a: f64) -> Self {
        Self { grid: self.grid, coeffs: self.coeffs.iter().map(|c| c * a).collect() }
    }

    /// Frequencies of the nonzero coefficients.
    pub fn support(&self) -> Vec<Vec<i64>> {
        (0..self.coeffs.len())
            .filter(|&i| self.coeffs[i] != Complex64::new(0.0, 0.0))
            .map(|i| self.grid.frequency(i))
            .collect()
    }
}
