//! Grid samples ↔ Fourier coefficients via separable 1-D FFT passes.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};

use super::{SpectralField, TorusGrid};
use crate::{Error, Result};

/// Largest allowed `|g_{-n} - conj(g_n)|` relative to the field's scale.
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;
/// Largest imaginary residue (relative) tolerated after synthesis.
pub const IMAGINARY_TOLERANCE: f64 = 1e-12;

fn fft_in_place(grid: TorusGrid, data: &mut [Complex64], direction: FftDirection) {
    let p = grid.points_per_dim();
    let fft = FftPlanner::new().plan_fft(p, direction);
    let mut line = vec![Complex64::new(0.0, 0.0); p];
    let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
    let total = grid.len();
    let mut stride = 1;
    for _ in 0..grid.dim() {
        // every line along this axis starts at an index whose digit on the
        // axis is zero
        let block = stride * p;
        for outer in (0..total).step_by(block) {
            for inner in 0..stride {
                let start = outer + inner;
                for (k, v) in line.iter_mut().enumerate() {
                    *v = data[start + k * stride];
                }
                fft.process_with_scratch(&mut line, &mut scratch);
                for (k, v) in line.iter().enumerate() {
                    data[start + k * stride] = *v;
                }
            }
        }
        stride *= p;
    }
}

/// Fourier coefficients of real grid samples (row-major, last axis fastest).
///
/// `g_n = (2π)^{N/2} P^{-N} Σ_j s_j e^{-i n·x_j}`, the trapezoidal rule for the
/// orthonormal coefficient integral; exact for band-limited data.
pub fn analyze(grid: TorusGrid, samples: &[f64]) -> Result<SpectralField> {
    if samples.len() != grid.len() {
        return Err(Error::Shape { expected: grid.len(), actual: samples.len() });
    }
    let mut data: Vec<Complex64> = samples.iter().map(|&s| Complex64::new(s, 0.0)).collect();
    fft_in_place(grid, &mut data, FftDirection::Forward);
    let n = grid.dim() as f64;
    let scale = (2.0 * PI).powf(n / 2.0) / (grid.points_per_dim() as f64).powf(n);
    data.iter_mut().for_each(|c| *c *= scale);
    let mut field = SpectralField::from_coeffs(grid, data)?;
    // the transform of real data is Hermitian up to rounding
    field.symmetrize();
    Ok(field)
}

/// Real samples of a Hermitian-symmetric field on its grid.
pub fn synthesize(field: &SpectralField) -> Result<Vec<f64>> {
    let scale = field.max_abs().max(f64::MIN_POSITIVE);
    let defect = field.hermitian_defect();
    if defect > HERMITIAN_TOLERANCE * scale.max(1.0) {
        return Err(Error::Symmetry { defect });
    }
    let grid = field.grid();
    let mut symmetric = field.clone();
    symmetric.symmetrize();
    let mut data = symmetric.into_coeffs();
    fft_in_place(grid, &mut data, FftDirection::Inverse);
    let norm = (2.0 * PI).powf(-(grid.dim() as f64) / 2.0);
    let residue = data.iter().map(|c| c.im.abs()).fold(0.0, f64::max) * norm;
    let magnitude = data.iter().map(|c| c.re.abs()).fold(0.0, f64::max) * norm;
    if residue > IMAGINARY_TOLERANCE * magnitude.max(1.0) {
        return Err(Error::Symmetry { defect: residue });
    }
    Ok(data.into_iter().map(|c| c.re * norm).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_field() {
        for dim in 1..=3 {
            let grid = TorusGrid::new(dim, 8).unwrap();
            let field = analyze(grid, &vec![2.5; grid.len()]).unwrap();
            let expected = 2.5 * (2.0 * PI).powf(dim as f64 / 2.0);
            assert!((field.coeffs()[0].re - expected).abs() < 1e-13);
            assert!(field.coeffs()[1..].iter().all(|c| c.norm() < 1e-13));
        }
    }

    #[test]
    fn cosine_matches_quadrature_of_defining_integral() {
        // g_1 = (2π)^{-1/2} ∫ cos x e^{-ix} dx = π/√(2π), by brute-force
        // midpoint quadrature with 20000 nodes
        let m = 20_000;
        let h = 2.0 * PI / m as f64;
        let integral: f64 = (0..m)
            .map(|k| {
                let x = -PI + (k as f64 + 0.5) * h;
                x.cos() * x.cos()
            })
            .sum::<f64>()
            * h;
        let oracle = integral / (2.0 * PI).sqrt();
        assert!((oracle - PI / (2.0 * PI).sqrt()).abs() < 1e-12);

        let grid = TorusGrid::new(1, 16).unwrap();
        let samples: Vec<f64> = (0..16).map(|j| grid.point(j)[0].cos()).collect();
        let field = analyze(grid, &samples).unwrap();
        assert!((field.coeff(&[1]).re - oracle).abs() < 1e-13);
        assert!((field.coeff(&[-1]).re - oracle).abs() < 1e-13);
        for n in [0, 2, 3, -3, 8] {
            assert!(field.coeff(&[n]).norm() < 1e-14);
        }
        let back = synthesize(&field).unwrap();
        for (a, b) in back.iter().zip(&samples) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn synthesis_special_cases() {
        let grid = TorusGrid::new(2, 8).unwrap();
        assert!(synthesize(&SpectralField::zeros(grid)).unwrap().iter().all(|&v| v == 0.0));
        let c = SpectralField::from_trig_terms(grid, &[(vec![0, 0], Complex64::new(1.5, 0.0))]).unwrap();
        assert!(synthesize(&c).unwrap().iter().all(|&v| (v - 1.5).abs() < 1e-14));
    }

    #[test]
    fn non_hermitian_field_is_rejected() {
        let grid = TorusGrid::new(1, 8).unwrap();
        let f = SpectralField::from_trig_terms(grid, &[(vec![1], Complex64::new(1.0, 0.0))]).unwrap();
        assert!(matches!(synthesize(&f), Err(Error::Symmetry { .. })));
    }

    #[test]
    fn shape_mismatch() {
        let grid = TorusGrid::new(2, 4).unwrap();
        assert!(matches!(analyze(grid, &[0.0; 15]), Err(Error::Shape { expected: 16, actual: 15 })));
    }
}
