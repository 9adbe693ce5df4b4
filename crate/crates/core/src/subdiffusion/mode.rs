use num_complex::Complex64;

use super::FractionalOrder;
use crate::special_functions::{ml, MlParams};
use crate::{Error, Result};

/// Smallest inversion denominator `T^ρ E_{ρ,ρ+1}(-λT^ρ)` accepted before a
/// mode is declared unrecoverable.
pub const DEFAULT_AMPLIFICATION_FLOOR: f64 = 1e-300;

/// `(E_{ρ,1}(-λt^ρ), t^ρ E_{ρ,ρ+1}(-λt^ρ))`, the weights of `φ_n` and `f_n`
/// in `T_n(t)`.
pub fn mode_kernels(rho: FractionalOrder, t: f64, lambda: f64) -> Result<(f64, f64)> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("time must be finite and >= 0, got {t}")));
    }
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(Error::Domain(format!("eigenvalue must be finite and >= 0, got {lambda}")));
    }
    if t == 0.0 {
        return Ok((1.0, 0.0));
    }
    let r = rho.value();
    let tr = t.powf(r);
    let z = -lambda * tr;
    let decay = ml(MlParams::new(r, 1.0)?, z)?;
    let source = tr * ml(MlParams::new(r, r + 1.0)?, z)?;
    Ok((decay, source))
}

/// `T_n(t) = φ_n E_{ρ,1}(-λt^ρ) + f_n t^ρ E_{ρ,ρ+1}(-λt^ρ)`. Exactly `φ_n`
/// at `t = 0`.
pub fn forward_mode_coeff(rho: FractionalOrder, t: f64, lambda: f64, phi_n: Complex64, f_n: Complex64) -> Result<Complex64> {
    let (decay, source) = mode_kernels(rho, t, lambda)?;
    if t == 0.0 {
        return Ok(phi_n);
    }
    Ok(phi_n * decay + f_n * source)
}

/// `f_n = (Ψ_n - φ_n E_{ρ,1}(-λT^ρ)) / (T^ρ E_{ρ,ρ+1}(-λT^ρ))` with the
/// default denominator floor.
pub fn inverse_source_coeff(
    rho: FractionalOrder,
    final_time: f64,
    lambda: f64,
    phi_n: Complex64,
    psi_n: Complex64,
) -> Result<Complex64> {
    inverse_source_coeff_with_floor(rho, final_time, lambda, phi_n, psi_n, DEFAULT_AMPLIFICATION_FLOOR)
}

pub fn inverse_source_coeff_with_floor(
    rho: FractionalOrder,
    final_time: f64,
    lambda: f64,
    phi_n: Complex64,
    psi_n: Complex64,
    floor: f64,
) -> Result<Complex64> {
    if !(final_time > 0.0) {
        return Err(Error::Domain(format!("final time must be > 0, got {final_time}")));
    }
    let (decay, denominator) = mode_kernels(rho, final_time, lambda)?;
    invert(decay, denominator, phi_n, psi_n, floor)
}

pub(super) fn invert(decay: f64, denominator: f64, phi_n: Complex64, psi_n: Complex64, floor: f64) -> Result<Complex64> {
    if !(denominator >= floor) {
        return Err(Error::AmplificationOverflow { denominator, floor });
    }
    Ok((psi_n - phi_n * decay) / denominator)
}

/// Amplification `1 / (T^ρ E_{ρ,ρ+1}(-λT^ρ))` of data errors in `f_n`.
pub fn amplification(rho: FractionalOrder, final_time: f64, lambda: f64) -> Result<f64> {
    if !(final_time > 0.0) {
        return Err(Error::Domain(format!("final time must be > 0, got {final_time}")));
    }
    Ok(1.0 / mode_kernels(rho, final_time, lambda)?.1)
}
