//! Gamma and Mittag-Leffler functions on the real axis.

pub mod gamma;
pub mod mittag_leffler;
mod tanh_sinh;

pub use gamma::{cos_pi, gamma, ln_gamma, rgamma, sin_pi, GAMMA_MAX_ARG};
pub use mittag_leffler::{
    ml, ml_asymptotic_check, ml_in_regime, ml_with_regime, regime_boundaries, select_regime, MlParams, Regime,
};
