//! Periodic functions on `T^N` as truncated Fourier coefficient arrays.
//!
//! Coefficients are taken in the orthonormal system `(2π)^{-N/2} e^{inx}`:
//!
//! ```text
//! g(x) = Σ_n g_n (2π)^{-N/2} e^{inx},     g_n = (2π)^{-N/2} ∫ g(x) e^{-inx} dx.
//! ```
//!
//! Sample points are `x_j = 2πj/P`, `j = 0..P-1` in every direction (the
//! same point set as `(−π, π]` modulo 2π).

mod field;
mod grid;
mod sobolev;
mod symbol;
mod transform;

pub use field::SpectralField;
pub use grid::TorusGrid;
pub use sobolev::{decay_exponent, shell_maxima, sobolev_norm, DecayEstimate};
pub use symbol::{EllipticSymbol, MultiIndex};
pub use transform::{analyze, synthesize};
