//! Spectral solvers for the time-fractional subdiffusion equation
//!
//! ```text
//! D_t^ρ u + A(D) u = f(x),   x ∈ T^N,  0 < t ≤ T,
//! u(x, 0) = φ(x),            u(x, T) = Ψ(x),
//! ```
//!
//! on the periodic torus `T^N` with a Caputo time derivative of order
//! `0 < ρ ≤ 1` and a homogeneous, symmetric, positive elliptic operator
//! `A(D)` with constant coefficients.
//!
//! Every Fourier mode decouples, so both the forward problem (given `φ` and
//! `f`, find `u`) and the inverse source problem (given `φ` and `Ψ`, find `f`)
//! reduce to closed-form expressions in the two-parameter Mittag-Leffler
//! function. The crate is organized as:
//!
//! - [`special_functions`]: Gamma and `E_{ρ,μ}(z)` on the negative real axis.
//! - [`torus_spectral`]: grids, Fourier fields, elliptic symbols, Sobolev norms.
//! - [`subdiffusion`]: per-mode formulas and the forward/inverse solvers.
//! - [`oracle`]: independent checks (double-double series, L1 time stepping,
//!   adaptive quadrature).
//! - [`diagnostics`]: data-smoothness checks and amplification profiles.
//! - [`cli_io`]: configuration, field files, manifests and the `subdiff` CLI.

pub mod cli_io;
pub mod diagnostics;
pub mod error;
pub mod oracle;
pub mod special_functions;
pub mod subdiffusion;
pub mod torus_spectral;

pub use error::{Error, Result};
