//! Per-mode closed forms for the time-fractional problem
//!
//! ```text
//! D_t^ρ u + A(D) u = f(x),   u(x, 0) = φ(x),   u(x, T) = Ψ(x)
//! ```
//!
//! on `T^N` with a Caputo derivative of order `0 < ρ <= 1`. Each Fourier
//! mode evolves independently as
//! `T_n(t) = φ_n E_{ρ,1}(-λt^ρ) + f_n t^ρ E_{ρ,ρ+1}(-λt^ρ)` with `λ = A(n)`,
//! and the inverse problem solves this relation for `f_n` at `t = T`.

mod mode;
mod problem;
mod solve;

pub use mode::{
    amplification, forward_mode_coeff, inverse_source_coeff, inverse_source_coeff_with_floor, mode_kernels,
    DEFAULT_AMPLIFICATION_FLOOR,
};
pub use problem::{FractionalOrder, ProblemData, ProblemSpec};
pub use solve::{round_trip, solve_forward, solve_inverse, RoundTripReport, SolutionPair, SolveOptions};
