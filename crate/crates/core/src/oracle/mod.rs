//! Independent reference computations: double-double summation of the
//! Mittag-Leffler series, an L1 time stepper for the mode equation, and
//! adaptive Gauss-Kronrod quadrature.

mod double_double;
mod l1;
mod quadrature;
mod series;

pub use double_double::{DoubleDouble, DD_EPSILON};
pub use l1::{convergence_study, l1_solve_mode, ConvergenceStudy, L1SchemeConfig, ModeProblem};
pub use quadrature::{gauss_kronrod, QuadratureResult};
pub use series::{ml_series_reference, ml_series_with_bound, rgamma_dd};
