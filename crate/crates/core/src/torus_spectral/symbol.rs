use serde::{Deserialize, Serialize};

use super::TorusGrid;
use crate::{Error, Result};

/// Multi-index `α ∈ ℕ^N`.
pub type MultiIndex = Vec<u32>;

/// Symbol `A(n) = Σ_{|α|=m} a_α n^α` of the constant-coefficient operator
/// `A(D) = Σ a_α D^α`, `D = -i∂`, acting on `e^{inx}` by multiplication.
///
/// Every term must have the same even order `m >= 2`, so `A` is homogeneous
/// of degree `m` and even. Positivity away from `n = 0` depends on the
/// coefficients and is checked on a concrete grid by [`EllipticSymbol::tabulate`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EllipticSymbol {
    dim: usize,
    order: u32,
    terms: Vec<(MultiIndex, f64)>,
}

impl EllipticSymbol {
    pub fn new(dim: usize, terms: Vec<(MultiIndex, f64)>) -> Result<Self> {
        let Some((first, _)) = terms.first() else {
            return Err(Error::Config("elliptic symbol needs at least one term".into()));
        };
        let order: u32 = first.iter().sum();
        if order < 2 || order % 2 != 0 {
            return Err(Error::Config(format!("symbol order must be even and >= 2, got {order}")));
        }
        for (alpha, a) in &terms {
            if alpha.len() != dim {
                return Err(Error::Config(format!("multi-index {alpha:?} does not have {dim} entries")));
            }
            if alpha.iter().sum::<u32>() != order {
                return Err(Error::Config(format!("multi-index {alpha:?} is not of order {order}")));
            }
            if !a.is_finite() {
                return Err(Error::Config(format!("coefficient for {alpha:?} is not finite")));
            }
        }
        Ok(Self { dim, order, terms })
    }

    /// `-Δ`, symbol `|n|²`.
    pub fn laplacian(dim: usize) -> Self {
        let terms = (0..dim)
            .map(|j| {
                let mut alpha = vec![0; dim];
                alpha[j] = 2;
                (alpha, 1.0)
            })
            .collect();
        Self { dim, order: 2, terms }
    }

    /// `Δ²`, symbol `|n|⁴`.
    pub fn bilaplacian(dim: usize) -> Self {
        let mut terms = Vec::new();
        for j in 0..dim {
            for k in j..dim {
                let mut alpha = vec![0; dim];
                alpha[j] += 2;
                alpha[k] += 2;
                terms.push((alpha, if j == k { 1.0 } else { 2.0 }));
            }
        }
        Self { dim, order: 4, terms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> &[(MultiIndex, f64)] {
        &self.terms
    }

    /// `A(n)`.
    pub fn eval(&self, n: &[i64]) -> f64 {
        self.terms
            .iter()
            .map(|(alpha, a)| {
                let monomial: f64 = alpha.iter().zip(n).map(|(&p, &v)| (v as f64).powi(p as i32)).product();
                a * monomial
            })
            .sum()
    }

    /// `A(n)` for every slot of `grid`, after checking `A(n) > 0` for `n ≠ 0`.
    pub fn tabulate(&self, grid: &TorusGrid) -> Result<Vec<f64>> {
        if grid.dim() != self.dim {
            return Err(Error::Config(format!(
                "symbol dimension {} does not match grid dimension {}",
                self.dim,
                grid.dim()
            )));
        }
        let mut values = Vec::with_capacity(grid.len());
        for i in 0..grid.len() {
            let n = grid.frequency(i);
            let value = self.eval(&n);
            if i != 0 && !(value > 0.0) {
                return Err(Error::Positivity { frequency: n, value });
            }
            values.push(value);
        }
        Ok(values)
    }
}
