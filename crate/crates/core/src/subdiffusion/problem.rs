use serde::{Deserialize, Serialize};

use crate::torus_spectral::{EllipticSymbol, SpectralField, TorusGrid};
use crate::{Error, Result};

/// Caputo order `ρ ∈ (0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct FractionalOrder(f64);

impl FractionalOrder {
    pub fn new(rho: f64) -> Result<Self> {
        if rho > 0.0 && rho <= 1.0 {
            Ok(Self(rho))
        } else {
            Err(Error::Domain(format!("fractional order must lie in (0, 1], got {rho}")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for FractionalOrder {
    type Error = Error;

    fn try_from(rho: f64) -> Result<Self> {
        Self::new(rho)
    }
}

impl From<FractionalOrder> for f64 {
    fn from(rho: FractionalOrder) -> f64 {
        rho.0
    }
}

/// The field that distinguishes the two problems.
#[derive(Debug, Clone, PartialEq)]
pub enum ProblemData {
    /// Known source `f`; solve for `u`.
    Source(SpectralField),
    /// Observation `Ψ = u(·, T)`; solve for `f` and `u`.
    Observation(SpectralField),
}

/// A forward or inverse problem on one grid, with the symbol tabulated over
/// the frequency box.
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    rho: FractionalOrder,
    final_time: f64,
    symbol: EllipticSymbol,
    phi: SpectralField,
    data: ProblemData,
    eigenvalues: Vec<f64>,
}

impl ProblemSpec {
    pub fn forward(
        rho: FractionalOrder,
        final_time: f64,
        symbol: EllipticSymbol,
        phi: SpectralField,
        source: SpectralField,
    ) -> Result<Self> {
        Self::new(rho, final_time, symbol, phi, ProblemData::Source(source))
    }

    pub fn inverse(
        rho: FractionalOrder,
        final_time: f64,
        symbol: EllipticSymbol,
        phi: SpectralField,
        observation: SpectralField,
    ) -> Result<Self> {
        Self::new(rho, final_time, symbol, phi, ProblemData::Observation(observation))
    }

    pub fn new(
        rho: FractionalOrder,
        final_time: f64,
        symbol: EllipticSymbol,
        phi: SpectralField,
        data: ProblemData,
    ) -> Result<Self> {
        if !(final_time > 0.0 && final_time.is_finite()) {
            return Err(Error::Config(format!("final time must be finite and > 0, got {final_time}")));
        }
        let other = match &data {
            ProblemData::Source(f) | ProblemData::Observation(f) => f.grid(),
        };
        if other != phi.grid() {
            return Err(Error::Config(format!("data grids differ: {:?} vs {:?}", phi.grid(), other)));
        }
        let eigenvalues = symbol.tabulate(&phi.grid())?;
        Ok(Self { rho, final_time, symbol, phi, data, eigenvalues })
    }

    pub fn rho(&self) -> FractionalOrder {
        self.rho
    }

    pub fn final_time(&self) -> f64 {
        self.final_time
    }

    pub fn symbol(&self) -> &EllipticSymbol {
        &self.symbol
    }

    pub fn grid(&self) -> TorusGrid {
        self.phi.grid()
    }

    pub fn phi(&self) -> &SpectralField {
        &self.phi
    }

    pub fn data(&self) -> &ProblemData {
        &self.data
    }

    pub fn source(&self) -> Option<&SpectralField> {
        match &self.data {
            ProblemData::Source(f) => Some(f),
            ProblemData::Observation(_) => None,
        }
    }

    pub fn observation(&self) -> Option<&SpectralField> {
        match &self.data {
            ProblemData::Observation(psi) => Some(psi),
            ProblemData::Source(_) => None,
        }
    }

    /// `A(n)` for every slot of the frequency box, in FFT order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }
}
