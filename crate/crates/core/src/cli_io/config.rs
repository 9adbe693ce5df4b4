use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::field_io;
use crate::diagnostics::Thresholds;
use crate::subdiffusion::FractionalOrder;
use crate::torus_spectral::{analyze, EllipticSymbol, MultiIndex, SpectralField, TorusGrid};
use crate::{Error, Result};

/// Named trigonometric polynomials, as `(n, c)` terms of `Σ c e^{inx}`
/// along the first coordinate.
pub const PRESETS: [&str; 5] = ["zero", "const1", "cos1", "sin2", "mix"];

/// One term `c·e^{inx}` of a trigonometric polynomial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrigTerm {
    pub n: Vec<i64>,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

/// Where a data field comes from: a preset name or a field file path, or an
/// explicit term list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Named(String),
    Terms { terms: Vec<TrigTerm> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolTerm {
    pub alpha: MultiIndex,
    pub coeff: f64,
}

/// `"laplacian"`, `"bilaplacian"`, or explicit terms `a_α n^α`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SymbolSpec {
    Preset(String),
    Terms { terms: Vec<SymbolTerm> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum FieldFormat {
    #[default]
    Bin,
    Json,
}

impl FieldFormat {
    pub fn extension(self) -> &'static str {
        match self {
            FieldFormat::Bin => "bin",
            FieldFormat::Json => "json",
        }
    }
}

/// Run configuration as read from JSON; command-line flags override it.
/// Every field is optional here and checked by the command that needs it.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<String>,
    pub rho: Option<f64>,
    #[serde(rename = "T")]
    pub final_time: Option<f64>,
    pub dim: Option<usize>,
    pub grid: Option<usize>,
    pub symbol: Option<SymbolSpec>,
    pub phi: Option<FieldSpec>,
    pub source: Option<FieldSpec>,
    pub observation: Option<FieldSpec>,
    pub times: Option<Vec<f64>>,
    pub cutoff: Option<f64>,
    pub amplification_floor: Option<f64>,
    pub thresholds: Option<Thresholds>,
    pub output_dir: Option<PathBuf>,
    pub field_format: Option<FieldFormat>,
    /// Samples to compare the final forward state against.
    pub reference: Option<PathBuf>,
    pub mu: Option<f64>,
    pub z: Option<f64>,
    pub lambda: Option<f64>,
    pub phi_n: Option<f64>,
    pub source_n: Option<f64>,
    pub ladder: Option<Vec<usize>>,
    pub start_correction: Option<bool>,
}

macro_rules! overlay {
    ($base:ident, $top:ident, $($field:ident),*) => {
        $(if $top.$field.is_some() { $base.$field = $top.$field; })*
    };
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// Values set in `top` replace those in `self`.
    pub fn overlay(mut self, top: RunConfig) -> Self {
        overlay!(
            self, top, command, rho, final_time, dim, grid, symbol, phi, source, observation, times, cutoff,
            amplification_floor, thresholds, output_dir, field_format, reference, mu, z, lambda, phi_n, source_n,
            ladder, start_correction
        );
        self
    }

    pub fn rho(&self) -> Result<FractionalOrder> {
        let rho = require(self.rho, "rho")?;
        FractionalOrder::new(rho).map_err(|_| Error::Config(format!("rho must lie in (0, 1], got {rho}")))
    }

    pub fn final_time(&self) -> Result<f64> {
        let t = require(self.final_time, "T")?;
        if t > 0.0 && t.is_finite() {
            Ok(t)
        } else {
            Err(Error::Config(format!("T must be finite and > 0, got {t}")))
        }
    }

    pub fn output_dir(&self) -> PathBuf {
        self.output_dir.clone().unwrap_or_else(|| PathBuf::from("out"))
    }

    /// Grid from `dim`/`grid`, or from the first field file when `grid` is
    /// not given.
    pub fn grid(&self) -> Result<TorusGrid> {
        if let Some(points) = self.grid {
            return TorusGrid::new(self.dim.unwrap_or(1), points).map_err(|e| Error::Config(e.to_string()));
        }
        for spec in [&self.phi, &self.source, &self.observation].into_iter().flatten() {
            if let FieldSpec::Named(name) = spec {
                if !PRESETS.contains(&name.as_str()) {
                    return Ok(field_io::read_field(Path::new(name))?.0);
                }
            }
        }
        Err(Error::Config("missing required setting `grid`".into()))
    }

    pub fn symbol(&self, dim: usize) -> Result<EllipticSymbol> {
        match self.symbol.as_ref().unwrap_or(&SymbolSpec::Preset("laplacian".into())) {
            SymbolSpec::Preset(name) if name == "laplacian" => Ok(EllipticSymbol::laplacian(dim)),
            SymbolSpec::Preset(name) if name == "bilaplacian" => Ok(EllipticSymbol::bilaplacian(dim)),
            SymbolSpec::Preset(name) => Err(Error::Config(format!("unknown symbol preset `{name}`"))),
            SymbolSpec::Terms { terms } => {
                EllipticSymbol::new(dim, terms.iter().map(|t| (t.alpha.clone(), t.coeff)).collect())
            }
        }
    }

    pub fn thresholds(&self) -> Thresholds {
        self.thresholds.unwrap_or_default()
    }
}

pub fn require<T>(value: Option<T>, name: &str) -> Result<T> {
    value.ok_or_else(|| Error::Config(format!("missing required setting `{name}`")))
}

fn cosine(dim: usize, k: i64, amplitude: f64) -> [(Vec<i64>, Complex64); 2] {
    let mut n = vec![0; dim];
    n[0] = k;
    let minus = n.iter().map(|v| -v).collect();
    [(n, Complex64::new(amplitude / 2.0, 0.0)), (minus, Complex64::new(amplitude / 2.0, 0.0))]
}

fn sine(dim: usize, k: i64, amplitude: f64) -> [(Vec<i64>, Complex64); 2] {
    let mut n = vec![0; dim];
    n[0] = k;
    let minus = n.iter().map(|v| -v).collect();
    [(n, Complex64::new(0.0, -amplitude / 2.0)), (minus, Complex64::new(0.0, amplitude / 2.0))]
}

/// Term list of a named preset on `T^dim`.
pub fn preset_terms(name: &str, dim: usize) -> Option<Vec<(Vec<i64>, Complex64)>> {
    let constant = |c: f64| (vec![0; dim], Complex64::new(c, 0.0));
    Some(match name {
        "zero" => Vec::new(),
        "const1" => vec![constant(1.0)],
        "cos1" => cosine(dim, 1, 1.0).to_vec(),
        "sin2" => sine(dim, 2, 1.0).to_vec(),
        // 1 + cos x₁ + ½ sin 2x₁ - ¼ cos 3x₁
        "mix" => {
            let mut terms = vec![constant(1.0)];
            terms.extend(cosine(dim, 1, 1.0));
            terms.extend(sine(dim, 2, 0.5));
            terms.extend(cosine(dim, 3, -0.25));
            terms
        }
        _ => return None,
    })
}

/// Resolve a field specification on `grid`.
pub fn load_field(spec: &FieldSpec, grid: TorusGrid) -> Result<SpectralField> {
    let field = match spec {
        FieldSpec::Named(name) => match preset_terms(name, grid.dim()) {
            Some(terms) => SpectralField::from_trig_terms(grid, &terms).map_err(|e| Error::Config(e.to_string()))?,
            None => {
                let (file_grid, samples) = field_io::read_field(Path::new(name))?;
                if file_grid != grid {
                    return Err(Error::Config(format!("{name}: field grid {file_grid:?} differs from run grid {grid:?}")));
                }
                analyze(grid, &samples)?
            }
        },
        FieldSpec::Terms { terms } => {
            let terms: Vec<_> = terms.iter().map(|t| (t.n.clone(), Complex64::new(t.re, t.im))).collect();
            SpectralField::from_trig_terms(grid, &terms).map_err(|e| Error::Config(e.to_string()))?
        }
    };
    let defect = field.hermitian_defect();
    if defect > 1e-12 * field.max_abs().max(1.0) {
        return Err(Error::Config(format!("field {spec:?} is not real-valued (Hermitian defect {defect:e})")));
    }
    Ok(field)
}
