//! Command-line front end: configuration, field files, manifests and CSV
//! tables. Exit codes: 1 configuration, 2 i/o, 3 numerical failure.

mod config;
mod field_io;
mod output;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

pub use config::{load_field, preset_terms, FieldFormat, FieldSpec, RunConfig, SymbolSpec, SymbolTerm, TrigTerm, PRESETS};
pub use field_io::{read_field, write_field};
pub use output::{fmt_f64, write_csv, Manifest, ManifestWriter, Status, Tolerances};

use crate::diagnostics::{amplification_profile, check_conditions};
use crate::oracle::{convergence_study, ml_series_with_bound, ModeProblem};
use crate::special_functions::{ml_with_regime, MlParams};
use crate::subdiffusion::{round_trip, solve_forward, solve_inverse, ProblemSpec, SolveOptions, DEFAULT_AMPLIFICATION_FLOOR};
use crate::torus_spectral::{shell_maxima, synthesize, SpectralField, TorusGrid};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "subdiff", version, about = "Time-fractional subdiffusion on the N-torus: forward solves and source reconstruction")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evolve u(·, t) from φ and a known source f.
    Forward(ProblemArgs),
    /// Recover f from φ and the observation Ψ = u(·, T).
    Invert(ProblemArgs),
    /// Forward solve, then invert the final state and report the errors.
    Roundtrip(ProblemArgs),
    /// Smoothness and amplification report for inverse-problem data.
    Diagnose(ProblemArgs),
    /// Evaluate E_{ρ,μ}(z) and print the algorithm used.
    #[command(allow_negative_numbers = true)]
    MlEval(MlEvalArgs),
    /// Convergence study of the L1 stepper against the closed form.
    Oracle(OracleArgs),
    /// Run the command named by `command` in a JSON config file.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Debug, Args, Default)]
pub struct ProblemArgs {
    /// JSON run configuration; flags given here override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub rho: Option<f64>,
    /// Final time T.
    #[arg(long = "T")]
    pub final_time: Option<f64>,
    /// Points per axis P (even).
    #[arg(long)]
    pub grid: Option<usize>,
    /// Spatial dimension N (default 1).
    #[arg(long)]
    pub dim: Option<usize>,
    /// `laplacian` (default) or `bilaplacian`.
    #[arg(long)]
    pub symbol: Option<String>,
    /// Preset name or field file for φ (default `zero`).
    #[arg(long)]
    pub phi: Option<String>,
    /// Preset name or field file for f.
    #[arg(long)]
    pub source: Option<String>,
    /// Preset name or field file for Ψ.
    #[arg(long)]
    pub observation: Option<String>,
    /// Shorthand for `--source` (forward, roundtrip) or `--observation`
    /// (invert, diagnose).
    #[arg(long)]
    pub preset: Option<String>,
    /// Output times in [0, T] (default T).
    #[arg(long, value_delimiter = ',')]
    pub times: Option<Vec<f64>>,
    /// Zero reconstructed source modes with |n| > K.
    #[arg(long)]
    pub cutoff: Option<f64>,
    #[arg(long)]
    pub amplification_floor: Option<f64>,
    #[arg(long)]
    pub slope_margin: Option<f64>,
    #[arg(long)]
    pub tail_ratio_ceiling: Option<f64>,
    #[arg(long = "out")]
    pub output_dir: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub field_format: Option<FieldFormat>,
    /// Field file to compare the final forward state against.
    #[arg(long)]
    pub reference: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MlEvalArgs {
    #[arg(long)]
    pub rho: f64,
    #[arg(long)]
    pub mu: f64,
    #[arg(long)]
    pub z: f64,
}

#[derive(Debug, Args, Default)]
pub struct OracleArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub rho: Option<f64>,
    /// Mode eigenvalue λ = A(n).
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Initial value φ_n (default 1).
    #[arg(long)]
    pub phi_n: Option<f64>,
    /// Source value f_n (default 0).
    #[arg(long)]
    pub source_n: Option<f64>,
    #[arg(long = "T")]
    pub final_time: Option<f64>,
    /// Step counts M (default 256,512,1024,2048).
    #[arg(long, value_delimiter = ',')]
    pub ladder: Option<Vec<usize>>,
    /// Use the plain L1 scheme without the first-step correction.
    #[arg(long)]
    pub plain: bool,
    #[arg(long = "out")]
    pub output_dir: Option<PathBuf>,
}

impl ProblemArgs {
    fn into_config(self, command: &str) -> Result<RunConfig> {
        let base = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        let mut thresholds = base.thresholds.unwrap_or_default();
        let thresholds_set = self.slope_margin.is_some() || self.tail_ratio_ceiling.is_some();
        if let Some(v) = self.slope_margin {
            thresholds.slope_margin = v;
        }
        if let Some(v) = self.tail_ratio_ceiling {
            thresholds.tail_ratio_ceiling = v;
        }
        let named = |s: Option<String>| s.map(FieldSpec::Named);
        let (mut source, mut observation) = (named(self.source), named(self.observation));
        if let Some(preset) = self.preset {
            match command {
                "forward" | "roundtrip" => source = source.or(Some(FieldSpec::Named(preset))),
                _ => observation = observation.or(Some(FieldSpec::Named(preset))),
            }
        }
        let flags = RunConfig {
            command: Some(command.to_string()),
            rho: self.rho,
            final_time: self.final_time,
            dim: self.dim,
            grid: self.grid,
            symbol: self.symbol.map(SymbolSpec::Preset),
            phi: named(self.phi),
            source,
            observation,
            times: self.times,
            cutoff: self.cutoff,
            amplification_floor: self.amplification_floor,
            thresholds: thresholds_set.then_some(thresholds),
            output_dir: self.output_dir,
            field_format: self.field_format,
            reference: self.reference,
            ..RunConfig::default()
        };
        check_command(&base, command)?;
        Ok(base.overlay(flags))
    }
}

impl OracleArgs {
    fn into_config(self) -> Result<RunConfig> {
        let base = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        check_command(&base, "oracle")?;
        Ok(base.overlay(RunConfig {
            command: Some("oracle".into()),
            rho: self.rho,
            final_time: self.final_time,
            lambda: self.lambda,
            phi_n: self.phi_n,
            source_n: self.source_n,
            ladder: self.ladder,
            start_correction: self.plain.then_some(false),
            output_dir: self.output_dir,
            ..RunConfig::default()
        }))
    }
}

fn check_command(config: &RunConfig, command: &str) -> Result<()> {
    match &config.command {
        Some(c) if c != command => Err(Error::Config(format!("config is for `{c}`, not `{command}`"))),
        _ => Ok(()),
    }
}

/// Parse arguments, run, report errors on stderr, and return the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Forward(args) => execute("forward", args.into_config("forward")?),
        Command::Invert(args) => execute("invert", args.into_config("invert")?),
        Command::Roundtrip(args) => execute("roundtrip", args.into_config("roundtrip")?),
        Command::Diagnose(args) => execute("diagnose", args.into_config("diagnose")?),
        Command::Oracle(args) => execute("oracle", args.into_config()?),
        Command::MlEval(args) => ml_eval(&args),
        Command::Run { config } => {
            let cfg = RunConfig::load(&config)?;
            let command = config::require(cfg.command.clone(), "command")?;
            if command == "ml-eval" {
                let args = MlEvalArgs {
                    rho: config::require(cfg.rho, "rho")?,
                    mu: config::require(cfg.mu, "mu")?,
                    z: config::require(cfg.z, "z")?,
                };
                return ml_eval(&args);
            }
            execute(&command, cfg)
        }
    }
}

fn ml_eval(args: &MlEvalArgs) -> Result<()> {
    let params = MlParams::new(args.rho, args.mu).map_err(|e| Error::Config(e.to_string()))?;
    let (value, regime) = ml_with_regime(params, args.z)?;
    println!("{value}");
    println!("regime: {regime}");
    match ml_series_with_bound(args.rho, args.mu, args.z, 1e-15) {
        Ok((reference, bound)) => println!("series: {} (bound {bound:.3e})", reference.to_f64()),
        Err(e) => println!("series: unavailable ({e})"),
    }
    Ok(())
}

fn tolerances(cfg: &RunConfig) -> Tolerances {
    Tolerances {
        mittag_leffler_relative: 1e-12,
        round_trip_source_relative_l2: 1e-9,
        round_trip_observation_relative_l2: 1e-10,
        amplification_floor: cfg.amplification_floor.unwrap_or(DEFAULT_AMPLIFICATION_FLOOR),
    }
}

/// Run one command with its manifest: written first, finalized on success,
/// and marked failed with the error otherwise.
fn execute(command: &str, cfg: RunConfig) -> Result<()> {
    if !["forward", "invert", "roundtrip", "diagnose", "oracle"].contains(&command) {
        return Err(Error::Config(format!("unknown command `{command}`")));
    }
    let dir = cfg.output_dir();
    let mut writer = ManifestWriter::begin(&dir, command, &cfg, tolerances(&cfg))?;
    let outcome = match command {
        "forward" => forward(&cfg, &dir, &mut writer.manifest),
        "invert" => invert(&cfg, &dir, &mut writer.manifest),
        "roundtrip" => roundtrip(&cfg, &dir, &mut writer.manifest),
        "diagnose" => diagnose(&cfg, &dir, &mut writer.manifest),
        _ => oracle(&cfg, &dir, &mut writer.manifest),
    };
    match outcome {
        Ok(results) => writer.finish(results),
        Err(e) => {
            writer.fail(&e)?;
            Err(e)
        }
    }
}

struct Problem {
    grid: TorusGrid,
    format: FieldFormat,
    phi: SpectralField,
}

fn problem(cfg: &RunConfig) -> Result<Problem> {
    let grid = cfg.grid()?;
    let phi = load_field(cfg.phi.as_ref().unwrap_or(&FieldSpec::Named("zero".into())), grid)?;
    Ok(Problem { grid, format: cfg.field_format.unwrap_or_default(), phi })
}

fn write_spectral(dir: &Path, name: &str, format: FieldFormat, field: &SpectralField, manifest: &mut Manifest) -> Result<()> {
    let file = format!("{name}.{}", format.extension());
    write_field(&dir.join(&file), field.grid(), &synthesize(field)?)?;
    manifest.outputs.push(file);
    Ok(())
}

fn write_table(dir: &Path, name: &str, header: &[&str], rows: &[Vec<String>], manifest: &mut Manifest) -> Result<()> {
    write_csv(&dir.join(name), header, rows)?;
    manifest.outputs.push(name.to_string());
    Ok(())
}

fn write_trajectories(
    dir: &Path,
    format: FieldFormat,
    times: &[f64],
    fields: &[SpectralField],
    manifest: &mut Manifest,
) -> Result<Vec<Vec<String>>> {
    let mut rows = Vec::new();
    for (k, (t, u)) in times.iter().zip(fields).enumerate() {
        write_spectral(dir, &format!("u_{k:03}"), format, u, manifest)?;
        let samples = synthesize(u)?;
        let max_abs = samples.iter().fold(0.0f64, |m, s| m.max(s.abs()));
        rows.push(vec![k.to_string(), fmt_f64(*t), fmt_f64(u.l2_norm()), fmt_f64(max_abs)]);
    }
    Ok(rows)
}

fn amplification_rows(cfg: &RunConfig, grid: TorusGrid) -> Result<Vec<Vec<String>>> {
    let profile = amplification_profile(cfg.rho()?, cfg.final_time()?, &cfg.symbol(grid.dim())?, &grid)?;
    Ok(profile.iter().enumerate().map(|(r, a)| vec![r.to_string(), fmt_f64(*a)]).collect())
}

fn forward(cfg: &RunConfig, dir: &Path, manifest: &mut Manifest) -> Result<serde_json::Value> {
    let Problem { grid, format, phi } = problem(cfg)?;
    let t_final = cfg.final_time()?;
    let source = load_field(config::require(cfg.source.as_ref(), "source")?, grid)?;
    let spec = ProblemSpec::forward(cfg.rho()?, t_final, cfg.symbol(grid.dim())?, phi, source)?;
    let times = cfg.times.clone().unwrap_or_else(|| vec![t_final]);
    let solution = solve_forward(&spec, &times)?;
    let rows = write_trajectories(dir, format, &times, &solution.trajectories, manifest)?;
    write_table(dir, "solution.csv", &["index", "t", "l2_norm", "max_abs"], &rows, manifest)?;

    let mut results = json!({ "grid": grid, "times": times });
    if let Some(path) = &cfg.reference {
        let (ref_grid, reference) = read_field(path)?;
        if ref_grid != grid {
            return Err(Error::Config(format!("reference grid {ref_grid:?} differs from run grid {grid:?}")));
        }
        let last = synthesize(solution.trajectories.last().ok_or_else(|| Error::Config("no output times".into()))?)?;
        let diff = last.iter().zip(&reference).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        results["reference_max_abs_diff"] = json!(diff);
        println!("max |u(T) - reference| = {diff:e}");
    }
    Ok(results)
}

fn invert(cfg: &RunConfig, dir: &Path, manifest: &mut Manifest) -> Result<serde_json::Value> {
    let Problem { grid, format, phi } = problem(cfg)?;
    let t_final = cfg.final_time()?;
    let psi = load_field(config::require(cfg.observation.as_ref(), "observation")?, grid)?;
    let spec = ProblemSpec::inverse(cfg.rho()?, t_final, cfg.symbol(grid.dim())?, phi, psi.clone())?;
    let mut times = cfg.times.clone().unwrap_or_default();
    if !times.contains(&t_final) {
        times.push(t_final);
    }
    let options = SolveOptions {
        amplification_floor: cfg.amplification_floor.unwrap_or(DEFAULT_AMPLIFICATION_FLOOR),
        cutoff: cfg.cutoff,
    };
    let solution = solve_inverse(&spec, &times, &options)?;
    write_spectral(dir, "source", format, &solution.source, manifest)?;
    let rows = write_trajectories(dir, format, &times, &solution.trajectories, manifest)?;
    write_table(dir, "solution.csv", &["index", "t", "l2_norm", "max_abs"], &rows, manifest)?;
    write_table(dir, "amplification.csv", &["shell", "amplification"], &amplification_rows(cfg, grid)?, manifest)?;

    let at_final = &solution.trajectories[times.iter().position(|&t| t == t_final).expect("T is in the list")];
    let residual = at_final.l2_distance(&psi)? / psi.l2_norm().max(f64::MIN_POSITIVE);
    manifest.overflowed_modes = solution.overflowed_modes.clone();
    Ok(json!({
        "grid": grid,
        "times": times,
        "observation_residual_relative_l2": residual,
        "overflowed_mode_count": solution.overflowed_modes.len(),
        "truncated_mode_count": solution.truncated_modes.len(),
    }))
}

fn roundtrip(cfg: &RunConfig, dir: &Path, manifest: &mut Manifest) -> Result<serde_json::Value> {
    let Problem { grid, format, phi } = problem(cfg)?;
    let source = load_field(config::require(cfg.source.as_ref(), "source")?, grid)?;
    let options = SolveOptions {
        amplification_floor: cfg.amplification_floor.unwrap_or(DEFAULT_AMPLIFICATION_FLOOR),
        cutoff: cfg.cutoff,
    };
    let symbol = cfg.symbol(grid.dim())?;
    let report = round_trip(cfg.rho()?, cfg.final_time()?, &symbol, &phi, &source, &options)?;
    write_spectral(dir, "observation", format, &report.observation, manifest)?;
    write_spectral(dir, "reconstructed_source", format, &report.reconstructed, manifest)?;

    let error_field = report.reconstructed.linear_combination(1.0, &source, -1.0)?;
    let rows = amplification_rows(cfg, grid)?
        .into_iter()
        .zip(shell_maxima(&source).into_iter().zip(shell_maxima(&error_field)))
        .map(|(mut row, (s, e))| {
            row.push(fmt_f64(s));
            row.push(fmt_f64(e));
            row
        })
        .collect::<Vec<_>>();
    write_table(dir, "shells.csv", &["shell", "amplification", "source_max", "error_max"], &rows, manifest)?;

    let tol = tolerances(cfg);
    manifest.overflowed_modes = report.overflowed_modes.clone();
    println!("source relative l2 error: {:e}", report.source_error);
    println!("observation relative l2 error: {:e}", report.observation_error);
    Ok(json!({
        "grid": grid,
        "source_relative_l2_error": report.source_error,
        "observation_relative_l2_error": report.observation_error,
        "source_within_tolerance": report.source_error <= tol.round_trip_source_relative_l2,
        "observation_within_tolerance": report.observation_error <= tol.round_trip_observation_relative_l2,
        "overflowed_mode_count": report.overflowed_modes.len(),
        "truncated_mode_count": report.truncated_modes.len(),
    }))
}

fn diagnose(cfg: &RunConfig, dir: &Path, manifest: &mut Manifest) -> Result<serde_json::Value> {
    let Problem { grid, phi, .. } = problem(cfg)?;
    let psi = load_field(config::require(cfg.observation.as_ref(), "observation")?, grid)?;
    let spec = ProblemSpec::inverse(cfg.rho()?, cfg.final_time()?, cfg.symbol(grid.dim())?, phi, psi)?;
    let report = check_conditions(&spec, &cfg.thresholds())?;
    std::fs::write(dir.join("report.json"), serde_json::to_string_pretty(&report)? + "\n")?;
    manifest.outputs.push("report.json".into());
    let rows: Vec<Vec<String>> =
        report.amplification.iter().enumerate().map(|(r, a)| vec![r.to_string(), fmt_f64(*a)]).collect();
    write_table(dir, "amplification.csv", &["shell", "amplification"], &rows, manifest)?;
    println!("verdict: {}", serde_json::to_value(report.verdict)?.as_str().unwrap_or_default());
    Ok(json!({ "grid": grid, "verdict": report.verdict, "amplification_flagged": report.amplification_flagged }))
}

fn oracle(cfg: &RunConfig, dir: &Path, manifest: &mut Manifest) -> Result<serde_json::Value> {
    let problem = ModeProblem {
        rho: cfg.rho()?,
        lambda: config::require(cfg.lambda, "lambda")?,
        phi: cfg.phi_n.unwrap_or(1.0),
        source: cfg.source_n.unwrap_or(0.0),
        final_time: cfg.final_time()?,
    };
    if !(problem.lambda >= 0.0) {
        return Err(Error::Config(format!("lambda must be >= 0, got {}", problem.lambda)));
    }
    let ladder = cfg.ladder.clone().unwrap_or_else(|| vec![256, 512, 1024, 2048]);
    if ladder.len() < 2 || ladder.iter().any(|&m| m < 2) {
        return Err(Error::Config("ladder needs at least two step counts, each >= 2".into()));
    }
    let study = convergence_study(&problem, &ladder, cfg.start_correction.unwrap_or(true))?;
    let rows: Vec<Vec<String>> = study
        .steps
        .iter()
        .zip(&study.errors)
        .enumerate()
        .map(|(i, (m, e))| {
            let order = if i == 0 { String::new() } else { fmt_f64(study.orders[i - 1]) };
            vec![m.to_string(), fmt_f64(problem.final_time / *m as f64), fmt_f64(*e), order]
        })
        .collect();
    write_table(dir, "convergence.csv", &["steps", "dt", "abs_error", "observed_order"], &rows, manifest)?;
    println!("fitted order {:.4} (expected {:.4})", study.fitted_order, 2.0 - problem.rho.value());
    Ok(json!({
        "exact": study.exact,
        "fitted_order": study.fitted_order,
        "expected_order": 2.0 - problem.rho.value(),
    }))
}
