use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::Value;

use super::config::RunConfig;
use crate::{Error, Result};

/// Fixed 17-significant-digit rendering used in every CSV table.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_path(path).map_err(csv_error)?;
    writer.write_record(header).map_err(csv_error)?;
    for row in rows {
        writer.write_record(row).map_err(csv_error)?;
    }
    writer.flush()?;
    Ok(())
}

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Config(format!("csv: {other:?}")),
    }
}

fn now() -> String {
    let t = SystemTime::now().duration_since(UNIX_EPOCH).unwrap_or_default();
    format!("{}.{:09}", t.as_secs(), t.subsec_nanos())
}

/// Target accuracies, recorded in every manifest.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Tolerances {
    pub mittag_leffler_relative: f64,
    pub round_trip_source_relative_l2: f64,
    pub round_trip_observation_relative_l2: f64,
    pub amplification_floor: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Running,
    Complete,
    Failed,
}

/// Run manifest. Wall-clock data is confined to `timestamps`, which is
/// written on a line of its own; everything else depends only on the
/// configuration.
#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub status: Status,
    pub timestamps: String,
    pub config: RunConfig,
    pub tolerances: Tolerances,
    pub results: Value,
    pub overflowed_modes: Vec<Vec<i64>>,
    pub outputs: Vec<String>,
    pub error: Option<String>,
}

/// Writes the manifest before the computation starts and rewrites it when
/// the run completes or fails.
pub struct ManifestWriter {
    path: PathBuf,
    started: String,
    pub manifest: Manifest,
}

impl ManifestWriter {
    pub fn begin(dir: &Path, command: &str, config: &RunConfig, tolerances: Tolerances) -> Result<Self> {
        fs::create_dir_all(dir)?;
        let started = now();
        let manifest = Manifest {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            status: Status::Running,
            timestamps: format!("started={started}"),
            config: config.clone(),
            tolerances,
            results: Value::Null,
            overflowed_modes: Vec::new(),
            outputs: Vec::new(),
            error: None,
        };
        let writer = Self { path: dir.join("manifest.json"), started, manifest };
        writer.write()?;
        Ok(writer)
    }

    fn write(&self) -> Result<()> {
        fs::write(&self.path, serde_json::to_string_pretty(&self.manifest)? + "\n")?;
        Ok(())
    }

    pub fn finish(mut self, results: Value) -> Result<()> {
        self.manifest.status = Status::Complete;
        self.manifest.results = results;
        self.manifest.timestamps = format!("started={} finished={}", self.started, now());
        self.write()
    }

    pub fn fail(mut self, error: &Error) -> Result<()> {
        self.manifest.status = Status::Failed;
        self.manifest.error = Some(error.to_string());
        self.manifest.timestamps = format!("started={} finished={}", self.started, now());
        self.write()
    }
}
