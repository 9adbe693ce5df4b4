//! Field files. The format follows the extension.
//!
//! `.bin`: magic `TFLD`, then little-endian `u32` version (1), `u32` `N`,
//! `N` × `u32` points per axis, then `P^N` `f64` samples in row-major order
//! (last axis fastest).
//!
//! `.json`: `{"dim": N, "points_per_dim": P, "samples": [...]}` with the
//! samples as `N`-deep nested arrays indexed like the binary payload.

use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use crate::torus_spectral::TorusGrid;
use crate::{Error, Result};

const MAGIC: &[u8; 4] = b"TFLD";
const VERSION: u32 = 1;

pub fn write_field(path: &Path, grid: TorusGrid, samples: &[f64]) -> Result<()> {
    if samples.len() != grid.len() {
        return Err(Error::Shape { expected: grid.len(), actual: samples.len() });
    }
    match extension(path)? {
        "bin" => fs::write(path, encode_binary(grid, samples))?,
        _ => fs::write(path, serde_json::to_string(&encode_json(grid, samples))? + "\n")?,
    }
    Ok(())
}

pub fn read_field(path: &Path) -> Result<(TorusGrid, Vec<f64>)> {
    match extension(path)? {
        "bin" => decode_binary(&fs::read(path)?).map_err(|e| Error::Config(format!("{}: {e}", path.display()))),
        _ => {
            let value: Value = serde_json::from_str(&fs::read_to_string(path)?)
                .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
            decode_json(&value).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
        }
    }
}

fn extension(path: &Path) -> Result<&'static str> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("bin") => Ok("bin"),
        Some("json") => Ok("json"),
        _ => Err(Error::Config(format!("{}: field files must end in .bin or .json", path.display()))),
    }
}

pub fn encode_binary(grid: TorusGrid, samples: &[f64]) -> Vec<u8> {
    let mut out = Vec::with_capacity(12 + 4 * grid.dim() + 8 * samples.len());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&(grid.dim() as u32).to_le_bytes());
    for _ in 0..grid.dim() {
        out.extend_from_slice(&(grid.points_per_dim() as u32).to_le_bytes());
    }
    for s in samples {
        out.extend_from_slice(&s.to_le_bytes());
    }
    out
}

fn decode_binary(bytes: &[u8]) -> std::result::Result<(TorusGrid, Vec<f64>), String> {
    let word = |i: usize| -> std::result::Result<u32, String> {
        bytes
            .get(i..i + 4)
            .map(|b| u32::from_le_bytes(b.try_into().unwrap()))
            .ok_or_else(|| "truncated header".to_string())
    };
    if bytes.get(..4) != Some(MAGIC.as_slice()) {
        return Err("missing TFLD magic".into());
    }
    if word(4)? != VERSION {
        return Err(format!("unsupported version {}", word(4)?));
    }
    let dim = word(8)? as usize;
    if dim == 0 || dim > 16 {
        return Err(format!("bad dimension {dim}"));
    }
    let points: Vec<usize> = (0..dim).map(|j| word(12 + 4 * j).map(|p| p as usize)).collect::<std::result::Result<_, _>>()?;
    if points.iter().any(|&p| p != points[0]) {
        return Err(format!("unequal axis lengths {points:?}"));
    }
    let grid = TorusGrid::new(dim, points[0]).map_err(|e| e.to_string())?;
    let payload = &bytes[12 + 4 * dim..];
    if payload.len() != 8 * grid.len() {
        return Err(format!("expected {} payload bytes, found {}", 8 * grid.len(), payload.len()));
    }
    Ok((grid, payload.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().unwrap())).collect()))
}

fn encode_json(grid: TorusGrid, samples: &[f64]) -> Value {
    fn nest(samples: &[f64], depth: usize, p: usize) -> Value {
        if depth == 1 {
            return json!(samples);
        }
        Value::Array(samples.chunks(samples.len() / p).map(|c| nest(c, depth - 1, p)).collect())
    }
    json!({
        "dim": grid.dim(),
        "points_per_dim": grid.points_per_dim(),
        "samples": nest(samples, grid.dim(), grid.points_per_dim()),
    })
}

fn decode_json(value: &Value) -> std::result::Result<(TorusGrid, Vec<f64>), String> {
    fn flatten(value: &Value, depth: usize, p: usize, out: &mut Vec<f64>) -> std::result::Result<(), String> {
        let items = value.as_array().ok_or("samples must be nested arrays")?;
        if items.len() != p {
            return Err(format!("axis of length {} where {p} expected", items.len()));
        }
        for item in items {
            if depth == 1 {
                out.push(item.as_f64().ok_or("samples must be numbers")?);
            } else {
                flatten(item, depth - 1, p, out)?;
            }
        }
        Ok(())
    }
    let dim = value["dim"].as_u64().ok_or("missing `dim`")? as usize;
    let points = value["points_per_dim"].as_u64().ok_or("missing `points_per_dim`")? as usize;
    let grid = TorusGrid::new(dim, points).map_err(|e| e.to_string())?;
    let mut samples = Vec::with_capacity(grid.len());
    flatten(&value["samples"], dim, points, &mut samples)?;
    Ok((grid, samples))
}
