use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Uniform grid on `T^N` with `P` points per direction (`P` even).
///
/// Linear indices are row-major (last axis fastest). Along each axis the
/// storage slot `k` holds frequency `k` for `k <= P/2` and `k - P` above, so
/// the frequency box is `{-P/2+1, …, P/2}^N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusGrid {
    dim: usize,
    points: usize,
}

impl TorusGrid {
    pub fn new(dim: usize, points: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Config("torus dimension must be at least 1".into()));
        }
        if points < 2 || points % 2 != 0 {
            return Err(Error::Config(format!("points per dimension must be even and >= 2, got {points}")));
        }
        points
            .checked_pow(dim as u32)
            .filter(|&n| n <= 1 << 28)
            .ok_or_else(|| Error::Config(format!("grid {points}^{dim} is too large")))?;
        Ok(Self { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points_per_dim(&self) -> usize {
        self.points
    }

    /// Total number of samples (= number of modes), `P^N`.
    pub fn len(&self) -> usize {
        self.points.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Highest frequency along an axis, `P/2`.
    pub fn nyquist(&self) -> i64 {
        (self.points / 2) as i64
    }

    fn slot_frequency(&self, slot: usize) -> i64 {
        if slot <= self.points / 2 {
            slot as i64
        } else {
            slot as i64 - self.points as i64
        }
    }

    /// Frequency vector stored at linear index `index`.
    pub fn frequency(&self, index: usize) -> Vec<i64> {
        let mut n = vec![0; self.dim];
        let mut rest = index;
        for axis in (0..self.dim).rev() {
            n[axis] = self.slot_frequency(rest % self.points);
            rest /= self.points;
        }
        n
    }

    /// Linear index of frequency `n`, or `None` outside the frequency box.
    pub fn index_of(&self, n: &[i64]) -> Option<usize> {
        if n.len() != self.dim {
            return None;
        }
        let p = self.points as i64;
        let mut index = 0usize;
        for &nj in n {
            if nj <= -p / 2 || nj > p / 2 {
                return None;
            }
            index = index * self.points + nj.rem_euclid(p) as usize;
        }
        Some(index)
    }

    /// Index holding frequency `-n` (taken modulo `P`, so Nyquist slots map
    /// to themselves).
    pub fn mirror_index(&self, index: usize) -> usize {
        let mut mirrored = 0usize;
        let mut stride = 1usize;
        let mut rest = index;
        for _ in 0..self.dim {
            let slot = rest % self.points;
            rest /= self.points;
            mirrored += ((self.points - slot) % self.points) * stride;
            stride *= self.points;
        }
        mirrored
    }

    /// All frequency vectors in storage order.
    pub fn frequencies(&self) -> Vec<Vec<i64>> {
        (0..self.len()).map(|i| self.frequency(i)).collect()
    }

    /// `|n|²` for every storage slot.
    pub fn squared_radii(&self) -> Vec<f64> {
        (0..self.len())
            .map(|i| self.frequency(i).iter().map(|&v| (v * v) as f64).sum())
            .collect()
    }

    /// Coordinates of sample `index`.
    pub fn point(&self, index: usize) -> Vec<f64> {
        let h = 2.0 * PI / self.points as f64;
        let mut x = vec![0.0; self.dim];
        let mut rest = index;
        for axis in (0..self.dim).rev() {
            x[axis] = h * (rest % self.points) as f64;
            rest /= self.points;
        }
        x
    }
}
