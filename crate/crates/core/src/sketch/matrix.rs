//! The max-stability sketch matrix.

use rand::Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::Seed;
use crate::vector::RealVector;

/// Default row constant `C` in the row-count formula.
pub const DEFAULT_ROW_CONSTANT: f64 = 8.0;

/// Row count `⌈C · n^{1-2/κ} · ln(n+1)⌉` of a sketch over `n` inputs.
pub fn sketch_rows(n: usize, kappa: f64, row_constant: f64) -> Result<usize> {
    check_shape(n, kappa)?;
    if !(row_constant > 0.0 && row_constant.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "row constant must be positive and finite, got {row_constant}"
        )));
    }
    let m = row_constant * (n as f64).powf(1.0 - 2.0 / kappa) * ((n + 1) as f64).ln();
    Ok(m.ceil() as usize)
}

fn check_shape(n: usize, kappa: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("sketch needs at least one input coordinate".into()));
    }
    if !(kappa >= 2.0 && kappa.is_finite()) {
        return Err(Error::InvalidParameter(format!("kappa must be a finite real ≥ 2, got {kappa}")));
    }
    Ok(())
}

/// A random `m × n` linear map whose output `ℓ_∞` norm tracks the input
/// `ℓ_κ` norm.
///
/// Stage 1 scales coordinate `i` by `E_i^{-1/κ}` with `E_i` independent
/// unit-rate exponentials, so the largest scaled magnitude concentrates
/// near `‖x‖_κ`. Stage 2 folds the `n` scaled coordinates into `m`
/// buckets with independent uniform signs, keeping applications `O(n)`.
/// Sampling is deterministic in the seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SketchMatrix {
    kappa: f64,
    rows: usize,
    scales: Vec<f64>,
    signs: Vec<i8>,
    buckets: Vec<u32>,
}

impl SketchMatrix {
    /// Samples a sketch over `n` coordinates with the standard row count
    /// `⌈C · n^{1-2/κ} · ln(n+1)⌉`.
    pub fn sample(n: usize, kappa: f64, seed: Seed, row_constant: f64) -> Result<Self> {
        let rows = sketch_rows(n, kappa, row_constant)?;
        Self::sample_with_rows(n, kappa, rows, seed, 0)
    }

    /// Samples a sketch with an explicit row count, drawn from the given
    /// seed stream.
    pub fn sample_with_rows(
        n: usize,
        kappa: f64,
        rows: usize,
        seed: Seed,
        stream: u64,
    ) -> Result<Self> {
        check_shape(n, kappa)?;
        if rows == 0 || rows > u32::MAX as usize {
            return Err(Error::InvalidParameter(format!("row count {rows} out of range")));
        }
        let mut rng = seed.rng(stream);
        let mut scales = Vec::with_capacity(n);
        let mut signs = Vec::with_capacity(n);
        let mut buckets = Vec::with_capacity(n);
        for _ in 0..n {
            // Exp1 is positive; the floor only guards the reciprocal power.
            let e: f64 = rng.sample::<f64, _>(Exp1).max(1e-300);
            scales.push(e.powf(-1.0 / kappa));
            signs.push(if rng.gen::<bool>() { 1 } else { -1 });
            buckets.push(rng.gen_range(0..rows as u32));
        }
        Ok(Self { kappa, rows, scales, signs, buckets })
    }

    /// Output dimension `m`.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Input dimension `n`.
    pub fn input_dim(&self) -> usize {
        self.scales.len()
    }

    /// The norm order the sketch is calibrated for.
    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// Applies the map to an `n`-vector in `O(n)`.
    pub fn apply(&self, x: &RealVector) -> Result<RealVector> {
        if x.dim() != self.input_dim() {
            return Err(Error::DimensionMismatch { left: self.input_dim(), right: x.dim() });
        }
        let mut out = vec![0.0; self.rows];
        for (i, &v) in x.entries().iter().enumerate() {
            out[self.buckets[i] as usize] += self.signs[i] as f64 * self.scales[i] * v;
        }
        Ok(RealVector::from_unchecked(out))
    }

    /// Applies the map to each coordinate slice of `n` stacked `d`-vectors,
    /// producing the `m × d` matrix `Π·A` row by row.
    pub fn apply_stack(&self, stack: &[RealVector]) -> Result<Vec<RealVector>> {
        if stack.len() != self.input_dim() {
            return Err(Error::DimensionMismatch { left: self.input_dim(), right: stack.len() });
        }
        let dim = stack[0].dim();
        let mut out = vec![vec![0.0; dim]; self.rows];
        for (i, row) in stack.iter().enumerate() {
            if row.dim() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: row.dim() });
            }
            let coeff = self.signs[i] as f64 * self.scales[i];
            let target = &mut out[self.buckets[i] as usize];
            for (slot, &v) in target.iter_mut().zip(row.entries()) {
                *slot += coeff * v;
            }
        }
        Ok(out.into_iter().map(RealVector::from_unchecked).collect())
    }
}
