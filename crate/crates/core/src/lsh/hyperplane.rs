//! Random hyperplane (sign-of-projection) hashing.

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::Seed;
use crate::vector::RealVector;

const UNIT_NORM_TOLERANCE: f64 = 1e-9;

/// `k` concatenated hyperplane hash bits.
///
/// Hash function `fn_index` draws `k` Gaussian normal vectors from the
/// deterministic stream `(seed, fn_index)` and emits one sign bit per
/// projection, packed least-significant-first into a `u64`. A single bit
/// collides for unit vectors at angle `θ` with probability `1 - θ/π`; the
/// `k`-bit code collides with probability `(1 - θ/π)^k`.
///
/// The family is symmetric: data and queries hash identically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperplaneFamily {
    k: u32,
    seed: Seed,
}

impl HyperplaneFamily {
    /// Validates `1 ≤ k ≤ 64`.
    pub fn new(k: u32, seed: Seed) -> Result<Self> {
        if !(1..=64).contains(&k) {
            return Err(Error::InvalidParameter(format!(
                "hash width k must lie in 1..=64, got {k}"
            )));
        }
        Ok(Self { k, seed })
    }

    /// Number of concatenated bits.
    pub fn k(&self) -> u32 {
        self.k
    }

    /// The family's own seed (estimators may substitute their own).
    pub fn seed(&self) -> Seed {
        self.seed
    }

    /// Hash code under an explicit seed; `hash_index` selects one function
    /// from the family.
    pub fn code_with_seed(&self, seed: Seed, hash_index: u64, x: &RealVector) -> Result<u64> {
        let norm = x.norm();
        if (norm - 1.0).abs() > UNIT_NORM_TOLERANCE {
            return Err(Error::NormViolation {
                role: "hash input",
                index: None,
                norm,
                bound: 1.0,
            });
        }
        let mut rng = seed.rng(hash_index);
        let mut code = 0u64;
        for bit in 0..self.k {
            let dot: f64 = x
                .entries()
                .iter()
                .map(|&e| {
                    let g: f64 = rng.sample(StandardNormal);
                    g * e
                })
                .sum();
            if dot >= 0.0 {
                code |= 1 << bit;
            }
        }
        Ok(code)
    }
}

/// Hashes a unit vector with function `hash_index` of the family.
pub fn hyperplane_hash(family: &HyperplaneFamily, x: &RealVector, hash_index: u64) -> Result<u64> {
    family.code_with_seed(family.seed, hash_index, x)
}

/// A hash family with (possibly distinct) data-side and query-side codes,
/// usable by the Monte-Carlo collision estimator and the gap audit.
pub trait CollisionFamily: Sync {
    /// Data-side hash code for function `hash_index` under `seed`.
    fn data_code(&self, seed: Seed, hash_index: u64, x: &RealVector) -> Result<u64>;
    /// Query-side hash code for function `hash_index` under `seed`.
    fn query_code(&self, seed: Seed, hash_index: u64, y: &RealVector) -> Result<u64>;
}

impl CollisionFamily for HyperplaneFamily {
    fn data_code(&self, seed: Seed, hash_index: u64, x: &RealVector) -> Result<u64> {
        self.code_with_seed(seed, hash_index, x)
    }

    fn query_code(&self, seed: Seed, hash_index: u64, y: &RealVector) -> Result<u64> {
        self.code_with_seed(seed, hash_index, y)
    }
}

/// Monte-Carlo collision estimate with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CollisionEstimate {
    /// Empirical collision frequency.
    pub p_hat: f64,
    /// `√(p̂(1-p̂)/trials)`.
    pub stderr: f64,
}

/// Estimates `Pr[h(x) = h(y)]` over `trials` independent hash functions.
///
/// Trial `t` uses hash function `(seed, t)`, overriding the family's own
/// seed, so estimates with equal estimator seeds are reproducible across
/// thread counts.
pub fn estimate_collision<F: CollisionFamily>(
    family: &F,
    x: &RealVector,
    y: &RealVector,
    trials: u64,
    seed: Seed,
) -> Result<CollisionEstimate> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let hits = (0..trials)
        .into_par_iter()
        .map(|t| -> Result<u64> {
            let collide = family.data_code(seed, t, x)? == family.query_code(seed, t, y)?;
            Ok(u64::from(collide))
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(binomial_estimate(hits, trials))
}

pub(crate) fn binomial_estimate(hits: u64, trials: u64) -> CollisionEstimate {
    let p_hat = hits as f64 / trials as f64;
    CollisionEstimate {
        p_hat,
        stderr: (p_hat * (1.0 - p_hat) / trials as f64).sqrt(),
    }
}
