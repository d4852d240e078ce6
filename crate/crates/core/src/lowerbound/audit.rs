//! Empirical collision-gap audit of a hash family on a staircase.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lsh::{binomial_estimate, AsymmetricLift, CollisionEstimate, CollisionFamily};
use crate::rng::Seed;

use super::sequence::HardSequence;

/// Result of auditing collision probabilities against the gap bound.
///
/// For a staircase of length `n`, no hash family can separate the upper
/// pairs from the lower pairs by more than `1/(8·log₂ n)`: the audit
/// estimates `P₁ = min` collision probability over pairs `j ≥ i` and
/// `P₂ = max` over pairs `j < i` and checks
/// `P₁ - P₂ ≤ 1/(8·log₂ n) + 3σ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapAudit {
    /// Pair count of the audited sequence.
    pub n: usize,
    /// `1/(8·log₂ n)`.
    pub bound: f64,
    /// Smallest estimated collision probability over pairs `j ≥ i`.
    pub p1_min: CollisionEstimate,
    /// Largest estimated collision probability over pairs `j < i`.
    pub p2_max: CollisionEstimate,
    /// `p1_min - p2_max`.
    pub gap: f64,
    /// Whether the gap respects the bound within `3σ`.
    pub pass: bool,
    /// Hash functions drawn per pair.
    pub trials: u64,
}

/// Estimates the collision gap of `family` on the lifted sequence.
///
/// Queries are lifted by `1/U` onto the unit sphere and data vectors
/// padded to unit norm, then every `(i, j)` pair's collision probability
/// is estimated over `trials` hash draws. Hash function `t` is the
/// family's draw under `(seed, t)`, so the counts match per-pair
/// [`estimate_collision`](crate::lsh::estimate_collision) runs with the
/// same estimator seed exactly, and are independent of thread count.
pub fn gap_audit<F: CollisionFamily>(
    seq: &HardSequence,
    family: &F,
    trials: u64,
    seed: Seed,
) -> Result<GapAudit> {
    let n = seq.len();
    if n < 2 {
        return Err(Error::InvalidParameter(
            "gap audit needs at least two pairs for a positive bound".into(),
        ));
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let lift = AsymmetricLift::new(seq.u())?;
    let queries = seq
        .queries()
        .iter()
        .map(|q| lift.lift_query(q))
        .collect::<Result<Vec<_>>>()?;
    let data = seq.data().iter().map(|p| lift.lift_data(p)).collect::<Result<Vec<_>>>()?;

    let counts = (0..trials)
        .into_par_iter()
        .try_fold(
            || vec![0u64; n * n],
            |mut acc, t| -> Result<Vec<u64>> {
                let query_codes =
                    queries.iter().map(|q| family.query_code(seed, t, q)).collect::<Result<Vec<_>>>()?;
                let data_codes =
                    data.iter().map(|p| family.data_code(seed, t, p)).collect::<Result<Vec<_>>>()?;
                for (i, qc) in query_codes.iter().enumerate() {
                    let row = &mut acc[i * n..(i + 1) * n];
                    for (slot, dc) in row.iter_mut().zip(&data_codes) {
                        *slot += u64::from(qc == dc);
                    }
                }
                Ok(acc)
            },
        )
        .try_reduce(
            || vec![0u64; n * n],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                Ok(a)
            },
        )?;

    let mut p1_hits = u64::MAX;
    let mut p2_hits = 0u64;
    for i in 0..n {
        for j in 0..n {
            let hits = counts[i * n + j];
            if j >= i {
                p1_hits = p1_hits.min(hits);
            } else {
                p2_hits = p2_hits.max(hits);
            }
        }
    }
    let p1_min = binomial_estimate(p1_hits, trials);
    let p2_max = binomial_estimate(p2_hits, trials);
    let bound = 1.0 / (8.0 * (n as f64).log2());
    let gap = p1_min.p_hat - p2_max.p_hat;
    let sigma = (p1_min.stderr.powi(2) + p2_max.stderr.powi(2)).sqrt();
    Ok(GapAudit { n, bound, p1_min, p2_max, gap, pass: gap <= bound + 3.0 * sigma, trials })
}
