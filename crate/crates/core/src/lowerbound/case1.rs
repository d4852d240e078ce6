//! Geometric staircases: the one-dimensional sequence and its block
//! translation to higher dimension.

use crate::error::{Error, Result};
use crate::vector::RealVector;

use super::sequence::{check_parameters, floor_log_recip, HardSequence, SequenceCase};

/// One-dimensional geometric staircase `qᵢ = Ucⁱ`, `p_j = s/(Uc^j)`.
///
/// Products are exactly `c^{i-j}·s`, so the staircase holds with
/// equality on both boundaries. The sequence has `⌊log_{1/c}(U/s)⌋ + 1`
/// entries, the longest run keeping `p` inside the unit ball.
pub fn seq_case1_1d(s: f64, c: f64, u: f64) -> Result<HardSequence> {
    check_parameters(s, c, u)?;
    if s > c * u {
        return Err(Error::InvalidParameter(format!(
            "need s ≤ c·U for a nontrivial staircase, got s = {s} > {}",
            c * u
        )));
    }
    let n = floor_log_recip(c, u / s) + 1;
    let queries =
        (0..n).map(|i| RealVector::from_unchecked(vec![u * c.powi(i as i32)])).collect();
    let data =
        (0..n).map(|j| RealVector::from_unchecked(vec![s / (u * c.powi(j as i32))])).collect();
    HardSequence::from_parts(queries, data, s, c, u, SequenceCase::Case1a)
}

/// Block translation of the geometric staircase to even `d ≥ 2`.
///
/// Each of the `d/2` blocks runs a copy of the one-dimensional sequence
/// on its own even coordinate. Queries of block `k` carry `2s` on the
/// odd coordinates of blocks `k, …, d/2-1`; data vectors of block `k > 0`
/// carry `1/2` on the odd coordinate of block `k-1`. A data vector from
/// a later block then meets every earlier block's query in exactly
/// `2s·½ = s`, and one from an earlier block in `0`, so concatenating
/// the blocks preserves the staircase globally.
///
/// The translation mass inflates norms at the ends of each block, so a
/// common index window is kept: leading queries (norm above `U`) and
/// trailing data vectors (norm above 1) are dropped, together with their
/// partners.
pub fn seq_case1_blocked(s: f64, c: f64, u: f64, d: usize) -> Result<HardSequence> {
    check_parameters(s, c, u)?;
    if d < 2 || d % 2 != 0 {
        return Err(Error::InvalidParameter(format!("d must be even and at least 2, got {d}")));
    }
    let bound = (c * u).min(u / (2.0 * (d as f64).sqrt()));
    if s > bound {
        return Err(Error::InvalidParameter(format!(
            "need s ≤ min(cU, U/(2√d)) = {bound}, got {s}"
        )));
    }
    let blocks = d / 2;
    let length = floor_log_recip(c, u / s) + 1;

    // Worst query norm is at block 0 (all d/2 translation entries); worst
    // data norm has the 1/2 entry whenever any block carries one.
    let query_mass = 4.0 * s * s * blocks as f64;
    let data_mass = if blocks > 1 { 0.25 } else { 0.0 };
    let start = (0..length)
        .find(|&i| {
            let head = u * c.powi(i as i32);
            (head * head + query_mass).sqrt() <= u
        })
        .ok_or_else(|| Error::InvalidParameter("no query survives the norm filter".into()))?;
    let end = (start..length)
        .take_while(|&j| {
            let head = s / (u * c.powi(j as i32));
            (head * head + data_mass).sqrt() <= 1.0
        })
        .last()
        .ok_or_else(|| Error::InvalidParameter("query and data windows do not overlap".into()))?;
    let window: Vec<i64> = (start..=end).collect();

    let mut queries = Vec::with_capacity(blocks * window.len());
    let mut data = Vec::with_capacity(blocks * window.len());
    for k in 0..blocks {
        for &i in &window {
            let mut q = vec![0.0; d];
            q[2 * k] = u * c.powi(i as i32);
            for t in k..blocks {
                q[2 * t + 1] = 2.0 * s;
            }
            queries.push(RealVector::from_unchecked(q));
        }
        for &j in &window {
            let mut p = vec![0.0; d];
            p[2 * k] = s / (u * c.powi(j as i32));
            if k > 0 {
                p[2 * k - 1] = 0.5;
            }
            data.push(RealVector::from_unchecked(p));
        }
    }
    HardSequence::from_parts(queries, data, s, c, u, SequenceCase::Case1b)
}
