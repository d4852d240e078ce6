//! The arithmetic staircase, valid for signed comparison only.

use crate::error::{Error, Result};
use crate::vector::RealVector;

use super::sequence::{check_parameters, HardSequence, SequenceCase};

/// Arithmetic staircase on even `d ≥ 2`, block structure as in the
/// geometric case.
///
/// Within block `k`, `qᵢ = (√(sU)(1-(1-c)i), √(sU(1-c)))` and
/// `p_j = (√(s/U), j√(s(1-c)/U))` on coordinates `(2k, 2k+1)`, giving
/// the exact identity `qᵢ·p_j = s(1-c)(j-i) + s`: equal to `s` on the
/// diagonal and to `cs` at `j = i-1`. Queries additionally carry `√(sU)`
/// on the even coordinates of all later blocks, meeting later data
/// vectors in exactly `s` and earlier ones in `0`.
///
/// For `j` far below `i` the identity goes negative beyond `-cs`, so the
/// staircase survives signed comparison only.
pub fn seq_case2(s: f64, c: f64, u: f64, d: usize) -> Result<HardSequence> {
    check_parameters(s, c, u)?;
    if d < 2 || d % 2 != 0 {
        return Err(Error::InvalidParameter(format!("d must be even and at least 2, got {d}")));
    }
    if s > u / (2.0 * d as f64) {
        return Err(Error::InvalidParameter(format!(
            "need s ≤ U/(2d) = {}, got {s}",
            u / (2.0 * d as f64)
        )));
    }
    let blocks = d / 2;
    let q_head = (s * u).sqrt();
    let q_slack = (s * u * (1.0 - c)).sqrt();
    let p_head = (s / u).sqrt();
    let p_slack = (s * (1.0 - c) / u).sqrt();
    // Worst query block is k = 0, carrying all blocks-1 cross entries.
    let cross_mass = s * u * (blocks - 1) as f64;
    let query_ok = |i: usize| {
        let head = q_head * (1.0 - (1.0 - c) * i as f64);
        (head * head + q_slack * q_slack + cross_mass).sqrt() <= u
    };
    let data_ok = |j: usize| {
        let tail = p_slack * j as f64;
        (p_head * p_head + tail * tail).sqrt() <= 1.0
    };
    let length = (0..)
        .take_while(|&t| query_ok(t) && data_ok(t))
        .last()
        .map(|t| t + 1)
        .ok_or_else(|| Error::InvalidParameter("no index survives the norm filter".into()))?;

    let mut queries = Vec::with_capacity(blocks * length);
    let mut data = Vec::with_capacity(blocks * length);
    for k in 0..blocks {
        for i in 0..length {
            let mut q = vec![0.0; d];
            q[2 * k] = q_head * (1.0 - (1.0 - c) * i as f64);
            q[2 * k + 1] = q_slack;
            for t in k + 1..blocks {
                q[2 * t] = q_head;
            }
            queries.push(RealVector::from_unchecked(q));
        }
        for j in 0..length {
            let mut p = vec![0.0; d];
            p[2 * k] = p_head;
            p[2 * k + 1] = p_slack * j as f64;
            data.push(RealVector::from_unchecked(p));
        }
    }
    HardSequence::from_parts(queries, data, s, c, u, SequenceCase::Case2)
}

/// Per-block length of [`seq_case2`].
pub fn case2_block_length(seq: &HardSequence) -> usize {
    let blocks = seq.dim() / 2;
    seq.len() / blocks
}
