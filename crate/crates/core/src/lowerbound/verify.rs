//! Exhaustive staircase verification.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::join::JoinMode;
use crate::vector::RealVector;

use super::sequence::HardSequence;

/// Norm slack and product tolerance of the verifier.
const NORM_SLACK: f64 = 1e-12;

/// A product that landed on the wrong side of its threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    /// Query index `i`.
    pub query: usize,
    /// Data index `j`.
    pub data: usize,
    /// The offending similarity score.
    pub score: f64,
    /// What the staircase required of it.
    pub bound: f64,
    /// True when the score had to be at least the bound.
    pub lower_side: bool,
}

/// Outcome of checking all `n²` products and all `2n` norms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    /// Whether every check passed.
    pub pass: bool,
    /// Pair count.
    pub n: usize,
    /// Comparison mode used.
    pub mode: JoinMode,
    /// `min over j ≥ i of score - s`; nonnegative when the upper
    /// staircase holds.
    pub upper_margin: f64,
    /// `min over j < i of cs - score`; nonnegative when the lower
    /// staircase holds. Infinite at `n = 1`.
    pub lower_margin: f64,
    /// Largest data norm.
    pub max_data_norm: f64,
    /// Largest query norm.
    pub max_query_norm: f64,
    /// Lexicographically first `(i, j)` violating the staircase.
    pub first_violation: Option<Violation>,
}

#[derive(Clone, Copy)]
struct RowSummary {
    upper: f64,
    lower: f64,
    violation: Option<Violation>,
}

fn score(product: f64, mode: JoinMode) -> f64 {
    match mode {
        JoinMode::Signed => product,
        JoinMode::Unsigned => product.abs(),
    }
}

/// Checks the staircase in the sequence's own comparison mode.
///
/// All `n²` products are tested: `score(qᵢ·p_j) ≥ s` for `j ≥ i` and
/// `≤ cs` for `j < i`, to tolerance `1e-12·(1+s)`, plus `‖p‖ ≤ 1` and
/// `‖q‖ ≤ U` to relative slack `1e-12`. The report carries the worst
/// margin on each side.
pub fn verify_sequence(seq: &HardSequence) -> Result<VerificationReport> {
    verify_sequence_as(seq, seq.case().mode())
}

/// [`verify_sequence`] under an explicit comparison mode.
pub fn verify_sequence_as(seq: &HardSequence, mode: JoinMode) -> Result<VerificationReport> {
    let s = seq.s();
    let cs = seq.c() * s;
    let tolerance = NORM_SLACK * (1.0 + s.abs());
    let data = seq.data();

    let rows: Vec<RowSummary> = seq
        .queries()
        .par_iter()
        .enumerate()
        .map(|(i, q)| row_summary(i, q, data, s, cs, mode, tolerance))
        .collect::<Result<Vec<_>>>()?;

    let mut upper = f64::INFINITY;
    let mut lower = f64::INFINITY;
    let mut first_violation = None;
    for row in rows {
        upper = upper.min(row.upper);
        lower = lower.min(row.lower);
        if first_violation.is_none() {
            first_violation = row.violation;
        }
    }
    let max_data_norm = data.iter().map(RealVector::norm).fold(0.0, f64::max);
    let max_query_norm = seq.queries().iter().map(RealVector::norm).fold(0.0, f64::max);
    let norms_ok = max_data_norm <= 1.0 + NORM_SLACK && max_query_norm <= seq.u() * (1.0 + NORM_SLACK);

    Ok(VerificationReport {
        pass: first_violation.is_none() && norms_ok,
        n: seq.len(),
        mode,
        upper_margin: upper,
        lower_margin: lower,
        max_data_norm,
        max_query_norm,
        first_violation,
    })
}

fn row_summary(
    i: usize,
    q: &RealVector,
    data: &[RealVector],
    s: f64,
    cs: f64,
    mode: JoinMode,
    tolerance: f64,
) -> Result<RowSummary> {
    let mut row = RowSummary { upper: f64::INFINITY, lower: f64::INFINITY, violation: None };
    for (j, p) in data.iter().enumerate() {
        let value = score(q.dot(p)?, mode);
        let (margin, bound, lower_side) =
            if j >= i { (value - s, s, true) } else { (cs - value, cs, false) };
        if j >= i {
            row.upper = row.upper.min(margin);
        } else {
            row.lower = row.lower.min(margin);
        }
        if margin < -tolerance && row.violation.is_none() {
            row.violation = Some(Violation { query: i, data: j, score: value, bound, lower_side });
        }
    }
    Ok(row)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lowerbound::case1::seq_case1_1d;
    use crate::lowerbound::case2::seq_case2;
    use crate::lowerbound::sequence::SequenceCase;

    #[test]
    fn pinned_case1_instance_passes_with_tight_diagonal() {
        let seq = seq_case1_1d(0.25, 0.5, 1.0).unwrap();
        let report = verify_sequence(&seq).unwrap();
        assert!(report.pass);
        assert_eq!(report.mode, JoinMode::Unsigned);
        // Diagonal products equal s exactly, so the upper margin is 0.
        assert_eq!(report.upper_margin, 0.0);
        assert_eq!(report.lower_margin, 0.0);
        assert!(report.first_violation.is_none());
        assert!(report.max_data_norm <= 1.0);
    }

    #[test]
    fn corrupted_entry_is_located() {
        let seq = seq_case1_1d(0.25, 0.5, 1.0).unwrap();
        let mut data: Vec<RealVector> = seq.data().to_vec();
        data[1] = RealVector::new(vec![0.0]).unwrap();
        let broken = HardSequence::from_parts(
            seq.queries().to_vec(),
            data,
            seq.s(),
            seq.c(),
            seq.u(),
            SequenceCase::Case1a,
        )
        .unwrap();
        let report = verify_sequence(&broken).unwrap();
        assert!(!report.pass);
        let violation = report.first_violation.unwrap();
        assert_eq!((violation.query, violation.data), (0, 1));
        assert!(violation.lower_side);
        assert_eq!(violation.score, 0.0);
    }

    #[test]
    fn case2_fails_unsigned_but_passes_signed() {
        let seq = seq_case2(0.01, 0.5, 1.0, 2).unwrap();
        assert!(verify_sequence(&seq).unwrap().pass);
        let unsigned = verify_sequence_as(&seq, JoinMode::Unsigned).unwrap();
        assert!(!unsigned.pass);
        let violation = unsigned.first_violation.unwrap();
        assert!(!violation.lower_side);
        assert!(violation.query > violation.data);
    }

    #[test]
    fn norm_violations_fail_without_product_violations() {
        let v = RealVector::new(vec![2.0]).unwrap();
        let seq = HardSequence::from_parts(
            vec![v.clone()],
            vec![v],
            1.0,
            0.5,
            4.0,
            SequenceCase::Case1a,
        )
        .unwrap();
        let report = verify_sequence(&seq).unwrap();
        assert!(!report.pass);
        assert!(report.first_violation.is_none());
        assert_eq!(report.max_data_norm, 2.0);
    }

    #[test]
    fn single_pair_lower_margin_is_infinite() {
        let seq = seq_case1_1d(0.5, 0.5, 1.0).unwrap();
        // n = 2 here; shrink to n = 1 by hand.
        let solo = HardSequence::from_parts(
            vec![seq.queries()[0].clone()],
            vec![seq.data()[0].clone()],
            seq.s(),
            seq.c(),
            seq.u(),
            SequenceCase::Case1a,
        )
        .unwrap();
        let report = verify_sequence(&solo).unwrap();
        assert!(report.pass);
        assert!(report.lower_margin.is_infinite());
    }
}
