//! Staircase query/data sequences.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::join::JoinMode;
use crate::vector::RealVector;

/// Which construction produced a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SequenceCase {
    /// One-dimensional geometric staircase.
    Case1a,
    /// Block translation of the geometric staircase to `d ≥ 2`.
    Case1b,
    /// Arithmetic staircase; signed-only.
    Case2,
    /// Prefix sums over an incoherent family.
    Case3,
}

impl SequenceCase {
    /// The comparison mode the staircase is guaranteed under.
    pub fn mode(&self) -> JoinMode {
        match self {
            SequenceCase::Case2 => JoinMode::Signed,
            _ => JoinMode::Unsigned,
        }
    }
}

/// A hard instance for `(cs, s)` inner-product search: `n` queries and
/// `n` data vectors whose similarity matrix is a staircase.
///
/// The defining property, checked by [`verify_sequence`]
/// (`crate::lowerbound::verify_sequence`): `qᵢ·p_j ≥ s` when `j ≥ i` and
/// `≤ cs` when `j < i` (absolute values in unsigned mode), with
/// `‖p_j‖ ≤ 1` and `‖qᵢ‖ ≤ U`.
#[derive(Debug, Clone, PartialEq)]
pub struct HardSequence {
    queries: Vec<RealVector>,
    data: Vec<RealVector>,
    s: f64,
    c: f64,
    u: f64,
    case: SequenceCase,
}

impl HardSequence {
    /// Assembles a sequence from parts, validating the pairing shape.
    pub fn from_parts(
        queries: Vec<RealVector>,
        data: Vec<RealVector>,
        s: f64,
        c: f64,
        u: f64,
        case: SequenceCase,
    ) -> Result<Self> {
        if queries.is_empty() || queries.len() != data.len() {
            return Err(Error::InvalidParameter(format!(
                "sequence needs equally many queries and data vectors, got {} and {}",
                queries.len(),
                data.len()
            )));
        }
        let dim = queries[0].dim();
        for v in queries.iter().chain(&data) {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: v.dim() });
            }
        }
        check_parameters(s, c, u)?;
        Ok(Self { queries, data, s, c, u, case })
    }

    /// Number of query/data pairs.
    pub fn len(&self) -> usize {
        self.queries.len()
    }

    /// Always false; empty sequences cannot be constructed.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.queries[0].dim()
    }

    /// Queries `q₀, …, q_{n-1}`, norms at most `U`.
    pub fn queries(&self) -> &[RealVector] {
        &self.queries
    }

    /// Data vectors `p₀, …, p_{n-1}`, norms at most 1.
    pub fn data(&self) -> &[RealVector] {
        &self.data
    }

    /// Upper staircase threshold.
    pub fn s(&self) -> f64 {
        self.s
    }

    /// Approximation factor; the lower staircase threshold is `c·s`.
    pub fn c(&self) -> f64 {
        self.c
    }

    /// Query ball radius.
    pub fn u(&self) -> f64 {
        self.u
    }

    /// The construction that produced this sequence.
    pub fn case(&self) -> SequenceCase {
        self.case
    }
}

pub(crate) fn check_parameters(s: f64, c: f64, u: f64) -> Result<()> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::InvalidParameter(format!("s must be positive and finite, got {s}")));
    }
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::InvalidParameter(format!("c must lie in (0, 1), got {c}")));
    }
    if !(u > 0.0 && u.is_finite()) {
        return Err(Error::InvalidParameter(format!("U must be positive and finite, got {u}")));
    }
    Ok(())
}

/// `⌊log_{1/c}(x)⌋` with a dust guard so exact powers land on the integer.
pub(crate) fn floor_log_recip(c: f64, x: f64) -> i64 {
    ((x.ln() / (1.0 / c).ln()) + 1e-9).floor() as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_parts_validates_shape() {
        let v = RealVector::new(vec![0.5]).unwrap();
        assert!(HardSequence::from_parts(
            vec![v.clone()],
            vec![],
            0.1,
            0.5,
            1.0,
            SequenceCase::Case1a
        )
        .is_err());
        let w = RealVector::new(vec![0.5, 0.5]).unwrap();
        assert!(HardSequence::from_parts(
            vec![v.clone()],
            vec![w],
            0.1,
            0.5,
            1.0,
            SequenceCase::Case1a
        )
        .is_err());
        assert!(HardSequence::from_parts(
            vec![v.clone()],
            vec![v.clone()],
            0.1,
            1.0,
            1.0,
            SequenceCase::Case1a
        )
        .is_err());
        let seq = HardSequence::from_parts(
            vec![v.clone()],
            vec![v],
            0.1,
            0.5,
            1.0,
            SequenceCase::Case1a,
        )
        .unwrap();
        assert_eq!((seq.len(), seq.dim()), (1, 1));
    }

    #[test]
    fn floor_log_hits_exact_powers() {
        assert_eq!(floor_log_recip(0.5, 4.0), 2);
        assert_eq!(floor_log_recip(0.5, 2.0), 1);
        assert_eq!(floor_log_recip(0.5, 3.9), 1);
        // 0.9⁻²⁰ computed in floats still floors to 20.
        let x = (1.0f64 / 0.9).powi(20);
        assert_eq!(floor_log_recip(0.9, x), 20);
    }

    #[test]
    fn case_modes() {
        assert_eq!(SequenceCase::Case2.mode(), JoinMode::Signed);
        assert_eq!(SequenceCase::Case1a.mode(), JoinMode::Unsigned);
        assert_eq!(SequenceCase::Case3.mode(), JoinMode::Unsigned);
    }
}
