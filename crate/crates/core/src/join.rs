//! Approximate similarity-join parameters.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Whether a join compares raw inner products or their absolute values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JoinMode {
    /// Compare `p·q` directly.
    Signed,
    /// Compare `|p·q|`.
    Unsigned,
}

/// Parameters of a `(cs, s)` similarity join.
///
/// For each query `q`, a join must report some pair `(p, q)` with similarity
/// at least `c·s` whenever any data vector reaches similarity `s`; queries
/// below the threshold come with no guarantee. `c < 1` is the approximation
/// slack that makes sub-quadratic algorithms possible.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JoinSpec {
    /// Similarity threshold, positive.
    pub s: f64,
    /// Approximation factor in `(0, 1)`.
    pub c: f64,
    /// Signed or unsigned comparison.
    pub mode: JoinMode,
}

impl JoinSpec {
    /// Validates `s > 0` and `c ∈ (0, 1)`.
    pub fn new(s: f64, c: f64, mode: JoinMode) -> Result<Self> {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "join threshold s must be positive and finite, got {s}"
            )));
        }
        if !(c > 0.0 && c < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "approximation factor c must lie in (0, 1), got {c}"
            )));
        }
        Ok(Self { s, c, mode })
    }

    /// The relaxed threshold `c·s` that reported pairs must reach.
    pub fn cs(&self) -> f64 {
        self.c * self.s
    }
}
