//! Asymmetric lift from MIPS to angular search on the sphere.

use crate::error::{Error, Result};
use crate::vector::RealVector;

const NORM_SLACK: f64 = 1e-12;

/// Distinct data/query maps onto the unit sphere in `d+2` dimensions.
///
/// A data vector `p` (inside the unit ball) maps to
/// `(p, √(1-‖p‖²), 0)` and a query `q` (inside the ball of radius `U`)
/// to `(q/U, 0, √(1-‖q‖²/U²))`. Both images are unit vectors and their
/// inner product is `(p·q)/U`, so inner-product thresholds `s` and `cs`
/// become angular thresholds on the sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymmetricLift {
    u: f64,
}

impl AsymmetricLift {
    /// Validates the query-ball radius `U ≥ 1`.
    pub fn new(u: f64) -> Result<Self> {
        if !(u >= 1.0 && u.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "query-ball radius U must be finite and at least 1, got {u}"
            )));
        }
        Ok(Self { u })
    }

    /// The query-ball radius.
    pub fn u(&self) -> f64 {
        self.u
    }

    /// Lifts a data vector; requires `‖p‖ ≤ 1`.
    pub fn lift_data(&self, p: &RealVector) -> Result<RealVector> {
        let norm = p.norm();
        if norm > 1.0 + NORM_SLACK {
            return Err(Error::NormViolation {
                role: "data",
                index: None,
                norm,
                bound: 1.0,
            });
        }
        let mut entries = p.entries().to_vec();
        entries.push((1.0 - norm * norm).max(0.0).sqrt());
        entries.push(0.0);
        Ok(RealVector::from_unchecked(entries))
    }

    /// Lifts a query vector; requires `‖q‖ ≤ U`.
    pub fn lift_query(&self, q: &RealVector) -> Result<RealVector> {
        let norm = q.norm();
        if norm > self.u * (1.0 + NORM_SLACK) {
            return Err(Error::NormViolation {
                role: "query",
                index: None,
                norm,
                bound: self.u,
            });
        }
        let scaled = norm / self.u;
        let mut entries: Vec<f64> = q.entries().iter().map(|e| e / self.u).collect();
        entries.push(0.0);
        entries.push((1.0 - scaled * scaled).max(0.0).sqrt());
        Ok(RealVector::from_unchecked(entries))
    }
}
