//! Query exponents for lifted MIPS.
//!
//! The `ρ` value of an LSH scheme is `log P₁ / log P₂`; query time scales
//! as `n^ρ`, so smaller is better. Two calculators are provided for the
//! same lifted problem (thresholds `s` and `cs` inside the query ball of
//! radius `U`):
//!
//! - [`rho_datadep`]: the exponent achievable by data-dependent hashing on
//!   the sphere at distance threshold `r = √(2(1-s/U))` and approximation
//!   `c' = √((1-cs/U)/(1-s/U))`, namely `ρ = 1/(2c'²-1)`.
//! - [`rho_simple`]: plain hyperplane hashing applied at the two
//!   thresholds, `ρ = ln(1-acos(s)/π) / ln(1-acos(cs)/π)`.
//!
//! The data-dependent exponent is strictly smaller throughout `(0,1)²`
//! (checked pointwise by the test suites, not assumed).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Result of [`rho_datadep`] with the intermediate sphere parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RhoDataDep {
    /// The query exponent.
    pub rho: f64,
    /// Sphere distance threshold `√(2(1-s/U))`.
    pub r: f64,
    /// Sphere approximation factor `√((1-cs/U)/(1-s/U))`; infinite at the
    /// `s/U = 1` boundary.
    pub c_prime: f64,
}

fn check_c(c: f64) -> Result<()> {
    if !(c > 0.0 && c <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "approximation factor c must lie in (0, 1], got {c}"
        )));
    }
    Ok(())
}

/// Data-dependent exponent `ρ = (1 - s/U)/(1 + (1-2c)·s/U)`.
///
/// At `s/U ≥ 1` with `c < 1` the exponent collapses to the `ρ = 0`
/// boundary (queries at the ball surface match exactly); `c = 1` there is
/// degenerate and rejected, as is any parameter pair that zeroes the
/// denominator.
pub fn rho_datadep(s_over_u: f64, c: f64) -> Result<RhoDataDep> {
    if !(s_over_u > 0.0 && s_over_u.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "s/U must be positive and finite, got {s_over_u}"
        )));
    }
    check_c(c)?;
    if s_over_u >= 1.0 {
        if c == 1.0 {
            return Err(Error::InvalidParameter(
                "rho is degenerate at s/U = 1 with c = 1".into(),
            ));
        }
        return Ok(RhoDataDep { rho: 0.0, r: 0.0, c_prime: f64::INFINITY });
    }
    let denom = 1.0 + (1.0 - 2.0 * c) * s_over_u;
    if denom <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "degenerate denominator 1 + (1-2c)s/U = {denom} at s/U={s_over_u}, c={c}"
        )));
    }
    Ok(RhoDataDep {
        rho: (1.0 - s_over_u) / denom,
        r: (2.0 * (1.0 - s_over_u)).sqrt(),
        c_prime: ((1.0 - c * s_over_u) / (1.0 - s_over_u)).sqrt(),
    })
}

/// Hyperplane-hashing exponent `ln(1-acos(s)/π) / ln(1-acos(cs)/π)`
/// at `U = 1`; requires `0 < s < 1` (and yields 1 at `c = 1`).
pub fn rho_simple(s: f64, c: f64) -> Result<f64> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "threshold s must lie in (0, 1), got {s}"
        )));
    }
    check_c(c)?;
    if c == 1.0 {
        return Ok(1.0);
    }
    let p1 = 1.0 - s.acos() / std::f64::consts::PI;
    let p2 = 1.0 - (c * s).acos() / std::f64::consts::PI;
    Ok(p1.ln() / p2.ln())
}
