//! Chebyshev polynomials of the first kind.
//!
//! `T_0 = 1`, `T_1(x) = x`, `T_q(x) = 2x·T_{q-1}(x) - T_{q-2}(x)`. Inside
//! `[-1,1]` the polynomials oscillate in `[-1,1]`; outside they grow
//! exponentially in `q`, which is the amplification the recursive sign
//! embedding exploits.
//!
//! [`chebyshev_scaled`] evaluates the integer rescaling `w^q · T_q(u/w)`
//! exactly in `i128`, so threshold values derived from it carry no rounding
//! error.

use crate::error::{Error, Result};

/// Evaluates `T_q(x)` iteratively in double precision.
pub fn chebyshev(q: u32, x: f64) -> f64 {
    if q == 0 {
        return 1.0;
    }
    let (mut prev, mut cur) = (1.0, x);
    for _ in 1..q {
        (prev, cur) = (cur, 2.0 * x * cur - prev);
    }
    cur
}

/// Evaluates `w^q · T_q(u/w)` exactly over the integers.
///
/// Uses `r_0 = 1`, `r_1 = u`, `r_k = 2u·r_{k-1} - w²·r_{k-2}`, which keeps
/// every intermediate an integer. Requires `w > 0`; fails if any
/// intermediate overflows `i128`.
pub fn chebyshev_scaled(q: u32, u: i128, w: i128) -> Result<i128> {
    if w <= 0 {
        return Err(Error::InvalidParameter(format!(
            "chebyshev scale w must be positive, got {w}"
        )));
    }
    if q == 0 {
        return Ok(1);
    }
    let overflow =
        || Error::InvalidParameter(format!("chebyshev_scaled({q}, {u}, {w}) overflows i128"));
    let w2 = w.checked_mul(w).ok_or_else(overflow)?;
    let (mut prev, mut cur) = (1i128, u);
    for _ in 1..q {
        let next = u
            .checked_mul(cur)
            .and_then(|t| t.checked_mul(2))
            .and_then(|t| t.checked_sub(w2.checked_mul(prev)?))
            .ok_or_else(overflow)?;
        (prev, cur) = (cur, next);
    }
    Ok(cur)
}
