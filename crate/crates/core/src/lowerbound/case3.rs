//! The prefix-sum staircase over an incoherent family.

use crate::error::{Error, Result};
use crate::lsh::build_incoherent;
use crate::vector::RealVector;

use super::sequence::{check_parameters, HardSequence, SequenceCase};

/// Entry budget for the generated vectors (16 GiB of f64).
const ENTRY_BUDGET: u128 = 1 << 31;

/// Index of the `z`-vector for the length-`len` prefix with bit value
/// `value`; prefixes of all lengths share one family.
fn z_index(len: u32, value: u64) -> u128 {
    (1u128 << len) - 2 + value as u128
}

/// Staircase from comparisons encoded in binary prefixes.
///
/// With `ℓ = ⌊√(U/(8s))⌋` and `n = 2^ℓ`, query `i` and data vector `j`
/// are mapped to the `(ℓ+1)`-bit numbers `a_q = 2^{ℓ-1} + i` and
/// `a_p = 2^{ℓ-1} + j + 1`. The query sums, over the zero bits of `a_q`,
/// the `z`-vectors of the one-longer prefix with that bit flipped; the
/// data vector sums, over the one bits of `a_p`, the `z`-vectors of the
/// prefix itself. Exactly one summand coincides iff `a_p > a_q`, i.e.
/// iff `j ≥ i`. The `z`-family is incoherent with `ε = c/(2ℓ²)`, and
/// each side carries at most `ℓ` summands (two at `ℓ = 1`), so scaling
/// queries by `√(2sU)` and data by `√(2s/U)` puts matched products at
/// `2s` minus at most `cs` of cross terms, unmatched ones below `cs`,
/// and all norms inside the balls.
pub fn seq_case3(s: f64, c: f64, u: f64) -> Result<HardSequence> {
    check_parameters(s, c, u)?;
    if s > u / 8.0 {
        return Err(Error::InvalidParameter(format!("need s ≤ U/8 = {}, got {s}", u / 8.0)));
    }
    let ell = ((u / (8.0 * s)).sqrt() + 1e-9).floor() as u32;
    if ell > 40 {
        return Err(Error::InvalidParameter(format!(
            "U/s = {} asks for 2^{ell} pairs; refusing",
            u / s
        )));
    }
    let n = 1usize << ell;
    let bits = ell + 1;
    let base = 1u64 << (ell - 1);
    let epsilon = c / (2.0 * (ell as f64).powi(2));
    let family = build_incoherent((1u128 << (bits + 1)) - 2, epsilon)?;
    let dim = family.dim();
    if 2 * (n as u128) * (dim as u128) > ENTRY_BUDGET {
        return Err(Error::InvalidParameter(format!(
            "instance needs 2·{n}·{dim} entries, over the generator budget"
        )));
    }
    let entry = 1.0 / (family.q() as f64).sqrt();
    let q_scale = (2.0 * s * u).sqrt() * entry;
    let p_scale = (2.0 * s / u).sqrt() * entry;

    let accumulate = |a: u64, want_bit: u64, flip: bool, scale: f64| -> Result<RealVector> {
        let mut entries = vec![0.0; dim];
        for pos in 0..bits {
            let shift = bits - 1 - pos;
            if (a >> shift) & 1 != want_bit {
                continue;
            }
            let prefix = (a >> shift) | u64::from(flip);
            for slot in family.support(z_index(pos + 1, prefix))? {
                entries[slot] += scale;
            }
        }
        Ok(RealVector::from_unchecked(entries))
    };

    let queries = (0..n as u64)
        .map(|i| accumulate(base + i, 0, true, q_scale))
        .collect::<Result<Vec<_>>>()?;
    let data = (0..n as u64)
        .map(|j| accumulate(base + j + 1, 1, false, p_scale))
        .collect::<Result<Vec<_>>>()?;
    HardSequence::from_parts(queries, data, s, c, u, SequenceCase::Case3)
}

/// The summand count `ℓ = log₂ n` of [`seq_case3`] at the given `s/U`.
pub fn case3_levels(s: f64, u: f64) -> u32 {
    ((u / (8.0 * s)).sqrt() + 1e-9).floor() as u32
}
