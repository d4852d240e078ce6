//! Incoherent vector families and the symmetric MIPS lift.
//!
//! An `ε`-incoherent family is a set of unit vectors with pairwise
//! absolute inner products at most `ε`. Reed-Solomon codewords give a
//! deterministic construction: vector `u` has entries `1/√q` exactly at
//! the `q` positions `(a, P_u(a))` of a `q×q` grid, where `P_u` is the
//! polynomial over `F_q` whose coefficients are the base-`q` digits of
//! `u`. Two distinct degree-`< t` polynomials agree on at most `t-1`
//! points, so all pairwise inner products lie in `{0, 1/q, …, (t-1)/q}`.
//!
//! [`symmetric_lift`] pads a vector `x` with `√(1-‖x‖²)·v_u`, where `u`
//! indexes `x`'s exact fixed-point encoding. The same map serves data and
//! queries, keeps outputs on the unit sphere, and distorts any inner
//! product by at most the family coherence.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vector::RealVector;

/// Largest prime considered by the family search.
const PRIME_CAP: u64 = 1 << 16;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// Reed-Solomon incoherent family over `F_q` with degree bound `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IncoherentFamily {
    q: u64,
    t: u32,
    epsilon: f64,
}

/// Finds the cheapest Reed-Solomon family holding at least `count` unit
/// vectors with pairwise coherence at most `epsilon`.
///
/// Tries degree bounds `t = 1, 2, …`; for each, takes the smallest prime
/// `q` with `(t-1)/q ≤ epsilon` and accepts the first `t` whose capacity
/// `q^t` reaches `count`. Primes are capped at 2¹⁶; demands beyond the
/// cap fail with [`Error::FamilyInfeasible`].
pub fn build_incoherent(count: u128, epsilon: f64) -> Result<IncoherentFamily> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "coherence bound must lie in (0, 1), got {epsilon}"
        )));
    }
    if count == 0 {
        return Err(Error::InvalidParameter("family must hold at least one vector".into()));
    }
    for t in 1u32..=170 {
        let q = match (2..=PRIME_CAP)
            .find(|&q| is_prime(q) && (t - 1) as f64 / q as f64 <= epsilon)
        {
            Some(q) => q,
            None => break,
        };
        let capacity = (q as u128).checked_pow(t);
        if capacity.map_or(true, |cap| cap >= count) {
            return Ok(IncoherentFamily { q, t, epsilon });
        }
    }
    Err(Error::FamilyInfeasible(format!(
        "no (q ≤ {PRIME_CAP}, t) gives q^t ≥ {count} at coherence ≤ {epsilon}"
    )))
}

impl IncoherentFamily {
    /// Field size (prime).
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Degree bound; coherence is at most `(t-1)/q`.
    pub fn t(&self) -> u32 {
        self.t
    }

    /// The requested coherence bound.
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Realized coherence bound `(t-1)/q`.
    pub fn coherence(&self) -> f64 {
        (self.t - 1) as f64 / self.q as f64
    }

    /// Ambient dimension `q²`.
    pub fn dim(&self) -> usize {
        (self.q * self.q) as usize
    }

    /// Number of distinct vectors, `q^t` (saturating).
    pub fn capacity(&self) -> u128 {
        (self.q as u128).checked_pow(self.t).unwrap_or(u128::MAX)
    }

    fn check_index(&self, u: u128) -> Result<()> {
        if u >= self.capacity() {
            return Err(Error::InvalidParameter(format!(
                "vector index {u} outside family capacity {}",
                self.capacity()
            )));
        }
        Ok(())
    }

    /// The `q` nonzero positions of vector `u` (each holding `1/√q`).
    pub fn support(&self, u: u128) -> Result<Vec<usize>> {
        self.check_index(u)?;
        let q = self.q as u128;
        let mut digits = Vec::with_capacity(self.t as usize);
        let mut rest = u;
        for _ in 0..self.t {
            digits.push((rest % q) as u64);
            rest /= q;
        }
        let eval = |a: u64| {
            digits
                .iter()
                .rev()
                .fold(0u64, |acc, &coeff| (acc * a + coeff) % self.q)
        };
        Ok((0..self.q).map(|a| (a * self.q + eval(a)) as usize).collect())
    }

    /// Dense unit vector for index `u`.
    pub fn vector(&self, u: u128) -> Result<RealVector> {
        let mut entries = vec![0.0; self.dim()];
        let value = 1.0 / (self.q as f64).sqrt();
        for pos in self.support(u)? {
            entries[pos] = value;
        }
        Ok(RealVector::from_unchecked(entries))
    }
}

/// Exact `k`-bit two's-complement fixed-point coordinates at scale
/// `2^{-(k-1)}`, packed row-major (coordinate 0 most significant) into a
/// `dk`-bit index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointCodec {
    k: u32,
    d: usize,
}

impl FixedPointCodec {
    /// Validates `k ≥ 1`, `d ≥ 1` and index width `dk ≤ 128`.
    pub fn new(k: u32, d: usize) -> Result<Self> {
        if k == 0 || d == 0 {
            return Err(Error::InvalidParameter(
                "codec needs k ≥ 1 bits and d ≥ 1 coordinates".into(),
            ));
        }
        if d as u128 * k as u128 > 128 {
            return Err(Error::InvalidParameter(format!(
                "index width d·k = {} exceeds 128 bits",
                d * k as usize
            )));
        }
        Ok(Self { k, d })
    }

    /// Bits per coordinate.
    pub fn bits(&self) -> u32 {
        self.k
    }

    /// Coordinate count.
    pub fn dim(&self) -> usize {
        self.d
    }

    /// Number of encodable vectors, `2^{dk}`.
    pub fn index_space(&self) -> u128 {
        match self.d as u32 * self.k {
            128 => u128::MAX, // 2^128 - 1 stands in for the unreachable 2^128
            width => 1u128 << width,
        }
    }

    fn scale(&self) -> f64 {
        (1u64 << (self.k - 1)) as f64
    }

    /// Exact encoding of a representable vector.
    pub fn encode(&self, x: &RealVector) -> Result<u128> {
        if x.dim() != self.d {
            return Err(Error::DimensionMismatch { left: self.d, right: x.dim() });
        }
        let scale = self.scale();
        let half = 1i64 << (self.k - 1);
        let mask = if self.k == 64 { u64::MAX } else { (1u64 << self.k) - 1 };
        let mut index = 0u128;
        for (i, &v) in x.entries().iter().enumerate() {
            let m = v * scale;
            if m.fract() != 0.0 || m < -(half as f64) || m > (half - 1) as f64 {
                return Err(Error::NonRepresentable { index: i, value: v, bits: self.k });
            }
            let word = (m as i64 as u64) & mask;
            index = (index << self.k) | u128::from(word);
        }
        Ok(index)
    }

    /// Inverse of [`encode`](Self::encode).
    pub fn decode(&self, index: u128) -> RealVector {
        let scale = self.scale();
        let mask = if self.k == 64 { u128::MAX } else { (1u128 << self.k) - 1 };
        let sign_bit = 1u64 << (self.k - 1);
        let entries = (0..self.d)
            .map(|i| {
                let shift = (self.d - 1 - i) as u32 * self.k;
                let word = ((index >> shift) & mask) as u64;
                let m = if word & sign_bit != 0 {
                    word as i64 - (1i64 << self.k)
                } else {
                    word as i64
                };
                m as f64 / scale
            })
            .collect();
        RealVector::from_unchecked(entries)
    }

    /// Nearest representable vector (rounding half away from zero,
    /// clamping to the representable range).
    pub fn quantize(&self, x: &RealVector) -> Result<RealVector> {
        if x.dim() != self.d {
            return Err(Error::DimensionMismatch { left: self.d, right: x.dim() });
        }
        let scale = self.scale();
        let half = 1i64 << (self.k - 1);
        let entries = x
            .entries()
            .iter()
            .map(|&v| {
                let m = (v * scale).round().clamp(-(half as f64), (half - 1) as f64);
                m / scale
            })
            .collect();
        Ok(RealVector::from_unchecked(entries))
    }
}

/// Symmetric sphere lift: `x ↦ (x, √(1-‖x‖²)·v_u)` with `u = encode(x)`.
///
/// The same map applies to data and queries. For distinct encodable
/// inputs the lifted inner product differs from `x·y` by at most the
/// family coherence `(t-1)/q`; identical inputs lift to identical unit
/// vectors (product 1).
pub fn symmetric_lift(
    x: &RealVector,
    codec: &FixedPointCodec,
    family: &IncoherentFamily,
) -> Result<RealVector> {
    let norm = x.norm();
    if norm > 1.0 + 1e-12 {
        return Err(Error::NormViolation { role: "lift input", index: None, norm, bound: 1.0 });
    }
    let u = codec.encode(x)?;
    if u >= family.capacity() {
        return Err(Error::InvalidParameter(format!(
            "family capacity {} cannot index the {}-bit codec space",
            family.capacity(),
            codec.dim() as u32 * codec.bits()
        )));
    }
    let tail = (1.0 - norm * norm).max(0.0).sqrt();
    let mut entries = x.entries().to_vec();
    entries.resize(x.dim() + family.dim(), 0.0);
    let value = tail / (family.q() as f64).sqrt();
    for pos in family.support(u)? {
        entries[x.dim() + pos] = value;
    }
    Ok(RealVector::from_unchecked(entries))
}
