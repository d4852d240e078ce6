//! Gap embeddings from exact orthogonality to inner-product gaps.
//!
//! A *gap embedding* is a pair of maps `(f, g)` on `{0,1}^d` such that the
//! embedded inner product `f(x)·g(y)` lands at or above a threshold `s`
//! whenever `x·y = 0` and at or below `cs < s` (in absolute value for the
//! unsigned families) whenever `x·y ≥ 1`. Three families are provided:
//!
//! 1. [`embed1_data`]/[`embed1_query`] — signed `(d, 4d-4, 0, 4)` into
//!    `{-1,1}`: a per-coordinate substitution table plus a constant pad,
//!    giving embedded product exactly `4 - 4·(x·y)`.
//! 2. [`embed2_data`]/[`embed2_query`] — Chebyshev amplification of order
//!    `q` into `{-1,1}`: tensor-and-concatenate recursion whose product is
//!    exactly `(2d)^q · T_q(u/(2d))` with `u = 2d+2-4·(x·y)`, so orthogonal
//!    pairs sit on `T_q(1+1/d)` and everything else inside `[-1,1]`.
//! 3. [`embed3_data`]/[`embed3_query`] — chunked binary embedding
//!    `(d, Σᵢ 2^{lenᵢ}, k-1, k)` into `{0,1}`: the polynomial
//!    `Π(1-xⱼyⱼ)` chopped into `k` chunks, each expanded exactly.
//!
//! Output dimensions grow quickly ((`9d`)^q for family 2, `k·2^{⌈d/k⌉}` for
//! family 3), so the materializing operations take an explicit memory
//! budget and fail loudly instead of allocating without bound.
//!
//! [`profile`] reports the `(d₁, d₂, cs, s)` tuple of each family together
//! with the induced approximation factor `c = cs/s` and the normalized
//! exponent `ratio = log(s/d₂)/log(cs/d₂)` that governs how much of an
//! inner-product join's guarantee survives the reduction.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chebyshev::chebyshev_scaled;
use crate::dataset::{Dataset, Domain};
use crate::error::{Error, Result};
use crate::vector::{BinaryVector, SignVector};

/// Default cap on entries per embedded vector (2³⁰).
pub const DEFAULT_MEMORY_BUDGET: u128 = 1 << 30;

/// Chebyshev amplification order for family 2 (`q ≥ 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ChebyshevOrder(u32);

impl ChebyshevOrder {
    /// Validates `q ≥ 1`.
    pub fn new(q: u32) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidParameter(
                "Chebyshev order q must be at least 1".into(),
            ));
        }
        Ok(Self(q))
    }

    /// The order as an integer.
    pub fn get(self) -> u32 {
        self.0
    }
}

/// Chunk count for family 3 (`k ≥ 1`; `k ≤ d` is checked per call).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ChunkCount(usize);

impl ChunkCount {
    /// Validates `k ≥ 1`.
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter(
                "chunk count k must be at least 1".into(),
            ));
        }
        Ok(Self(k))
    }

    /// The count as an integer.
    pub fn get(self) -> usize {
        self.0
    }
}

/// Which of the three embedding families to apply, with its parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// Signed `(d, 4d-4, 0, 4)` substitution embedding.
    One,
    /// Chebyshev amplification of order `q`.
    Two(ChebyshevOrder),
    /// Chunked binary embedding with `k` chunks.
    Three(ChunkCount),
}

impl Family {
    /// Family number as used on the command line.
    pub fn id(self) -> u8 {
        match self {
            Family::One => 1,
            Family::Two(_) => 2,
            Family::Three(_) => 3,
        }
    }

    /// Whether the downstream join compares raw values (family 1) or
    /// absolute values (families 2 and 3).
    pub fn signed(self) -> bool {
        matches!(self, Family::One)
    }
}

/// Which half of the embedding pair `(f, g)` to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// The data map `f`.
    Data,
    /// The query map `g`.
    Query,
}

/// `(d₁, d₂, cs, s)` descriptor of one embedding family instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapEmbeddingProfile {
    /// Input dimension.
    pub d1: usize,
    /// Output dimension.
    pub d2: u128,
    /// Upper value for non-orthogonal pairs (absolute value when unsigned).
    pub cs: f64,
    /// Lower value for orthogonal pairs.
    pub s: f64,
    /// Entry alphabet of the embedded vectors.
    pub domain: Domain,
    /// True when the downstream join is signed.
    pub signed: bool,
}

impl GapEmbeddingProfile {
    /// Validates `cs < s` and `d2 ≥ 1`.
    pub fn new(
        d1: usize,
        d2: u128,
        cs: f64,
        s: f64,
        domain: Domain,
        signed: bool,
    ) -> Result<Self> {
        if d2 == 0 {
            return Err(Error::InvalidParameter(
                "output dimension d2 must be at least 1".into(),
            ));
        }
        if !(cs.is_finite() && s.is_finite() && cs < s) {
            return Err(Error::InvalidParameter(format!(
                "gap thresholds must satisfy cs < s, got cs={cs}, s={s}"
            )));
        }
        Ok(Self { d1, d2, cs, s, domain, signed })
    }
}

/// A [`GapEmbeddingProfile`] with its derived join quantities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileReport {
    /// The `(d₁, d₂, cs, s)` tuple.
    pub profile: GapEmbeddingProfile,
    /// Approximation factor `cs/s`.
    pub c: f64,
    /// Normalized exponent `log(s/d₂)/log(cs/d₂)`.
    pub ratio: f64,
}

/// Exact integer gap thresholds realized by a materialized family-2
/// embedding: `|product| ≤ cs` for non-orthogonal pairs and
/// `product = s` for orthogonal pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GapThresholds {
    /// `(2d)^q`.
    pub cs: i128,
    /// `(2d)^q · T_q(1 + 1/d)`, an exact integer.
    pub s: i128,
}

fn require_positive_dim(d: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidParameter(
            "input dimension must be positive".into(),
        ));
    }
    Ok(())
}

fn check_budget(required: u128, budget: u128) -> Result<()> {
    if required > budget {
        Err(Error::BudgetExceeded { required, budget })
    } else {
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Family 1: signed (d, 4d-4, 0, 4).
// ---------------------------------------------------------------------------

// Per-coordinate tables: f̂(a)·ĝ(b) = 1 except f̂(1)·ĝ(1) = -3, so the
// substituted blocks contribute d - 4·(x·y); the pads contribute -(d-4).
const F_HAT: [[i8; 3]; 2] = [[1, -1, -1], [1, 1, 1]];
const G_HAT: [[i8; 3]; 2] = [[1, 1, -1], [-1, -1, -1]];

fn embed1_side(x: &BinaryVector, table: &[[i8; 3]; 2], pad: i8) -> Result<SignVector> {
    let d = x.dim();
    if d < 4 {
        return Err(Error::InvalidParameter(format!(
            "family 1 requires dimension at least 4, got {d}"
        )));
    }
    let mut entries = Vec::with_capacity(4 * d - 4);
    for &bit in x.entries() {
        entries.extend_from_slice(&table[bit as usize]);
    }
    entries.resize(4 * d - 4, pad);
    Ok(SignVector::from_unchecked(entries))
}

/// Family-1 data map; `embed1_data(x)·embed1_query(y) = 4 - 4·(x·y)`.
pub fn embed1_data(x: &BinaryVector) -> Result<SignVector> {
    embed1_side(x, &F_HAT, 1)
}

/// Family-1 query map.
pub fn embed1_query(y: &BinaryVector) -> Result<SignVector> {
    embed1_side(y, &G_HAT, -1)
}

// ---------------------------------------------------------------------------
// Family 2: Chebyshev amplification.
// ---------------------------------------------------------------------------

/// Output dimension of the order-`q` family-2 embedding:
/// `D₀ = 1`, `D₁ = 4d+2`, `D_q = 2(4d+2)·D_{q-1} + (2d)²·D_{q-2}`.
pub fn embed2_dim(d: usize, q: ChebyshevOrder) -> Result<u128> {
    require_positive_dim(d)?;
    let overflow = || {
        Error::InvalidParameter(format!(
            "family 2 output dimension for d={d}, q={} overflows u128",
            q.get()
        ))
    };
    let base = 4 * d as u128 + 2;
    let square = (2 * d as u128) * (2 * d as u128);
    let (mut prev2, mut prev) = (1u128, base);
    for _ in 2..=q.get() {
        let next = prev
            .checked_mul(2 * base)
            .and_then(|t| t.checked_add(square.checked_mul(prev2)?))
            .ok_or_else(overflow)?;
        (prev2, prev) = (prev, next);
    }
    Ok(prev)
}

/// Exact gap thresholds of the order-`q` family-2 construction.
pub fn embed2_thresholds(d: usize, q: ChebyshevOrder) -> Result<GapThresholds> {
    require_positive_dim(d)?;
    let overflow = || {
        Error::InvalidParameter(format!(
            "family 2 thresholds for d={d}, q={} overflow i128",
            q.get()
        ))
    };
    let cs = (2 * d as i128).checked_pow(q.get()).ok_or_else(overflow)?;
    let s = chebyshev_scaled(q.get(), 2 * d as i128 + 2, 2 * d as i128)?;
    Ok(GapThresholds { cs, s })
}

fn embed2_base(x: &BinaryVector, table: &[[i8; 3]; 2]) -> SignVector {
    let d = x.dim();
    let mut entries = Vec::with_capacity(4 * d + 2);
    for &bit in x.entries() {
        entries.extend_from_slice(&table[bit as usize]);
    }
    // Translation pad of d+2 ones lifts the base product to 2d+2 - 4·(x·y).
    entries.resize(4 * d + 2, 1);
    SignVector::from_unchecked(entries)
}

fn embed2_side(
    x: &BinaryVector,
    q: ChebyshevOrder,
    budget: u128,
    table: &[[i8; 3]; 2],
    negate_tail: bool,
) -> Result<SignVector> {
    let d = x.dim();
    check_budget(embed2_dim(d, q)?, budget)?;
    let base = embed2_base(x, table);
    if q.get() == 1 {
        return Ok(base);
    }
    let square = (2 * d) * (2 * d);
    let mut prev2 = SignVector::from_unchecked(vec![1]);
    let mut prev = base.clone();
    for _ in 2..=q.get() {
        let tail = if negate_tail {
            prev2.negate().repeat(square)
        } else {
            prev2.repeat(square)
        };
        let next = base.tensor(&prev).repeat(2).concat(&tail);
        (prev2, prev) = (prev, next);
    }
    Ok(prev)
}

/// Family-2 data map of order `q`.
///
/// The embedded product with [`embed2_query`] equals
/// `(2d)^q · T_q(u/(2d))` exactly, where `u = 2d+2 - 4·(x·y)`. Fails with
/// [`Error::BudgetExceeded`] when the output dimension exceeds `budget`.
pub fn embed2_data(x: &BinaryVector, q: ChebyshevOrder, budget: u128) -> Result<SignVector> {
    embed2_side(x, q, budget, &F_HAT, false)
}

/// Family-2 query map of order `q`.
pub fn embed2_query(y: &BinaryVector, q: ChebyshevOrder, budget: u128) -> Result<SignVector> {
    embed2_side(y, q, budget, &G_HAT, true)
}

// ---------------------------------------------------------------------------
// Family 3: chunked binary embedding.
// ---------------------------------------------------------------------------

fn chunk_bounds(d: usize, k: usize, i: usize) -> (usize, usize) {
    let len = d.div_ceil(k);
    let lo = (i * len).min(d);
    let hi = (lo + len).min(d);
    (lo, hi)
}

fn check_chunks(d: usize, k: ChunkCount) -> Result<()> {
    require_positive_dim(d)?;
    if k.get() > d {
        return Err(Error::InvalidParameter(format!(
            "chunk count k={} exceeds dimension d={d}",
            k.get()
        )));
    }
    Ok(())
}

/// Output dimension of the `k`-chunk family-3 embedding:
/// `Σᵢ 2^{lenᵢ} ≤ k·2^{⌈d/k⌉}`.
pub fn embed3_dim(d: usize, k: ChunkCount) -> Result<u128> {
    check_chunks(d, k)?;
    let mut dim = 0u128;
    for i in 0..k.get() {
        let (lo, hi) = chunk_bounds(d, k.get(), i);
        let chunk = 1u128.checked_shl((hi - lo) as u32).ok_or_else(|| {
            Error::InvalidParameter(format!(
                "family 3 output dimension for d={d}, k={} overflows u128",
                k.get()
            ))
        })?;
        dim += chunk;
    }
    Ok(dim)
}

fn embed3_side(x: &BinaryVector, k: ChunkCount, budget: u128, query: bool) -> Result<BinaryVector> {
    let d = x.dim();
    let dim = embed3_dim(d, k)?;
    check_budget(dim, budget)?;
    let mut out = Vec::with_capacity(dim as usize);
    for i in 0..k.get() {
        let (lo, hi) = chunk_bounds(d, k.get(), i);
        // Expand Π_j (1 - x_j y_j) over the chunk via the factorization
        // 1 - x_j y_j = (1-x_j, 1)·(y_j, 1-y_j); an empty chunk contributes
        // the constant-1 scalar and stays clean for every query.
        let mut chunk = BinaryVector::from_unchecked(vec![1]);
        for &bit in &x.entries()[lo..hi] {
            let factor = if query {
                BinaryVector::from_unchecked(vec![bit, 1 - bit])
            } else {
                BinaryVector::from_unchecked(vec![1 - bit, 1])
            };
            chunk = chunk.tensor(&factor);
        }
        out.extend_from_slice(chunk.entries());
    }
    Ok(BinaryVector::from_unchecked(out))
}

/// Family-3 data map with `k` chunks.
///
/// The embedded product with [`embed3_query`] counts the chunks whose
/// polynomial `Π_j (1 - x_j y_j)` evaluates to 1: exactly `k` when
/// `x·y = 0`, at most `k-1` otherwise.
pub fn embed3_data(x: &BinaryVector, k: ChunkCount, budget: u128) -> Result<BinaryVector> {
    embed3_side(x, k, budget, false)
}

/// Family-3 query map with `k` chunks.
pub fn embed3_query(y: &BinaryVector, k: ChunkCount, budget: u128) -> Result<BinaryVector> {
    embed3_side(y, k, budget, true)
}

// ---------------------------------------------------------------------------
// Profiles and bulk application.
// ---------------------------------------------------------------------------

/// `(d₁, d₂, cs, s)` profile of a family instance, with `c` and the
/// normalized exponent.
///
/// Family 2 reports the analytic tuple
/// `(d, (9d)^q, (2d)^q, (2d)^q·e^{q/√d}/2)`; it is defined only when
/// `e^{q/√d} > 2`, since otherwise the claimed `s` does not exceed `cs`
/// (the materialized construction keeps a positive gap at every order, see
/// [`embed2_thresholds`]). Families 1 and 3 report their exact tuples.
pub fn profile(d: usize, family: Family) -> Result<ProfileReport> {
    let profile = match family {
        Family::One => {
            if d < 4 {
                return Err(Error::InvalidParameter(format!(
                    "family 1 requires dimension at least 4, got {d}"
                )));
            }
            GapEmbeddingProfile::new(d, (4 * d - 4) as u128, 0.0, 4.0, Domain::Sign, true)?
        }
        Family::Two(q) => {
            require_positive_dim(d)?;
            let cs = (2.0 * d as f64).powi(q.get() as i32);
            let amplification = (q.get() as f64 / (d as f64).sqrt()).exp();
            if !cs.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "family 2 threshold (2d)^q overflows f64 for d={d}, q={}",
                    q.get()
                )));
            }
            if amplification <= 2.0 {
                return Err(Error::InvalidParameter(format!(
                    "family 2 profile undefined for d={d}, q={}: \
                     s = (2d)^q·e^{{q/√d}}/2 would not exceed cs = (2d)^q",
                    q.get()
                )));
            }
            let d2 = (9 * d as u128).checked_pow(q.get()).ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "family 2 dimension (9d)^q overflows u128 for d={d}, q={}",
                    q.get()
                ))
            })?;
            GapEmbeddingProfile::new(d, d2, cs, cs * amplification / 2.0, Domain::Sign, false)?
        }
        Family::Three(k) => {
            check_chunks(d, k)?;
            GapEmbeddingProfile::new(
                d,
                embed3_dim(d, k)?,
                (k.get() - 1) as f64,
                k.get() as f64,
                Domain::Binary,
                false,
            )?
        }
    };
    let d2 = profile.d2 as f64;
    Ok(ProfileReport {
        profile,
        c: profile.cs / profile.s,
        ratio: (profile.s / d2).ln() / (profile.cs / d2).ln(),
    })
}

fn check_uniform_dims(vectors: &[BinaryVector]) -> Result<usize> {
    let first = vectors
        .first()
        .ok_or_else(|| Error::InvalidParameter("cannot embed an empty collection".into()))?
        .dim();
    for v in vectors {
        if v.dim() != first {
            return Err(Error::DimensionMismatch { left: first, right: v.dim() });
        }
    }
    Ok(first)
}

/// Embeds a whole collection with one side of one family, in parallel.
///
/// Output order matches input order and is identical to sequential
/// evaluation.
pub fn embed_vectors(
    vectors: &[BinaryVector],
    family: Family,
    side: Side,
    budget: u128,
) -> Result<Dataset> {
    check_uniform_dims(vectors)?;
    match family {
        Family::One => {
            let f = match side {
                Side::Data => embed1_data,
                Side::Query => embed1_query,
            };
            Dataset::sign(vectors.par_iter().map(f).collect::<Result<Vec<_>>>()?)
        }
        Family::Two(q) => {
            let out = vectors
                .par_iter()
                .map(|x| match side {
                    Side::Data => embed2_data(x, q, budget),
                    Side::Query => embed2_query(x, q, budget),
                })
                .collect::<Result<Vec<_>>>()?;
            Dataset::sign(out)
        }
        Family::Three(k) => {
            let out = vectors
                .par_iter()
                .map(|x| match side {
                    Side::Data => embed3_data(x, k, budget),
                    Side::Query => embed3_query(x, k, budget),
                })
                .collect::<Result<Vec<_>>>()?;
            Dataset::binary(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(entries: &[u8]) -> BinaryVector {
        BinaryVector::new(entries.to_vec()).unwrap()
    }

    fn q(order: u32) -> ChebyshevOrder {
        ChebyshevOrder::new(order).unwrap()
    }

    fn k(count: usize) -> ChunkCount {
        ChunkCount::new(count).unwrap()
    }

    #[test]
    fn embed1_pinned_products() {
        let cases = [
            (vec![0, 0, 0, 0], vec![1, 0, 1, 0], 4),
            (vec![1, 1, 0, 0], vec![1, 0, 0, 0], 0),
            (vec![1, 1, 1, 1], vec![1, 1, 1, 1], -12),
        ];
        for (x, y, want) in cases {
            let fx = embed1_data(&bits(&x)).unwrap();
            let gy = embed1_query(&bits(&y)).unwrap();
            assert_eq!(fx.dim(), 12);
            assert_eq!(fx.dot(&gy).unwrap(), want);
        }
    }

    #[test]
    fn embed1_rejects_small_dimension() {
        assert!(embed1_data(&bits(&[1, 0, 1])).is_err());
    }

    #[test]
    fn embed2_orthogonal_products() {
        let x = bits(&[0, 0, 0, 0]);
        let y = bits(&[1, 0, 1, 0]);
        let r1 = embed2_data(&x, q(1), DEFAULT_MEMORY_BUDGET)
            .unwrap()
            .dot(&embed2_query(&y, q(1), DEFAULT_MEMORY_BUDGET).unwrap())
            .unwrap();
        assert_eq!(r1, 10);
        let r2 = embed2_data(&x, q(2), DEFAULT_MEMORY_BUDGET)
            .unwrap()
            .dot(&embed2_query(&y, q(2), DEFAULT_MEMORY_BUDGET).unwrap())
            .unwrap();
        assert_eq!(r2, 136);
    }

    #[test]
    fn embed2_dimension_recurrence() {
        assert_eq!(embed2_dim(4, q(1)).unwrap(), 18);
        assert_eq!(embed2_dim(4, q(2)).unwrap(), 712);
        let v = embed2_data(&bits(&[1, 0, 1, 1]), q(2), DEFAULT_MEMORY_BUDGET).unwrap();
        assert_eq!(v.dim(), 712);
    }

    #[test]
    fn embed2_thresholds_match_construction() {
        let t = embed2_thresholds(4, q(2)).unwrap();
        assert_eq!(t.cs, 64);
        assert_eq!(t.s, 136);
    }

    #[test]
    fn embed2_budget_is_enforced() {
        let err = embed2_data(&bits(&[0; 8]), q(3), 1000).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { budget: 1000, .. }));
    }

    #[test]
    fn embed3_pinned_products() {
        let zero = bits(&[0, 0, 0, 0]);
        for y in [[0, 0, 0, 0], [1, 1, 1, 1], [1, 0, 1, 0]] {
            let fx = embed3_data(&zero, k(2), DEFAULT_MEMORY_BUDGET).unwrap();
            let gy = embed3_query(&bits(&y), k(2), DEFAULT_MEMORY_BUDGET).unwrap();
            assert_eq!(fx.dot(&gy).unwrap(), 2);
        }
        let x = bits(&[1, 0, 0, 0]);
        let fx = embed3_data(&x, k(2), DEFAULT_MEMORY_BUDGET).unwrap();
        let gx = embed3_query(&x, k(2), DEFAULT_MEMORY_BUDGET).unwrap();
        assert_eq!(fx.dim(), 8);
        assert_eq!(fx.dot(&gx).unwrap(), 1);
    }

    #[test]
    fn embed3_partial_chunks() {
        // d=5, k=4: chunk lengths (2,2,1,0), dimension 4+4+2+1.
        assert_eq!(embed3_dim(5, k(4)).unwrap(), 11);
        let x = bits(&[1, 1, 0, 1, 0]);
        let fx = embed3_data(&x, k(4), DEFAULT_MEMORY_BUDGET).unwrap();
        let gx = embed3_query(&x, k(4), DEFAULT_MEMORY_BUDGET).unwrap();
        assert_eq!(fx.dim(), 11);
        // x·x = 3 > 0, so at most k-1 chunks stay clean.
        assert!(fx.dot(&gx).unwrap() <= 3);
        let orth = bits(&[0, 0, 1, 0, 1]);
        let gy = embed3_query(&orth, k(4), DEFAULT_MEMORY_BUDGET).unwrap();
        assert_eq!(fx.dot(&gy).unwrap(), 4);
    }

    #[test]
    fn embed3_budget_is_enforced() {
        let err = embed3_data(&bits(&[0; 40]), k(1), DEFAULT_MEMORY_BUDGET).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
        assert!(embed3_dim(40, k(1)).unwrap() == 1 << 40);
    }

    #[test]
    fn profile_family1() {
        let report = profile(10, Family::One).unwrap();
        let p = report.profile;
        assert_eq!((p.d1, p.d2, p.cs, p.s), (10, 36, 0.0, 4.0));
        assert_eq!(p.domain, Domain::Sign);
        assert!(p.signed);
        assert_eq!(report.c, 0.0);
        assert_eq!(report.ratio, 0.0);
    }

    #[test]
    fn profile_family3() {
        let report = profile(16, Family::Three(k(4))).unwrap();
        let p = report.profile;
        assert_eq!((p.d1, p.d2, p.cs, p.s), (16, 64, 3.0, 4.0));
        assert_eq!(p.domain, Domain::Binary);
        assert!(!p.signed);
        assert!((report.c - 0.75).abs() < 1e-15);
    }

    #[test]
    fn profile_family2_ratio_closed_form() {
        let report = profile(16, Family::Two(q(4))).unwrap();
        let p = report.profile;
        assert_eq!(p.d2, 144u128.pow(4));
        assert_eq!(p.cs, 32f64.powi(4));
        let ln92 = (9.0_f64 / 2.0).ln();
        let closed = 1.0 - 1.0 / (4.0 * ln92) + 2f64.ln() / (4.0 * ln92);
        assert!(
            (report.ratio - closed).abs() < 1e-9,
            "ratio {} vs closed form {closed}",
            report.ratio
        );
    }

    #[test]
    fn profile_family2_rejects_degenerate_gap() {
        // e^{q/√d} ≤ 2 makes the analytic s fall at or below cs.
        assert!(profile(4, Family::Two(q(1))).is_err());
        assert!(profile(16, Family::Two(q(2))).is_err());
        assert!(profile(16, Family::Two(q(3))).is_ok());
    }

    #[test]
    fn parameter_newtypes_validate() {
        assert!(ChebyshevOrder::new(0).is_err());
        assert!(ChunkCount::new(0).is_err());
        assert!(embed3_data(&bits(&[1, 0]), k(3), DEFAULT_MEMORY_BUDGET).is_err());
    }

    #[test]
    fn embed_vectors_matches_pointwise() {
        let vs = vec![bits(&[0, 1, 1, 0]), bits(&[1, 1, 0, 0]), bits(&[0, 0, 0, 1])];
        let ds = embed_vectors(&vs, Family::One, Side::Data, DEFAULT_MEMORY_BUDGET).unwrap();
        let embedded = ds.as_sign().unwrap();
        for (v, e) in vs.iter().zip(embedded) {
            assert_eq!(e, &embed1_data(v).unwrap());
        }
    }

    #[test]
    fn profile_report_serializes() {
        let report = profile(10, Family::Three(k(2))).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        let back: ProfileReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }
}
