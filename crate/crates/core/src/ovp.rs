//! Orthogonal-vectors oracle and the embed-then-join reduction.
//!
//! The Orthogonal Vectors Problem asks whether two sets of binary vectors
//! contain a pair with inner product zero. [`ovp_bruteforce`] answers it
//! exactly; [`reduce_and_join`] answers it through a gap embedding followed
//! by an approximate `(cs, s)` join, and reports both verdicts side by side
//! so any joiner implementation can be audited against the exact oracle.
//!
//! The joiner is an injected strategy ([`Joiner`]): the reduction is
//! agnostic to how the join is computed, and candidate pairs it returns are
//! re-verified in the *original* space before `join_found` is set, so a
//! joiner that over-reports cannot fake a success.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::embed::{embed_vectors, profile, Family, GapEmbeddingProfile, Side};
use crate::error::{Error, Result};
use crate::join::JoinMode;
use crate::rng::Seed;
use crate::vector::{BinaryVector, PackedBinaryVector, PackedSignVector};

/// An Orthogonal Vectors instance: data set `P`, query set `Q`, shared
/// dimension `d`.
#[derive(Debug, Clone)]
pub struct OvpInstance {
    p: Vec<BinaryVector>,
    q: Vec<BinaryVector>,
    d: usize,
}

impl OvpInstance {
    /// Validates that all vectors share one dimension.
    pub fn new(p: Vec<BinaryVector>, q: Vec<BinaryVector>) -> Result<Self> {
        let d = p
            .first()
            .or_else(|| q.first())
            .ok_or_else(|| {
                Error::InvalidParameter("instance must contain at least one vector".into())
            })?
            .dim();
        for v in p.iter().chain(&q) {
            if v.dim() != d {
                return Err(Error::DimensionMismatch { left: d, right: v.dim() });
            }
        }
        Ok(Self { p, q, d })
    }

    /// Uniform random instance with `n` vectors per side; with `planted`,
    /// one orthogonal pair is forced at a random position.
    pub fn random(n: usize, d: usize, seed: Seed, planted: bool) -> Result<Self> {
        use rand::Rng;
        let draw = |stream: u64| {
            let mut rng = seed.rng(stream);
            (0..n)
                .map(|_| {
                    BinaryVector::from_unchecked((0..d).map(|_| rng.gen_range(0..=1u8)).collect())
                })
                .collect::<Vec<_>>()
        };
        let mut p = draw(0);
        let mut q = draw(1);
        if planted {
            let mut rng = seed.rng(2);
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            // Clear the query's support wherever the data vector is set.
            let masked: Vec<u8> = p[i]
                .entries()
                .iter()
                .zip(q[j].entries())
                .map(|(&a, &b)| b & (1 - a))
                .collect();
            q[j] = BinaryVector::from_unchecked(masked);
            let _ = &mut p;
        }
        Self::new(p, q)
    }

    /// Data side.
    pub fn data(&self) -> &[BinaryVector] {
        &self.p
    }

    /// Query side.
    pub fn queries(&self) -> &[BinaryVector] {
        &self.q
    }

    /// Shared dimension.
    pub fn dim(&self) -> usize {
        self.d
    }
}

/// Exact OVP oracle: the lexicographically smallest `(i, j)` with
/// `pᵢ·qⱼ = 0`, or `None`.
///
/// Parallelized over data rows; packed bit arithmetic makes each candidate
/// pair one xor-popcount word pass.
pub fn ovp_bruteforce(inst: &OvpInstance) -> Option<(usize, usize)> {
    let packed_q: Vec<PackedBinaryVector> =
        inst.q.iter().map(PackedBinaryVector::pack).collect();
    inst.p
        .par_iter()
        .enumerate()
        .filter_map(|(i, p)| {
            let packed_p = PackedBinaryVector::pack(p);
            packed_q
                .iter()
                .position(|q| packed_p.dot(q).expect("dims validated") == 0)
                .map(|j| (i, j))
        })
        .min()
}

/// Order-preserving partition of `items` into runs of `chunk` elements
/// (last run possibly shorter).
pub fn split_chunks<T>(items: &[T], chunk: usize) -> Result<Vec<&[T]>> {
    if chunk == 0 {
        return Err(Error::InvalidParameter("chunk size must be at least 1".into()));
    }
    Ok(items.chunks(chunk).collect())
}

/// Thresholds handed to a [`Joiner`]: report pairs at or above `cs`
/// whenever a pair at or above `s` exists for that query.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JoinThresholds {
    /// Guarantee threshold.
    pub s: f64,
    /// Relaxed reporting threshold, `cs < s`.
    pub cs: f64,
    /// Signed or unsigned comparison.
    pub mode: JoinMode,
}

impl JoinThresholds {
    /// Value of an inner product under the comparison mode.
    pub fn score(&self, dot: f64) -> f64 {
        match self.mode {
            JoinMode::Signed => dot,
            JoinMode::Unsigned => dot.abs(),
        }
    }
}

/// A `(cs, s)` join strategy over embedded datasets.
pub trait Joiner {
    /// Returns candidate `(data_index, query_index)` pairs. For each query
    /// with some data vector scoring at least `s`, at least one pair
    /// scoring at least `cs` must be reported; spurious extra pairs are
    /// permitted (the reduction re-verifies).
    fn join(
        &self,
        data: &Dataset,
        queries: &Dataset,
        thresholds: &JoinThresholds,
    ) -> Result<Vec<(usize, usize)>>;
}

fn pairwise_scores(data: &Dataset, queries: &Dataset) -> Result<Vec<Vec<i64>>> {
    // One packed pass per (query, data) pair; rows indexed by query.
    match (data, queries) {
        (Dataset::Sign(p), Dataset::Sign(q)) => {
            let pp: Vec<_> = p.iter().map(PackedSignVector::pack).collect();
            let qq: Vec<_> = q.iter().map(PackedSignVector::pack).collect();
            qq.par_iter()
                .map(|qv| pp.iter().map(|pv| pv.dot(qv)).collect::<Result<Vec<_>>>())
                .collect()
        }
        (Dataset::Binary(p), Dataset::Binary(q)) => {
            let pp: Vec<_> = p.iter().map(PackedBinaryVector::pack).collect();
            let qq: Vec<_> = q.iter().map(PackedBinaryVector::pack).collect();
            qq.par_iter()
                .map(|qv| pp.iter().map(|pv| pv.dot(qv)).collect::<Result<Vec<_>>>())
                .collect()
        }
        _ => Err(Error::InvalidParameter(
            "joiner requires matching discrete domains on both sides".into(),
        )),
    }
}

/// Exact threshold join: per query, the best-scoring data vector, reported
/// iff its score reaches `s`.
#[derive(Debug, Clone, Copy, Default)]
pub struct BruteForceJoiner;

impl Joiner for BruteForceJoiner {
    fn join(
        &self,
        data: &Dataset,
        queries: &Dataset,
        thresholds: &JoinThresholds,
    ) -> Result<Vec<(usize, usize)>> {
        let scores = pairwise_scores(data, queries)?;
        let mut out = Vec::new();
        for (j, row) in scores.iter().enumerate() {
            let (best_i, best) = row
                .iter()
                .enumerate()
                .map(|(i, &v)| (i, thresholds.score(v as f64)))
                .fold((0, f64::NEG_INFINITY), |acc, cur| {
                    if cur.1 > acc.1 {
                        cur
                    } else {
                        acc
                    }
                });
            if best >= thresholds.s {
                out.push((best_i, j));
            }
        }
        Ok(out)
    }
}

/// Sub-quadratic unsigned join through the sketch MIPS index.
///
/// Each query reports its recovered near-maximizer when that pair scores
/// at least `cs`. Recovery is approximate, so pairs can be missed; the
/// reduction's re-verification and oracle comparison expose any miss.
#[derive(Debug, Clone, Copy)]
pub struct SketchJoiner {
    /// Norm order of the sketches.
    pub kappa: f64,
    /// Build seed.
    pub seed: Seed,
}

impl Joiner for SketchJoiner {
    fn join(
        &self,
        data: &Dataset,
        queries: &Dataset,
        thresholds: &JoinThresholds,
    ) -> Result<Vec<(usize, usize)>> {
        if thresholds.mode != JoinMode::Unsigned {
            return Err(Error::InvalidParameter(
                "the sketch joiner handles unsigned joins only".into(),
            ));
        }
        let rows = data.to_real_rows();
        let index = crate::sketch::MipsIndex::build(
            &rows,
            self.kappa,
            self.seed,
            &crate::sketch::SketchParams::default(),
        )?;
        let query_rows = queries.to_real_rows();
        let pairs = query_rows
            .par_iter()
            .enumerate()
            .map(|(j, q)| {
                let i = index.recover(q)?;
                let score = thresholds.score(rows[i].dot(q)?);
                Ok((score >= thresholds.cs).then_some((i, j)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(pairs.into_iter().flatten().collect())
    }
}

/// Per-phase wall-clock durations of one reduction run.
#[derive(Debug, Clone, Copy, Default)]
pub struct PhaseTimings {
    /// Embedding both sides.
    pub embed: Duration,
    /// Running the joiner.
    pub join: Duration,
    /// Running the exact oracle.
    pub oracle: Duration,
}

/// Outcome of one embed-then-join run, with the exact oracle's verdict.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReductionReport {
    /// Profile of the embedding instance that was applied.
    pub profile: GapEmbeddingProfile,
    /// Whether the joiner produced a pair that is orthogonal in the
    /// original space.
    pub join_found: bool,
    /// Whether the exact oracle found an orthogonal pair.
    pub oracle_found: bool,
    /// An orthogonal pair's original indices, when one is known.
    pub witness: Option<(usize, usize)>,
    /// Wall-clock phase durations; excluded from serialized reports so
    /// output stays byte-identical across runs and thread counts.
    #[serde(skip)]
    pub timings: PhaseTimings,
}

/// Runs the full pipeline: embed `P` and `Q` with the chosen family, run
/// the joiner at the family's `(cs, s)` thresholds, verify candidates in
/// the original space, and compare with [`ovp_bruteforce`].
///
/// The joiner mode is signed for family 1 and unsigned for families 2
/// and 3. `witness` carries original (pre-embedding) indices: the first
/// verified joiner candidate, or the oracle's pair when only the oracle
/// succeeded.
pub fn reduce_and_join(
    inst: &OvpInstance,
    family: Family,
    joiner: &dyn Joiner,
    budget: u128,
) -> Result<ReductionReport> {
    let report = profile(inst.d, family)?;
    let thresholds = JoinThresholds {
        s: report.profile.s,
        cs: report.profile.cs,
        mode: if family.signed() { JoinMode::Signed } else { JoinMode::Unsigned },
    };

    let start = Instant::now();
    let data = embed_vectors(&inst.p, family, Side::Data, budget)?;
    let queries = embed_vectors(&inst.q, family, Side::Query, budget)?;
    let embed_time = start.elapsed();

    let start = Instant::now();
    let candidates = joiner.join(&data, &queries, &thresholds)?;
    let verified = candidates.into_iter().find(|&(i, j)| {
        inst.p[i].dot(&inst.q[j]).expect("dims validated") == 0
    });
    let join_time = start.elapsed();

    let start = Instant::now();
    let oracle = ovp_bruteforce(inst);
    let oracle_time = start.elapsed();

    Ok(ReductionReport {
        profile: report.profile,
        join_found: verified.is_some(),
        oracle_found: oracle.is_some(),
        witness: verified.or(oracle),
        timings: PhaseTimings { embed: embed_time, join: join_time, oracle: oracle_time },
    })
}
