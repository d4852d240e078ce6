//! Inner-product similarity joins: embeddings, hashing, sketching and hard
//! instances.
//!
//! The crate is organized around one reduction and its two endpoints:
//!
//! - [`embed`] turns exact orthogonality search over `{0,1}^d` into
//!   approximate inner-product joins via gap embeddings, and [`ovp`] runs
//!   the full pipeline against pluggable join back ends.
//! - [`lsh`] provides locality-sensitive tooling for maximum inner product
//!   search: asymmetric lifts, exponent curves, hyperplane hashing and
//!   incoherent lift families.
//! - [`sketch`] builds linear sketches for `ℓ_κ`-norm maximum estimation
//!   and a prefix-tree index that recovers approximate maximizers.
//! - [`lowerbound`] generates the staircase query/data sequences that
//!   certify the limits of such data structures, plus verifiers and a
//!   collision-gap audit.
//!
//! Everything randomized is seeded explicitly through [`rng::Seed`]; equal
//! seeds give bit-identical results regardless of thread count.

#![warn(missing_docs)]

pub mod chebyshev;
pub mod dataset;
pub mod embed;
pub mod error;
pub mod join;
pub mod lowerbound;
pub mod lsh;
pub mod ovp;
pub mod rng;
pub mod sketch;
pub mod vector;

pub use chebyshev::{chebyshev, chebyshev_scaled};
pub use dataset::{Dataset, Domain};
pub use embed::{
    embed_vectors, profile, ChebyshevOrder, ChunkCount, Family, GapEmbeddingProfile,
    ProfileReport, Side, DEFAULT_MEMORY_BUDGET,
};
pub use error::{Error, Result};
pub use join::{JoinMode, JoinSpec};
pub use lowerbound::{
    case2_block_length, case3_levels, gap_audit, seq_case1_1d, seq_case1_blocked, seq_case2,
    seq_case3, verify_sequence, verify_sequence_as, GapAudit, HardSequence, SequenceCase,
    VerificationReport,
};
pub use lsh::{
    build_incoherent, estimate_collision, hyperplane_hash, rho_datadep, rho_simple,
    symmetric_lift, AsymmetricLift, CollisionEstimate, CollisionFamily, FixedPointCodec,
    HyperplaneFamily, HyperplaneJoiner, IncoherentFamily, RhoDataDep,
};
pub use ovp::{
    ovp_bruteforce, reduce_and_join, split_chunks, BruteForceJoiner, Joiner, JoinThresholds,
    OvpInstance, ReductionReport, SketchJoiner,
};
pub use rng::Seed;
pub use sketch::{
    cmips_from_threshold_search, sketch_rows, unsigned_join_via_sketch, CmipsResult, MipsIndex,
    NodeId, SketchMatrix, SketchParams,
};
pub use vector::{
    BinaryVector, PackedBinaryVector, PackedSignVector, RealVector, SignVector,
};
