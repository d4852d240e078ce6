//! Linear sketches for unsigned approximate maximum inner product search.
//!
//! Estimating `max_p |p·q|` over a data matrix `A` is estimating
//! `‖Aq‖_∞`, and `‖·‖_κ` approximates `‖·‖_∞` within `n^{1/κ}`. A
//! [`SketchMatrix`] compresses an `n`-vector to `m ≈ n^{1-2/κ}` buckets
//! while its output `ℓ_∞` norm tracks the input `ℓ_κ` norm; because the
//! map is linear, `Π(Aq) = (ΠA)q` and the `m × d` product `ΠA` can be
//! precomputed per subset of the data.
//!
//! [`MipsIndex`] stores such sketches for every node of a binary prefix
//! tree over data indices and recovers a near-maximizing index bit by
//! bit. [`cmips_from_threshold_search`] closes the loop from threshold
//! search back to approximate maximization by scaling queries, and
//! [`unsigned_join_via_sketch`] applies the index to whole query sets.

mod cmips;
mod index;
mod io;
mod matrix;

pub use cmips::{cmips_from_threshold_search, CmipsResult};
pub use index::{
    unsigned_join_via_sketch, MipsIndex, NodeId, SketchParams, DEFAULT_COPIES, DEFAULT_GAMMA,
};
pub use matrix::{sketch_rows, SketchMatrix, DEFAULT_ROW_CONSTANT};
