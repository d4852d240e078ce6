//! Hard instances for approximate inner-product search.
//!
//! A staircase sequence is `n` queries and `n` data vectors with
//! `qᵢ·p_j ≥ s` exactly when `j ≥ i` and `≤ cs` otherwise, all inside
//! the radius-`U` and unit balls. Its pairs are so entangled that any
//! hash family must nearly equalize collision probabilities across the
//! two classes; the bound is `1/(8·log₂ n)`.
//!
//! Three generators cover the parameter range: [`seq_case1_1d`] and its
//! block translation [`seq_case1_blocked`] (geometric, `s ≤ cU`),
//! [`seq_case2`] (arithmetic, signed comparison only) and [`seq_case3`]
//! (prefix sums over an incoherent family, `s ≤ U/8`). Nothing is
//! trusted by construction: [`verify_sequence`] checks every product and
//! norm, and [`gap_audit`] measures the collision gap of any
//! [`CollisionFamily`](crate::lsh::CollisionFamily) against the bound.

mod audit;
pub(crate) mod case1;
pub(crate) mod case2;
mod case3;
mod sequence;
mod verify;

pub use audit::{gap_audit, GapAudit};
pub use case1::{seq_case1_1d, seq_case1_blocked};
pub use case2::{case2_block_length, seq_case2};
pub use case3::{case3_levels, seq_case3};
pub use sequence::{HardSequence, SequenceCase};
pub use verify::{verify_sequence, verify_sequence_as, VerificationReport, Violation};
