//! Locality-sensitive tooling for maximum inner product search.
//!
//! Inner product is not directly hashable: no hash family can make collision
//! probability monotone in `p·q` on its own. The classical fix is to lift
//! the problem onto the unit sphere, where angular hashing works:
//!
//! - [`AsymmetricLift`] applies distinct data/query maps so that the lifted
//!   inner product equals `(p·q)/U` on unit vectors; [`rho_datadep`] and
//!   [`rho_simple`] compute the query exponents this lift achieves under a
//!   data-dependent sphere index and under plain hyperplane hashing.
//! - [`symmetric_lift`] uses a single map for both sides, padding each
//!   vector with a scaled member of an [`IncoherentFamily`] (Reed-Solomon
//!   codewords) indexed by the vector's fixed-point encoding, at the cost
//!   of an additive `ε` error in the preserved inner product.
//! - [`HyperplaneFamily`] is the hashing backend: `k` concatenated
//!   sign-of-Gaussian-projection bits with single-bit collision probability
//!   `1 - θ/π`, plus the Monte-Carlo estimator [`estimate_collision`].
//! - [`HyperplaneJoiner`] buckets data rows by hash code across several
//!   tables, the minimal index shape needed to act as a reduction joiner.

mod bucket;
mod hyperplane;
mod incoherent;
mod lift;
mod rho;

pub(crate) use hyperplane::binomial_estimate;
pub use bucket::HyperplaneJoiner;
pub use hyperplane::{
    estimate_collision, hyperplane_hash, CollisionEstimate, CollisionFamily, HyperplaneFamily,
};
pub use incoherent::{build_incoherent, symmetric_lift, FixedPointCodec, IncoherentFamily};
pub use lift::AsymmetricLift;
pub use rho::{rho_datadep, rho_simple, RhoDataDep};
