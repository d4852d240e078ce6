//! Deterministic randomness contract.
//!
//! Every randomized operation in this crate is a pure function of a [`Seed`]
//! plus a stream index. Streams are realized with ChaCha8's independent
//! stream counter, so hash function number `i`, sketch copy `c`, or trial `t`
//! can be regenerated in isolation, from any thread, without shared state.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Root seed for a reproducible run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed(pub u64);

impl Seed {
    /// Generator for the given stream index under this seed.
    ///
    /// Distinct `(seed, stream)` pairs yield independent generators; equal
    /// pairs yield identical output regardless of calling thread or order.
    pub fn rng(self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.0);
        rng.set_stream(stream);
        rng
    }
}

impl From<u64> for Seed {
    fn from(value: u64) -> Self {
        Seed(value)
    }
}
