//! End-to-end agreement of the embed-then-join pipeline with the exact
//! oracle on random instances, and dataset text round-trips.

use proptest::prelude::*;

use ips_core::embed::{ChebyshevOrder, ChunkCount, Family};
use ips_core::{
    ovp_bruteforce, reduce_and_join, BinaryVector, BruteForceJoiner, Dataset, OvpInstance,
    RealVector, Seed, SignVector, DEFAULT_MEMORY_BUDGET,
};

fn families(d: usize) -> Vec<Family> {
    vec![
        Family::One,
        Family::Two(ChebyshevOrder::new(2).unwrap()),
        Family::Three(ChunkCount::new(d.min(3)).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn every_family_agrees_with_the_oracle(
        n in 1usize..=6,
        // d ≤ 8 keeps the family-2 profile defined at order 2.
        d in 4usize..=8,
        seed in 0u64..1000,
        planted in any::<bool>(),
    ) {
        let inst = OvpInstance::random(n, d, Seed(seed), planted).unwrap();
        let oracle = ovp_bruteforce(&inst);
        for family in families(d) {
            let report =
                reduce_and_join(&inst, family, &BruteForceJoiner, DEFAULT_MEMORY_BUDGET)
                    .unwrap();
            prop_assert_eq!(report.join_found, oracle.is_some(), "family {:?}", family);
            prop_assert_eq!(report.oracle_found, oracle.is_some());
            match report.witness {
                Some((i, j)) => {
                    let dot = inst.data()[i].dot(&inst.queries()[j]).unwrap();
                    prop_assert_eq!(dot, 0, "witness ({}, {}) not orthogonal", i, j);
                }
                None => prop_assert!(oracle.is_none()),
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn binary_and_sign_datasets_roundtrip_through_text(
        rows in prop::collection::vec(prop::collection::vec(0..=1u8, 5), 1..8),
    ) {
        let binary = Dataset::binary(
            rows.iter().cloned().map(|r| BinaryVector::new(r).unwrap()).collect(),
        )
        .unwrap();
        let sign = Dataset::sign(
            rows.iter()
                .map(|r| {
                    SignVector::new(r.iter().map(|&b| if b == 1 { 1 } else { -1 }).collect())
                        .unwrap()
                })
                .collect(),
        )
        .unwrap();
        for ds in [binary, sign] {
            let mut text = Vec::new();
            ds.write_to(&mut text).unwrap();
            let back = Dataset::read_from(text.as_slice()).unwrap();
            prop_assert_eq!(&back, &ds);
        }
    }

    #[test]
    fn real_datasets_roundtrip_through_text(
        rows in prop::collection::vec(prop::collection::vec(-1e6f64..1e6, 3), 1..8),
    ) {
        let ds = Dataset::real(
            rows.into_iter().map(|r| RealVector::new(r).unwrap()).collect(),
        )
        .unwrap();
        let mut text = Vec::new();
        ds.write_to(&mut text).unwrap();
        let back = Dataset::read_from(text.as_slice()).unwrap();
        prop_assert_eq!(&back, &ds);
    }
}
