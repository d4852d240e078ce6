//! Structural laws of the three gap embeddings: exact product values on
//! random inputs, dimension formulas, threshold growth and the profile
//! closed forms.

use ips_core::chebyshev::chebyshev_scaled;
use ips_core::embed::{
    self, ChebyshevOrder, ChunkCount, Family, DEFAULT_MEMORY_BUDGET,
};
use ips_core::{BinaryVector, SignVector};
use proptest::prelude::*;

fn order(q: u32) -> ChebyshevOrder {
    ChebyshevOrder::new(q).unwrap()
}

fn chunks(k: usize) -> ChunkCount {
    ChunkCount::new(k).unwrap()
}

fn bit_pair(dmin: usize, dmax: usize) -> impl Strategy<Value = (Vec<u8>, Vec<u8>)> {
    (dmin..=dmax).prop_flat_map(|d| {
        (
            prop::collection::vec(0..=1u8, d),
            prop::collection::vec(0..=1u8, d),
        )
    })
}

fn overlap(x: &[u8], y: &[u8]) -> i64 {
    x.iter().zip(y).map(|(&a, &b)| i64::from(a & b)).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn family1_product_is_affine_in_the_overlap((x, y) in bit_pair(4, 10)) {
        let fx = embed::embed1_data(&BinaryVector::new(x.clone()).unwrap()).unwrap();
        let gy = embed::embed1_query(&BinaryVector::new(y.clone()).unwrap()).unwrap();
        prop_assert_eq!(fx.dim(), 4 * x.len() - 4);
        prop_assert_eq!(gy.dim(), fx.dim());
        prop_assert_eq!(fx.dot(&gy).unwrap(), 4 - 4 * overlap(&x, &y));
    }

    #[test]
    fn family2_product_is_the_scaled_chebyshev_value(
        (x, y) in bit_pair(1, 8),
        q in 1u32..=2,
    ) {
        let d = x.len();
        let fx = embed::embed2_data(
            &BinaryVector::new(x.clone()).unwrap(),
            order(q),
            DEFAULT_MEMORY_BUDGET,
        )
        .unwrap();
        let gy = embed::embed2_query(
            &BinaryVector::new(y.clone()).unwrap(),
            order(q),
            DEFAULT_MEMORY_BUDGET,
        )
        .unwrap();
        prop_assert_eq!(fx.dim() as u128, embed::embed2_dim(d, order(q)).unwrap());

        let u = 2 * d as i128 + 2 - 4 * overlap(&x, &y) as i128;
        let want = chebyshev_scaled(q, u, 2 * d as i128).unwrap();
        prop_assert_eq!(fx.dot(&gy).unwrap() as i128, want);

        // Orthogonal pairs hit s exactly; the rest stay inside ±cs.
        let th = embed::embed2_thresholds(d, order(q)).unwrap();
        if overlap(&x, &y) == 0 {
            prop_assert_eq!(want, th.s);
        } else {
            prop_assert!(want.abs() <= th.cs);
        }
    }

    #[test]
    fn family3_product_counts_clean_chunks((x, y) in bit_pair(1, 12), k in 1usize..=12) {
        let d = x.len();
        prop_assume!(k <= d);
        let fx = embed::embed3_data(
            &BinaryVector::new(x.clone()).unwrap(),
            chunks(k),
            DEFAULT_MEMORY_BUDGET,
        )
        .unwrap();
        let gy = embed::embed3_query(
            &BinaryVector::new(y.clone()).unwrap(),
            chunks(k),
            DEFAULT_MEMORY_BUDGET,
        )
        .unwrap();
        prop_assert_eq!(fx.dim() as u128, embed::embed3_dim(d, chunks(k)).unwrap());

        let len = d.div_ceil(k);
        let clean = (0..k)
            .filter(|i| {
                let lo = (i * len).min(d);
                let hi = (lo + len).min(d);
                overlap(&x[lo..hi], &y[lo..hi]) == 0
            })
            .count() as i64;
        prop_assert_eq!(fx.dot(&gy).unwrap(), clean);
        prop_assert_eq!(clean == k as i64, overlap(&x, &y) == 0);
    }
}

#[test]
fn family2_growth_beats_half_the_exponential_once_order_dominates() {
    // T_q(1 + 1/d) ≥ e^{q/√d}/2 holds from q ≈ 2√d on.
    for d in 1usize..=9 {
        let q0 = (2.0 * (d as f64).sqrt()).ceil() as u32;
        for q in q0..=q0 + 3 {
            let th = embed::embed2_thresholds(d, order(q)).unwrap();
            let ratio = th.s as f64 / th.cs as f64;
            let target = (q as f64 / (d as f64).sqrt()).exp() / 2.0;
            assert!(ratio >= target, "d={d} q={q}: {ratio} < {target}");
        }
    }
}

#[test]
fn family2_dimension_recurrence_stays_under_nine_d_to_the_q() {
    // The recurrence's growth root falls below 9d from d = 8 on.
    for d in 8usize..=64 {
        for q in 1u32..=6 {
            let built = embed::embed2_dim(d, order(q)).unwrap();
            let claimed = (9 * d as u128).pow(q);
            assert!(built <= claimed, "d={d} q={q}: {built} > {claimed}");
        }
    }
}

#[test]
fn family2_profile_requires_real_amplification() {
    // Defined exactly when e^{q/√d} > 2.
    for d in 1usize..=16 {
        for q in 1u32..=6 {
            let report = embed::profile(d, Family::Two(order(q)));
            let amplified = (q as f64 / (d as f64).sqrt()).exp() > 2.0;
            assert_eq!(report.is_ok(), amplified, "d={d} q={q}");
        }
    }
}

#[test]
fn family2_profile_ratio_matches_the_closed_form() {
    let half9 = (9.0f64 / 2.0).ln();
    for d in 1usize..=4 {
        for q in 2u32..=5 {
            let Ok(report) = embed::profile(d, Family::Two(order(q))) else {
                continue;
            };
            let want = 1.0 - 1.0 / ((d as f64).sqrt() * half9)
                + 2.0f64.ln() / (q as f64 * half9);
            assert!(
                (report.ratio - want).abs() <= 1e-12,
                "d={d} q={q}: {} vs {want}",
                report.ratio
            );
        }
    }
}

#[test]
fn family1_and_family3_profiles_are_exact() {
    for d in 4usize..=10 {
        let one = embed::profile(d, Family::One).unwrap();
        assert_eq!(one.profile.d2, (4 * d - 4) as u128);
        assert_eq!((one.profile.cs, one.profile.s), (0.0, 4.0));
        assert_eq!(one.ratio, 0.0);

        for k in 1..=d {
            let three = embed::profile(d, Family::Three(chunks(k))).unwrap();
            assert_eq!(three.profile.d2, embed::embed3_dim(d, chunks(k)).unwrap());
            assert_eq!(three.profile.cs, (k - 1) as f64);
            assert_eq!(three.profile.s, k as f64);
        }
    }
}

fn all_sign_vectors(d: usize) -> Vec<SignVector> {
    (0..1usize << d)
        .map(|mask| {
            SignVector::new(
                (0..d)
                    .map(|i| if mask >> i & 1 == 1 { 1 } else { -1 })
                    .collect(),
            )
            .unwrap()
        })
        .collect()
}

#[test]
fn tensor_concat_and_repeat_respect_the_product_laws_exhaustively() {
    let twos = all_sign_vectors(2);
    let threes = all_sign_vectors(3);
    for a in &twos {
        for b in &threes {
            for c in &twos {
                for e in &threes {
                    let ac = a.dot(c).unwrap();
                    let be = b.dot(e).unwrap();
                    assert_eq!(a.tensor(b).dot(&c.tensor(e)).unwrap(), ac * be);
                    assert_eq!(a.concat(b).dot(&c.concat(e)).unwrap(), ac + be);
                    assert_eq!(a.repeat(5).dot(&c.repeat(5)).unwrap(), 5 * ac);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn real_dot_is_bilinear(
        d in 1usize..=8,
        alpha in -4.0f64..4.0,
        raw in prop::collection::vec(-10.0f64..10.0, 3 * 8),
    ) {
        use ips_core::RealVector;
        let x = RealVector::new(raw[..d].to_vec()).unwrap();
        let y = RealVector::new(raw[8..8 + d].to_vec()).unwrap();
        let z = RealVector::new(raw[16..16 + d].to_vec()).unwrap();
        let sum = RealVector::new(
            x.entries().iter().zip(y.entries()).map(|(a, b)| a + b).collect(),
        )
        .unwrap();
        let lhs = sum.dot(&z).unwrap();
        let rhs = x.dot(&z).unwrap() + y.dot(&z).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + lhs.abs() + rhs.abs()));

        let scaled = x.scale(alpha).dot(&z).unwrap();
        let direct = alpha * x.dot(&z).unwrap();
        prop_assert!((scaled - direct).abs() <= 1e-9 * (1.0 + direct.abs()));
    }
}
