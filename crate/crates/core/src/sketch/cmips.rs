//! Query scaling: c-MIPS from an unsigned `(cs, s)` search oracle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::join::{JoinMode, JoinSpec};
use crate::vector::RealVector;

/// Outcome of the scaled-query schedule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CmipsResult {
    /// A data index returned by the oracle on the `queries`-th call.
    Found {
        /// Index reported by the oracle.
        index: usize,
        /// Oracle calls issued, including the hit.
        queries: usize,
    },
    /// The whole schedule missed; every product is below `gamma`.
    BelowGamma {
        /// Oracle calls issued.
        queries: usize,
    },
}

/// Approximate maximum inner product search via threshold search.
///
/// Issues the queries `q/cⁱ` for `0 ≤ i ≤ ⌈log_{1/c}(s/γ)⌉` and returns
/// the oracle's first hit. Scaling the query up sweeps the threshold `s`
/// down to `γ`, so with an exact oracle the hit is a `c`-approximate
/// maximizer of `|p·q|` whenever the maximum reaches `γ`.
pub fn cmips_from_threshold_search<F>(
    mut oracle: F,
    spec: &JoinSpec,
    query: &RealVector,
    gamma: f64,
) -> Result<CmipsResult>
where
    F: FnMut(&RealVector) -> Result<Option<usize>>,
{
    if spec.mode != JoinMode::Unsigned {
        return Err(Error::InvalidParameter(
            "the scaling reduction is defined for unsigned search".into(),
        ));
    }
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "gamma must be positive and finite, got {gamma}"
        )));
    }
    let steps = ((spec.s / gamma).ln() / (1.0 / spec.c).ln()).ceil().max(0.0) as usize;
    for i in 0..=steps {
        let scaled = query.scale(spec.c.powi(-(i as i32)));
        if let Some(index) = oracle(&scaled)? {
            return Ok(CmipsResult::Found { index, queries: i + 1 });
        }
    }
    Ok(CmipsResult::BelowGamma { queries: steps + 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exact unsigned threshold oracle over a fixed dataset.
    fn exact_oracle<'a>(
        data: &'a [RealVector],
        s: f64,
    ) -> impl FnMut(&RealVector) -> Result<Option<usize>> + 'a {
        move |q: &RealVector| {
            let best = data
                .iter()
                .enumerate()
                .map(|(i, p)| (i, p.dot(q).unwrap().abs()))
                .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                .unwrap();
            Ok((best.1 >= s).then_some(best.0))
        }
    }

    #[test]
    fn immediate_hit_uses_one_query() {
        let data = vec![RealVector::new(vec![1.0]).unwrap()];
        let spec = JoinSpec::new(1.0, 0.5, JoinMode::Unsigned).unwrap();
        let q = RealVector::new(vec![2.0]).unwrap();
        let got =
            cmips_from_threshold_search(exact_oracle(&data, spec.s), &spec, &q, 1.0 / 16.0)
                .unwrap();
        assert_eq!(got, CmipsResult::Found { index: 0, queries: 1 });
    }

    #[test]
    fn schedule_length_is_pinned() {
        // c=1/2, s=1, γ=1/16: ⌈log₂ 16⌉ + 1 = 5 calls at most.
        let data = vec![RealVector::new(vec![1e-9]).unwrap()];
        let spec = JoinSpec::new(1.0, 0.5, JoinMode::Unsigned).unwrap();
        let q = RealVector::new(vec![1.0]).unwrap();
        let got =
            cmips_from_threshold_search(exact_oracle(&data, spec.s), &spec, &q, 1.0 / 16.0)
                .unwrap();
        assert_eq!(got, CmipsResult::BelowGamma { queries: 5 });
    }

    #[test]
    fn hit_is_c_approximate() {
        let data: Vec<RealVector> =
            (1..=10).map(|i| RealVector::new(vec![i as f64 / 100.0]).unwrap()).collect();
        let spec = JoinSpec::new(1.0, 0.5, JoinMode::Unsigned).unwrap();
        let q = RealVector::new(vec![1.0]).unwrap();
        let got = cmips_from_threshold_search(
            exact_oracle(&data, spec.s),
            &spec,
            &q,
            1.0 / 1024.0,
        )
        .unwrap();
        match got {
            CmipsResult::Found { index, queries } => {
                let best = 0.10;
                let hit = (index as f64 + 1.0) / 100.0;
                assert!(hit >= spec.c * best, "hit {hit} vs c·max {}", spec.c * best);
                assert!(queries <= 11);
            }
            other => panic!("expected a hit, got {other:?}"),
        }
    }

    #[test]
    fn signed_mode_and_bad_gamma_are_rejected() {
        let spec = JoinSpec::new(1.0, 0.5, JoinMode::Signed).unwrap();
        let q = RealVector::new(vec![1.0]).unwrap();
        assert!(cmips_from_threshold_search(|_| Ok(None), &spec, &q, 0.5).is_err());
        let spec = JoinSpec::new(1.0, 0.5, JoinMode::Unsigned).unwrap();
        assert!(cmips_from_threshold_search(|_| Ok(None), &spec, &q, 0.0).is_err());
    }
}
