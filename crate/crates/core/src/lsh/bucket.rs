//! Minimal bucketed hyperplane join.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::join::JoinMode;
use crate::ovp::{JoinThresholds, Joiner};
use crate::rng::Seed;
use crate::vector::RealVector;

use super::{CollisionFamily, HyperplaneFamily};

/// Multi-table hyperplane-bucketed join.
///
/// Table `t` buckets the normalized data rows under the `k`-bit code of
/// hash function `t`. A query probes its own bucket, and in unsigned mode
/// also the bitwise-complement bucket (near-antipodal pairs flip every
/// sign bit). The best-scoring probed candidate per query is reported iff
/// its score reaches `cs`.
///
/// The guarantee half of the joiner contract is probabilistic here: a pair
/// at angle `θ` shares a bucket in at least one table with probability
/// `1 - (1 - (1-θ/π)^k)^tables`. Callers re-verify reported pairs, so a
/// missed pair costs recall, never correctness.
#[derive(Debug, Clone, Copy)]
pub struct HyperplaneJoiner {
    /// Bits per hash code.
    pub k: u32,
    /// Number of independent hash tables.
    pub tables: u64,
    /// Seed for the table hash functions.
    pub seed: Seed,
}

fn unit_rows(dataset: &Dataset) -> Vec<RealVector> {
    dataset
        .to_real_rows()
        .into_iter()
        .map(|row| {
            let norm = row.norm();
            // Zero rows stay as they are; they hash deterministically and
            // never score above a positive threshold.
            if norm > 0.0 {
                row.scale(1.0 / norm)
            } else {
                row
            }
        })
        .collect()
}

impl Joiner for HyperplaneJoiner {
    fn join(
        &self,
        data: &Dataset,
        queries: &Dataset,
        thresholds: &JoinThresholds,
    ) -> Result<Vec<(usize, usize)>> {
        if self.tables == 0 {
            return Err(Error::InvalidParameter(
                "bucketed join needs at least one table".into(),
            ));
        }
        let family = HyperplaneFamily::new(self.k, self.seed)?;
        let mask = if self.k == 64 { !0 } else { (1u64 << self.k) - 1 };

        let data_rows = data.to_real_rows();
        let query_rows = queries.to_real_rows();
        let data_units = unit_rows(data);
        let query_units = unit_rows(queries);

        // Buckets per table, keyed by code; member lists keep index order.
        let buckets: Vec<HashMap<u64, Vec<usize>>> = (0..self.tables)
            .into_par_iter()
            .map(|table| {
                let mut bucket: HashMap<u64, Vec<usize>> = HashMap::new();
                for (i, unit) in data_units.iter().enumerate() {
                    let code = family.data_code(self.seed, table, unit)?;
                    bucket.entry(code).or_default().push(i);
                }
                Ok(bucket)
            })
            .collect::<Result<_>>()?;

        let pairs: Vec<Option<(usize, usize)>> = query_units
            .par_iter()
            .enumerate()
            .map(|(j, unit)| {
                let mut best: Option<(f64, usize)> = None;
                for (table, bucket) in buckets.iter().enumerate() {
                    let code = family.query_code(self.seed, table as u64, unit)?;
                    let mut probes = vec![code];
                    if thresholds.mode == JoinMode::Unsigned {
                        probes.push(!code & mask);
                    }
                    for probe in probes {
                        for &i in bucket.get(&probe).into_iter().flatten() {
                            let score =
                                thresholds.score(data_rows[i].dot(&query_rows[j])?);
                            if best.map_or(true, |(b, _)| score > b) {
                                best = Some((score, i));
                            }
                        }
                    }
                }
                Ok(best.and_then(|(score, i)| (score >= thresholds.cs).then_some((i, j))))
            })
            .collect::<Result<_>>()?;
        Ok(pairs.into_iter().flatten().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::SignVector;

    fn sign_dataset(rows: Vec<Vec<i8>>) -> Dataset {
        Dataset::Sign(rows.into_iter().map(|r| SignVector::new(r).unwrap()).collect())
    }

    fn random_signs(n: usize, d: usize, seed: Seed) -> Vec<Vec<i8>> {
        use rand::Rng;
        let mut rng = seed.rng(0);
        (0..n)
            .map(|_| (0..d).map(|_| if rng.gen::<bool>() { 1 } else { -1 }).collect())
            .collect()
    }

    #[test]
    fn finds_an_exact_match_in_every_table() {
        let d = 32;
        let mut rows = random_signs(7, d, Seed(5));
        let query = random_signs(1, d, Seed(6)).pop().unwrap();
        rows.push(query.clone());
        let data = sign_dataset(rows);
        let queries = sign_dataset(vec![query]);
        let thresholds = JoinThresholds {
            s: d as f64,
            cs: d as f64 / 2.0,
            mode: JoinMode::Signed,
        };
        let joiner = HyperplaneJoiner { k: 4, tables: 8, seed: Seed(1) };
        // An exact match hashes identically in every table, so the planted
        // pair cannot be missed.
        let pairs = joiner.join(&data, &queries, &thresholds).unwrap();
        assert_eq!(pairs, vec![(7, 0)]);
    }

    #[test]
    fn unsigned_mode_probes_the_antipodal_bucket() {
        let d = 32;
        let rows = random_signs(6, d, Seed(9));
        let negated: Vec<i8> = rows[2].iter().map(|&e| -e).collect();
        let data = sign_dataset(rows);
        let queries = sign_dataset(vec![negated]);
        let thresholds = JoinThresholds {
            s: d as f64,
            cs: d as f64 * 0.9,
            mode: JoinMode::Unsigned,
        };
        let joiner = HyperplaneJoiner { k: 6, tables: 4, seed: Seed(2) };
        let pairs = joiner.join(&data, &queries, &thresholds).unwrap();
        assert_eq!(pairs, vec![(2, 0)]);
    }

    #[test]
    fn reports_nothing_below_the_relaxed_threshold() {
        let d = 16;
        let rows = random_signs(5, d, Seed(11));
        let queries = sign_dataset(random_signs(3, d, Seed(12)));
        let data = sign_dataset(rows);
        let thresholds = JoinThresholds {
            s: d as f64,
            cs: d as f64,
            mode: JoinMode::Signed,
        };
        let joiner = HyperplaneJoiner { k: 2, tables: 6, seed: Seed(3) };
        for (i, j) in joiner.join(&data, &queries, &thresholds).unwrap() {
            let score = data.to_real_rows()[i].dot(&queries.to_real_rows()[j]).unwrap();
            assert!(score >= thresholds.cs);
        }
    }

    #[test]
    fn zero_tables_is_rejected() {
        let data = sign_dataset(random_signs(2, 8, Seed(1)));
        let thresholds = JoinThresholds { s: 8.0, cs: 4.0, mode: JoinMode::Signed };
        let joiner = HyperplaneJoiner { k: 2, tables: 0, seed: Seed(1) };
        assert!(joiner.join(&data, &data, &thresholds).is_err());
    }

    #[test]
    fn repeated_runs_agree() {
        let data = sign_dataset(random_signs(20, 24, Seed(21)));
        let queries = sign_dataset(random_signs(10, 24, Seed(22)));
        let thresholds = JoinThresholds { s: 12.0, cs: 6.0, mode: JoinMode::Signed };
        let joiner = HyperplaneJoiner { k: 3, tables: 5, seed: Seed(4) };
        let first = joiner.join(&data, &queries, &thresholds).unwrap();
        let second = joiner.join(&data, &queries, &thresholds).unwrap();
        assert_eq!(first, second);
    }
}
