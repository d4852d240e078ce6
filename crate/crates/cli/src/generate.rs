//! Random dataset generation for experiments.

use anyhow::{bail, Result};
use clap::ValueEnum;
use ips_core::{BinaryVector, Dataset, Domain, RealVector, Seed, SignVector};
use rand::Rng;
use rand_distr::StandardNormal;

/// Optional structure planted into an otherwise uniform dataset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Plant {
    /// No planted pair.
    None,
    /// Two vectors with inner product exactly zero.
    Orthogonal,
    /// Two vectors with inner product near the maximum possible.
    Mips,
}

/// A generated dataset plus the indices of any planted pair.
pub struct Generated {
    pub dataset: Dataset,
    pub planted: Option<(usize, usize)>,
}

/// Draws `n` uniform vectors of dimension `d`: uniform bits, uniform
/// signs, or real vectors uniform in the unit ball (isotropic direction
/// scaled by a `radius^(1/d)`-distributed radius).
///
/// Stream 0 of `seed` drives the base draw and stream 1 the plant, so a
/// planted dataset differs from the unplanted one only at the pair.
pub fn generate(n: usize, d: usize, domain: Domain, seed: Seed, plant: Plant) -> Result<Generated> {
    if n == 0 || d == 0 {
        bail!("dataset shape must be positive, got n={n} d={d}");
    }
    let mut rng = seed.rng(0);
    let mut dataset = match domain {
        Domain::Binary => Dataset::Binary(
            (0..n).map(|_| binary_row(&mut rng, d)).collect(),
        ),
        Domain::Sign => Dataset::Sign((0..n).map(|_| sign_row(&mut rng, d)).collect()),
        Domain::Real => Dataset::Real((0..n).map(|_| ball_row(&mut rng, d)).collect()),
    };
    let planted = match plant {
        Plant::None => None,
        Plant::Orthogonal | Plant::Mips => {
            if n < 2 {
                bail!("planting a pair needs at least two vectors, got n={n}");
            }
            let mut rng = seed.rng(1);
            let i = rng.gen_range(0..n - 1);
            let j = rng.gen_range(i + 1..n);
            match plant {
                Plant::Orthogonal => plant_orthogonal(&mut dataset, i, j, &mut rng)?,
                Plant::Mips => plant_mips(&mut dataset, i, j, &mut rng),
                Plant::None => unreachable!(),
            }
            Some((i, j))
        }
    };
    Ok(Generated { dataset, planted })
}

fn binary_row(rng: &mut impl Rng, d: usize) -> BinaryVector {
    BinaryVector::new((0..d).map(|_| rng.gen_range(0..=1u8)).collect()).unwrap()
}

fn sign_row(rng: &mut impl Rng, d: usize) -> SignVector {
    SignVector::new((0..d).map(|_| if rng.gen::<bool>() { 1 } else { -1 }).collect()).unwrap()
}

/// A uniform point of the unit ball: uniform direction times `u^(1/d)`.
fn ball_row(rng: &mut impl Rng, d: usize) -> RealVector {
    let direction = loop {
        let gauss: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
        let norm = gauss.iter().map(|g| g * g).sum::<f64>().sqrt();
        if norm > 0.0 {
            break gauss.into_iter().map(|g| g / norm).collect::<Vec<_>>();
        }
    };
    let radius = rng.gen::<f64>().powf(1.0 / d as f64);
    RealVector::new(direction.into_iter().map(|e| e * radius).collect()).unwrap()
}

fn plant_orthogonal(
    dataset: &mut Dataset,
    i: usize,
    j: usize,
    rng: &mut impl Rng,
) -> Result<()> {
    match dataset {
        Dataset::Binary(rows) => {
            // Disjoint supports: the second vector is random off the
            // first one's support and zero on it.
            let base = rows[i].clone();
            let other = BinaryVector::new(
                base.entries()
                    .iter()
                    .map(|&b| if b == 1 { 0 } else { rng.gen_range(0..=1u8) })
                    .collect(),
            )
            .unwrap();
            rows[j] = other;
        }
        Dataset::Sign(rows) => {
            let d = rows[i].dim();
            if d % 2 != 0 {
                bail!("an orthogonal sign pair needs even dimension, got d={d}");
            }
            // Flipping exactly half the coordinates zeroes the product.
            let mut flipped: Vec<i8> = rows[i].entries().to_vec();
            for pos in rand::seq::index::sample(rng, d, d / 2) {
                flipped[pos] = -flipped[pos];
            }
            rows[j] = SignVector::new(flipped).unwrap();
        }
        Dataset::Real(rows) => {
            let d = rows[i].dim();
            let base = rows[i].clone();
            let norm_sq = base.norm_squared();
            // Gram-Schmidt against the first vector; the projection only
            // shrinks the draw, so the result stays inside the ball.
            let other = loop {
                let w = ball_row(rng, d);
                let candidate = if norm_sq > 0.0 {
                    let coeff = w.dot(&base).unwrap() / norm_sq;
                    RealVector::new(
                        w.entries()
                            .iter()
                            .zip(base.entries())
                            .map(|(we, be)| we - coeff * be)
                            .collect(),
                    )
                    .unwrap()
                } else {
                    w
                };
                if candidate.norm() > 1e-6 {
                    break candidate;
                }
            };
            rows[j] = other;
        }
    }
    Ok(())
}

fn plant_mips(dataset: &mut Dataset, i: usize, j: usize, rng: &mut impl Rng) {
    match dataset {
        Dataset::Binary(rows) => rows[j] = rows[i].clone(),
        Dataset::Sign(rows) => rows[j] = rows[i].clone(),
        Dataset::Real(rows) => {
            // A shared near-unit direction makes the pair's product close
            // to the ceiling of 1.
            let d = rows[i].dim();
            let direction = loop {
                let w = ball_row(rng, d);
                if w.norm() > 1e-6 {
                    break w.scale(0.999 / w.norm());
                }
            };
            rows[i] = direction.clone();
            rows[j] = direction;
        }
    }
}
