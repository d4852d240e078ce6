//! Prefix-tree MIPS index over sketched data.

use std::collections::BTreeMap;
use std::ops::Range;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::Seed;
use crate::vector::RealVector;

use super::matrix::{sketch_rows, SketchMatrix, DEFAULT_ROW_CONSTANT};

/// Default number of independent sketch copies per node.
pub const DEFAULT_COPIES: usize = 9;

/// Default smallest representable inner product, `2⁻⁴⁰`.
pub const DEFAULT_GAMMA: f64 = 1.0 / (1u64 << 40) as f64;

/// Tunables of [`MipsIndex::build`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SketchParams {
    /// Row constant `C` in the per-node row-count formula.
    pub row_constant: f64,
    /// Independent repetitions per node; estimates report their median.
    pub copies: usize,
    /// Smallest inner product the index is expected to resolve.
    pub gamma: f64,
}

impl Default for SketchParams {
    fn default() -> Self {
        Self { row_constant: DEFAULT_ROW_CONSTANT, copies: DEFAULT_COPIES, gamma: DEFAULT_GAMMA }
    }
}

/// A node of the binary prefix tree: the `depth` most significant bits
/// of a data index, with value `bits`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NodeId {
    /// Number of index bits fixed by this node.
    pub depth: u32,
    /// The fixed bits, most significant first.
    pub bits: u64,
}

impl NodeId {
    /// The root fixes no bits.
    pub fn root() -> Self {
        Self { depth: 0, bits: 0 }
    }

    /// Child extending the prefix by `bit`.
    pub fn child(&self, bit: u64) -> Self {
        Self { depth: self.depth + 1, bits: (self.bits << 1) | (bit & 1) }
    }

    /// Heap-style numbering, unique across depths.
    fn ordinal(&self) -> u64 {
        (1 << self.depth) | self.bits
    }
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct NodeSketch {
    /// Data vectors covered by the node.
    pub(crate) count: usize,
    /// `copies` blocks of `rows × d` sketched data.
    pub(crate) blocks: Vec<Vec<RealVector>>,
}

/// Sketched data matrix plus a prefix tree of sub-sketches, supporting
/// `ℓ_∞` estimates and bit-by-bit recovery of near-maximizers.
///
/// Node `(δ, b)` covers the data indices whose top `δ` bits (out of
/// `⌈log₂ n⌉`) equal `b`; every vector appears in exactly `⌈log₂ n⌉ + 1`
/// node sketches. Per-node row counts halve with depth.
#[derive(Debug, Clone, PartialEq)]
pub struct MipsIndex {
    pub(crate) len: usize,
    pub(crate) dim: usize,
    pub(crate) kappa: f64,
    pub(crate) seed: Seed,
    pub(crate) copies: usize,
    pub(crate) gamma: f64,
    pub(crate) nodes: BTreeMap<NodeId, NodeSketch>,
}

impl MipsIndex {
    /// Sketches `data` into a full prefix tree.
    ///
    /// Node `(δ, b)` gets `max(1, ⌊m_root/2^δ⌋)` rows per copy with
    /// `m_root = ⌈C·n^{1-2/κ}·ln(n+1)⌉`, keeping the total sketched-row
    /// count within `(⌈log₂ n⌉+1) · m_root · copies` whenever
    /// `m_root ≥ n`. Each `(node, copy)` pair draws from its own seed
    /// stream, so the result is independent of build parallelism.
    pub fn build(data: &[RealVector], kappa: f64, seed: Seed, params: &SketchParams) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::InvalidParameter("index needs at least one data vector".into()));
        }
        let dim = data[0].dim();
        for row in data {
            if row.dim() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: row.dim() });
            }
        }
        if params.copies == 0 {
            return Err(Error::InvalidParameter("copies must be at least 1".into()));
        }
        if !(params.gamma > 0.0 && params.gamma.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "gamma must be positive and finite, got {}",
                params.gamma
            )));
        }
        let n = data.len();
        let levels = levels_for(n);
        let m_root = sketch_rows(n, kappa, params.row_constant)?;
        let copies = params.copies;
        let seed_val = seed;

        let mut ids = Vec::new();
        for depth in 0..=levels {
            let width = levels - depth;
            let prefixes = ((n - 1) >> width) + 1;
            for bits in 0..prefixes as u64 {
                ids.push(NodeId { depth, bits });
            }
        }
        let nodes = ids
            .into_par_iter()
            .map(|id| {
                let members = member_range(id, levels, n);
                let slice = &data[members.clone()];
                let rows = (m_root >> id.depth).max(1);
                let blocks = (0..copies)
                    .map(|copy| {
                        let stream = id.ordinal() * copies as u64 + copy as u64;
                        let sk = SketchMatrix::sample_with_rows(
                            slice.len(),
                            kappa,
                            rows,
                            seed_val,
                            stream,
                        )?;
                        sk.apply_stack(slice)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok((id, NodeSketch { count: slice.len(), blocks }))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;

        Ok(Self { len: n, dim, kappa, seed, copies: params.copies, gamma: params.gamma, nodes })
    }

    /// Number of indexed data vectors.
    pub fn len(&self) -> usize {
        self.len
    }

    /// Always false; empty indexes cannot be built.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Data dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The norm order of the sketches.
    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// Build seed.
    pub fn seed(&self) -> Seed {
        self.seed
    }

    /// Sketch copies per node.
    pub fn copies(&self) -> usize {
        self.copies
    }

    /// Smallest resolvable inner product.
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Tree depth `⌈log₂ n⌉`; leaves fix this many bits.
    pub fn levels(&self) -> u32 {
        levels_for(self.len)
    }

    /// All stored nodes in `(depth, bits)` order.
    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.nodes.keys().copied()
    }

    /// The data indices covered by a node.
    pub fn node_members(&self, node: NodeId) -> Result<Range<usize>> {
        self.check_node(node)?;
        Ok(member_range(node, self.levels(), self.len))
    }

    /// Sketched rows per copy at a node.
    pub fn node_rows(&self, node: NodeId) -> Result<usize> {
        Ok(self.sketch_at(node)?.blocks[0].len())
    }

    fn check_node(&self, node: NodeId) -> Result<()> {
        self.sketch_at(node).map(|_| ())
    }

    fn sketch_at(&self, node: NodeId) -> Result<&NodeSketch> {
        self.nodes
            .get(&node)
            .ok_or(Error::UnknownNode { depth: node.depth, bits: node.bits })
    }

    /// Median over copies of `‖A_s q‖_∞` at a node; tracks
    /// `max_{p ∈ node} |p·q|` within a factor around `n^{1/κ}`.
    pub fn estimate_max(&self, node: NodeId, query: &RealVector) -> Result<f64> {
        self.estimate_counted(node, query).map(|(estimate, _)| estimate)
    }

    fn estimate_counted(&self, node: NodeId, query: &RealVector) -> Result<(f64, u64)> {
        if query.dim() != self.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: query.dim() });
        }
        let sketch = self.sketch_at(node)?;
        let mut estimates: Vec<f64> = sketch
            .blocks
            .iter()
            .map(|rows| {
                rows.iter()
                    .map(|row| row.dot(query).expect("stored rows share the index dimension"))
                    .fold(0.0f64, |acc, v| acc.max(v.abs()))
            })
            .collect();
        estimates.sort_by(|a, b| a.partial_cmp(b).expect("estimates are finite"));
        let median = estimates[(estimates.len() - 1) / 2];
        let work = (sketch.blocks.len() * sketch.blocks[0].len() * self.dim) as u64;
        Ok((median, work))
    }

    /// Bit-by-bit recovery of an approximate maximizer of `|p·q|`.
    ///
    /// Walks from the root, estimating both children at each level and
    /// descending into the larger (ties and missing 1-children go to the
    /// 0-child); the surviving leaf prefix is the returned index.
    pub fn recover(&self, query: &RealVector) -> Result<usize> {
        self.recover_with_work(query).map(|(index, _)| index)
    }

    /// [`recover`](Self::recover) plus the number of multiply-adds spent
    /// in estimates, `Σ copies·rows·d` over visited nodes.
    pub fn recover_with_work(&self, query: &RealVector) -> Result<(usize, u64)> {
        if query.dim() != self.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: query.dim() });
        }
        let mut node = NodeId::root();
        let mut work = 0;
        for _ in 0..self.levels() {
            let zero = node.child(0);
            let one = node.child(1);
            node = if self.nodes.contains_key(&one) {
                let (e0, w0) = self.estimate_counted(zero, query)?;
                let (e1, w1) = self.estimate_counted(one, query)?;
                work += w0 + w1;
                if e1 > e0 {
                    one
                } else {
                    zero
                }
            } else {
                zero
            };
        }
        Ok((node.bits as usize, work))
    }
}

fn levels_for(n: usize) -> u32 {
    n.next_power_of_two().trailing_zeros()
}

fn member_range(node: NodeId, levels: u32, n: usize) -> Range<usize> {
    let width = levels - node.depth;
    let lo = (node.bits as usize) << width;
    let hi = (lo + (1 << width)).min(n);
    lo..hi
}

/// Joins each query to a recovered near-maximizer of `|p·q|` over `P`.
///
/// Returns `(data index, query index)` pairs in query order; quality per
/// the [`MipsIndex::recover`] contract.
pub fn unsigned_join_via_sketch(
    data: &[RealVector],
    queries: &[RealVector],
    kappa: f64,
    seed: Seed,
) -> Result<Vec<(usize, usize)>> {
    let index = MipsIndex::build(data, kappa, seed, &SketchParams::default())?;
    queries
        .par_iter()
        .enumerate()
        .map(|(qi, q)| Ok((index.recover(q)?, qi)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn random_unit(dim: usize, rng: &mut impl Rng) -> RealVector {
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-9);
        RealVector::new(v.into_iter().map(|x| x / norm).collect()).unwrap()
    }

    #[test]
    fn tree_shape_covers_every_vector_once_per_level() {
        for n in [1usize, 2, 3, 7, 8, 9, 64] {
            let data: Vec<RealVector> = (0..n).map(|_| RealVector::zeros(3)).collect();
            let index = MipsIndex::build(&data, 4.0, Seed(5), &SketchParams::default()).unwrap();
            let levels = index.levels();
            let mut appearances = vec![0u32; n];
            for node in index.nodes() {
                for i in index.node_members(node).unwrap() {
                    appearances[i] += 1;
                }
            }
            assert!(
                appearances.iter().all(|&a| a == levels + 1),
                "n={n}: appearances {appearances:?}"
            );
        }
    }

    #[test]
    fn singleton_index_always_recovers_zero() {
        let data = vec![RealVector::new(vec![0.3, -0.4]).unwrap()];
        let index = MipsIndex::build(&data, 4.0, Seed(9), &SketchParams::default()).unwrap();
        assert_eq!(index.levels(), 0);
        let q = RealVector::new(vec![1.0, 1.0]).unwrap();
        assert_eq!(index.recover(&q).unwrap(), 0);
    }

    #[test]
    fn zero_query_estimates_zero() {
        let data: Vec<RealVector> =
            (0..8).map(|i| RealVector::new(vec![i as f64, 1.0]).unwrap()).collect();
        let index = MipsIndex::build(&data, 4.0, Seed(2), &SketchParams::default()).unwrap();
        let est = index.estimate_max(NodeId::root(), &RealVector::zeros(2)).unwrap();
        assert_eq!(est, 0.0);
    }

    #[test]
    fn unknown_node_is_reported() {
        let data = vec![RealVector::zeros(2); 4];
        let index = MipsIndex::build(&data, 4.0, Seed(2), &SketchParams::default()).unwrap();
        let missing = NodeId { depth: 9, bits: 3 };
        assert!(matches!(
            index.estimate_max(missing, &RealVector::zeros(2)),
            Err(Error::UnknownNode { depth: 9, bits: 3 })
        ));
    }

    #[test]
    fn planted_vector_is_recovered() {
        let mut rng = Seed(1234).rng(0);
        let dim = 16;
        let q = random_unit(dim, &mut rng);
        let planted = 11usize;
        let data: Vec<RealVector> = (0..32)
            .map(|i| {
                if i == planted {
                    q.clone()
                } else {
                    // Keep background products far below the planted one.
                    let mut v = random_unit(dim, &mut rng).scale(0.05);
                    let shift = q.scale(-v.dot(&q).unwrap());
                    v = RealVector::new(
                        v.entries().iter().zip(shift.entries()).map(|(a, b)| a + b).collect(),
                    )
                    .unwrap();
                    v
                }
            })
            .collect();
        let mut hits = 0;
        for seed in 0..20 {
            let index = MipsIndex::build(&data, 4.0, Seed(seed), &SketchParams::default()).unwrap();
            if index.recover(&q).unwrap() == planted {
                hits += 1;
            }
        }
        assert!(hits >= 18, "planted recovery {hits}/20");
    }

    #[test]
    fn recovery_work_is_constant_per_query() {
        let data: Vec<RealVector> = {
            let mut rng = Seed(8).rng(0);
            (0..64).map(|_| random_unit(8, &mut rng)).collect()
        };
        let index = MipsIndex::build(&data, 2.0, Seed(8), &SketchParams::default()).unwrap();
        let mut rng = Seed(9).rng(0);
        let works: Vec<u64> = (0..5)
            .map(|_| index.recover_with_work(&random_unit(8, &mut rng)).unwrap().1)
            .collect();
        assert!(works.iter().all(|&w| w == works[0] && w > 0), "works {works:?}");
    }

    #[test]
    fn join_pairs_queries_in_order() {
        let mut rng = Seed(21).rng(0);
        let data: Vec<RealVector> = (0..16).map(|_| random_unit(6, &mut rng)).collect();
        let queries: Vec<RealVector> = (0..5).map(|_| random_unit(6, &mut rng)).collect();
        let pairs = unsigned_join_via_sketch(&data, &queries, 4.0, Seed(3)).unwrap();
        assert_eq!(pairs.len(), 5);
        for (qi, (p, q)) in pairs.iter().enumerate() {
            assert_eq!(*q, qi);
            assert!(*p < 16);
        }
        assert!(unsigned_join_via_sketch(&data, &[], 4.0, Seed(3)).unwrap().is_empty());
    }

    #[test]
    fn build_rejects_bad_inputs() {
        assert!(MipsIndex::build(&[], 4.0, Seed(0), &SketchParams::default()).is_err());
        let data = vec![RealVector::zeros(2), RealVector::zeros(3)];
        assert!(MipsIndex::build(&data, 4.0, Seed(0), &SketchParams::default()).is_err());
        let data = vec![RealVector::zeros(2)];
        let bad = SketchParams { copies: 0, ..SketchParams::default() };
        assert!(MipsIndex::build(&data, 4.0, Seed(0), &bad).is_err());
        let bad = SketchParams { gamma: 0.0, ..SketchParams::default() };
        assert!(MipsIndex::build(&data, 4.0, Seed(0), &bad).is_err());
    }
}
