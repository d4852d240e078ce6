//! Vector domains and combinators.
//!
//! Three entry domains appear throughout: `{0,1}` ([`BinaryVector`]),
//! `{-1,+1}` ([`SignVector`]) and real coordinates ([`RealVector`]).
//! The combinators shared by the embedding constructions are concatenation
//! (`⊞`), repetition (`xⁿ`) and the vectorized outer product (`⊠`), with the
//! defining algebra
//!
//! ```text
//! concat(a,b) · concat(c,d) = a·c + b·d
//! repeat(x,n) · repeat(y,n) = n · (x·y)
//! tensor(a,b) · tensor(c,d) = (a·c)(b·d)
//! ```
//!
//! Inner products over the two discrete domains are exact integers; real
//! inner products accumulate in double precision with error `O(d·ulp)`.
//! All values are immutable; combinators return new vectors, so everything
//! here is safe to share across threads.

use crate::error::{Error, Result};

fn check_dims(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left, right })
    }
}

fn concat_entries<T: Copy>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    out.extend_from_slice(a);
    out.extend_from_slice(b);
    out
}

fn repeat_entries<T: Copy>(a: &[T], n: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(a.len() * n);
    for _ in 0..n {
        out.extend_from_slice(a);
    }
    out
}

/// Row-major outer product: the left index varies slowest.
fn tensor_entries<T: Copy + std::ops::Mul<Output = T>>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            out.push(x * y);
        }
    }
    out
}

macro_rules! combinators {
    ($T:ident) => {
        impl $T {
            /// Number of coordinates.
            pub fn dim(&self) -> usize {
                self.entries.len()
            }

            /// Coordinate slice.
            pub fn entries(&self) -> &[<Self as sealed::Entries>::Elem] {
                &self.entries
            }

            /// Concatenation `self ⊞ other`; inner products add blockwise.
            pub fn concat(&self, other: &Self) -> Self {
                Self { entries: concat_entries(&self.entries, &other.entries) }
            }

            /// `self` concatenated with itself `n` times (`n = 0` gives the
            /// empty vector).
            pub fn repeat(&self, n: usize) -> Self {
                Self { entries: repeat_entries(&self.entries, n) }
            }

            /// Vectorized outer product `self ⊠ other` (row-major, left index
            /// slowest); inner products multiply:
            /// `tensor(a,b)·tensor(c,d) = (a·c)(b·d)`.
            pub fn tensor(&self, other: &Self) -> Self {
                Self { entries: tensor_entries(&self.entries, &other.entries) }
            }
        }
    };
}

mod sealed {
    pub trait Entries {
        type Elem: Copy;
    }
}

/// Vector over `{0,1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryVector {
    entries: Vec<u8>,
}

impl sealed::Entries for BinaryVector {
    type Elem = u8;
}

impl BinaryVector {
    /// Validates that every entry is 0 or 1.
    pub fn new(entries: Vec<u8>) -> Result<Self> {
        if let Some(pos) = entries.iter().position(|&e| e > 1) {
            return Err(Error::InvalidParameter(format!(
                "binary entry at {pos} is {}, expected 0 or 1",
                entries[pos]
            )));
        }
        Ok(Self { entries })
    }

    pub(crate) fn from_unchecked(entries: Vec<u8>) -> Self {
        debug_assert!(entries.iter().all(|&e| e <= 1));
        Self { entries }
    }

    /// Exact inner product.
    pub fn dot(&self, other: &Self) -> Result<i64> {
        check_dims(self.dim(), other.dim())?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| i64::from(a & b))
            .sum())
    }
}

combinators!(BinaryVector);

/// Vector over `{-1,+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignVector {
    entries: Vec<i8>,
}

impl sealed::Entries for SignVector {
    type Elem = i8;
}

impl SignVector {
    /// Validates that every entry is -1 or +1.
    pub fn new(entries: Vec<i8>) -> Result<Self> {
        if let Some(pos) = entries.iter().position(|&e| e != 1 && e != -1) {
            return Err(Error::InvalidParameter(format!(
                "sign entry at {pos} is {}, expected -1 or +1",
                entries[pos]
            )));
        }
        Ok(Self { entries })
    }

    pub(crate) fn from_unchecked(entries: Vec<i8>) -> Self {
        debug_assert!(entries.iter().all(|&e| e == 1 || e == -1));
        Self { entries }
    }

    /// Exact inner product.
    pub fn dot(&self, other: &Self) -> Result<i64> {
        check_dims(self.dim(), other.dim())?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| i64::from(a) * i64::from(b))
            .sum())
    }

    /// Entrywise negation.
    pub fn negate(&self) -> Self {
        Self { entries: self.entries.iter().map(|&e| -e).collect() }
    }
}

combinators!(SignVector);

/// Vector over the reals (all entries finite).
#[derive(Debug, Clone, PartialEq)]
pub struct RealVector {
    entries: Vec<f64>,
}

impl sealed::Entries for RealVector {
    type Elem = f64;
}

impl RealVector {
    /// Validates that every entry is finite.
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if let Some(pos) = entries.iter().position(|e| !e.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "real entry at {pos} is {}, expected finite",
                entries[pos]
            )));
        }
        Ok(Self { entries })
    }

    pub(crate) fn from_unchecked(entries: Vec<f64>) -> Self {
        debug_assert!(entries.iter().all(|e| e.is_finite()));
        Self { entries }
    }

    /// All-zero vector.
    pub fn zeros(dim: usize) -> Self {
        Self { entries: vec![0.0; dim] }
    }

    /// Double-precision inner product.
    pub fn dot(&self, other: &Self) -> Result<f64> {
        check_dims(self.dim(), other.dim())?;
        Ok(self.entries.iter().zip(&other.entries).map(|(a, b)| a * b).sum())
    }

    /// Squared Euclidean norm.
    pub fn norm_squared(&self) -> f64 {
        self.entries.iter().map(|e| e * e).sum()
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    /// Entrywise scaling by `factor`.
    pub fn scale(&self, factor: f64) -> Self {
        Self { entries: self.entries.iter().map(|e| e * factor).collect() }
    }
}

combinators!(RealVector);

/// Bit-packed `{-1,+1}` vector for bulk exact inner products.
///
/// `dot` costs one xor + popcount per 64 coordinates, which is what makes
/// the exhaustive embedding checks and the reduction pipeline affordable at
/// six-figure output dimensions.
#[derive(Debug, Clone)]
pub struct PackedSignVector {
    words: Vec<u64>,
    dim: usize,
}

impl PackedSignVector {
    /// Packs entry `-1` as bit 1.
    pub fn pack(v: &SignVector) -> Self {
        let dim = v.dim();
        let mut words = vec![0u64; dim.div_ceil(64)];
        for (i, &e) in v.entries().iter().enumerate() {
            if e == -1 {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        Self { words, dim }
    }

    /// Number of coordinates.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Exact inner product: `dim - 2·(disagreeing coordinates)`.
    pub fn dot(&self, other: &Self) -> Result<i64> {
        check_dims(self.dim, other.dim)?;
        let disagree: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones())
            .sum();
        Ok(self.dim as i64 - 2 * i64::from(disagree))
    }
}

/// Bit-packed `{0,1}` vector for bulk exact inner products.
#[derive(Debug, Clone)]
pub struct PackedBinaryVector {
    words: Vec<u64>,
    dim: usize,
}

impl PackedBinaryVector {
    /// Packs entry `1` as bit 1.
    pub fn pack(v: &BinaryVector) -> Self {
        let dim = v.dim();
        let mut words = vec![0u64; dim.div_ceil(64)];
        for (i, &e) in v.entries().iter().enumerate() {
            if e == 1 {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        Self { words, dim }
    }

    /// Number of coordinates.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Exact inner product: count of shared ones.
    pub fn dot(&self, other: &Self) -> Result<i64> {
        check_dims(self.dim, other.dim)?;
        let shared: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        Ok(i64::from(shared))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bin(bits: &[u8]) -> BinaryVector {
        BinaryVector::new(bits.to_vec()).unwrap()
    }

    fn sgn(signs: &[i8]) -> SignVector {
        SignVector::new(signs.to_vec()).unwrap()
    }

    #[test]
    fn disjoint_supports_are_orthogonal() {
        assert_eq!(bin(&[1, 0, 1, 0]).dot(&bin(&[0, 1, 0, 1])).unwrap(), 0);
    }

    #[test]
    fn antipodal_sign_vectors() {
        assert_eq!(sgn(&[1, 1, 1]).dot(&sgn(&[-1, -1, -1])).unwrap(), -3);
    }

    #[test]
    fn real_dot_hand_value() {
        let x = RealVector::new(vec![0.6, 0.8]).unwrap();
        let y = RealVector::new(vec![0.5, 0.5]).unwrap();
        assert!((x.dot(&y).unwrap() - 0.7).abs() < 1e-15);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let err = bin(&[1, 0]).dot(&bin(&[1])).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { left: 2, right: 1 }));
    }

    #[test]
    fn invalid_entries_rejected() {
        assert!(BinaryVector::new(vec![0, 2]).is_err());
        assert!(SignVector::new(vec![1, 0]).is_err());
        assert!(RealVector::new(vec![f64::NAN]).is_err());
    }

    #[test]
    fn concat_examples() {
        assert_eq!(sgn(&[1]).concat(&sgn(&[-1])), sgn(&[1, -1]));
        let empty = BinaryVector::new(vec![]).unwrap();
        assert_eq!(empty.concat(&bin(&[1, 0])), bin(&[1, 0]));
        assert_eq!(bin(&[1, 1]).concat(&bin(&[0, 1])), bin(&[1, 1, 0, 1]));
    }

    #[test]
    fn repeat_examples() {
        assert_eq!(sgn(&[1, -1]).repeat(2), sgn(&[1, -1, 1, -1]));
        assert_eq!(sgn(&[1, -1]).repeat(0).dim(), 0);
        let x = sgn(&[1]).repeat(5);
        let y = sgn(&[-1]).repeat(5);
        assert_eq!(x.dot(&y).unwrap(), -5);
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(sgn(&[1, -1]).tensor(&sgn(&[1, 1])), sgn(&[1, 1, -1, -1]));
        let y = sgn(&[1, -1, 1]);
        assert_eq!(sgn(&[1]).tensor(&y), y);
    }

    #[test]
    fn tensor_multiplicativity_spot_check() {
        let x = sgn(&[1, -1, 1]);
        let u = sgn(&[-1, -1, 1]);
        let y = sgn(&[1, 1, -1, 1]);
        let v = sgn(&[1, -1, -1, 1]);
        let lhs = x.tensor(&y).dot(&u.tensor(&v)).unwrap();
        assert_eq!(lhs, x.dot(&u).unwrap() * y.dot(&v).unwrap());
    }

    #[test]
    fn packed_sign_dot_matches_dense() {
        let x = sgn(&[1, -1, 1, 1, -1, 1, -1, -1, 1, 1, 1, -1, 1]);
        let y = sgn(&[-1, -1, 1, -1, -1, 1, 1, -1, 1, -1, 1, -1, -1]);
        let px = PackedSignVector::pack(&x);
        let py = PackedSignVector::pack(&y);
        assert_eq!(px.dot(&py).unwrap(), x.dot(&y).unwrap());
    }

    #[test]
    fn packed_binary_dot_matches_dense() {
        let x = bin(&[1, 0, 1, 1, 0, 1, 0, 0, 1]);
        let y = bin(&[0, 0, 1, 1, 0, 1, 1, 0, 1]);
        let px = PackedBinaryVector::pack(&x);
        let py = PackedBinaryVector::pack(&y);
        assert_eq!(px.dot(&py).unwrap(), x.dot(&y).unwrap());
    }
}
