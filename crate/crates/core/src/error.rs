//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by vector operations, embeddings, indexes and generators.
#[derive(Debug, Error)]
#[non_exhaustive]
pub enum Error {
    /// Two vectors that must share a dimension do not.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch {
        /// Dimension of the left operand.
        left: usize,
        /// Dimension of the right operand.
        right: usize,
    },

    /// A parameter fell outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An embedded vector would exceed the configured memory budget.
    #[error("embedding dimension {required} exceeds the memory budget of {budget} entries")]
    BudgetExceeded {
        /// Entries the embedding would need.
        required: u128,
        /// Configured maximum number of entries.
        budget: u128,
    },

    /// A vector violated a required norm bound.
    #[error("{role} vector{} has norm {norm} exceeding the bound {bound}", index.map(|i| format!(" #{i}")).unwrap_or_default())]
    NormViolation {
        /// Which side the vector belongs to ("data" or "query").
        role: &'static str,
        /// Position in its set, when applicable.
        index: Option<usize>,
        /// The offending norm.
        norm: f64,
        /// The violated bound.
        bound: f64,
    },

    /// A coordinate cannot be encoded exactly by the fixed-point codec.
    #[error("coordinate {index} = {value} is not representable in the {bits}-bit fixed-point codec")]
    NonRepresentable {
        /// Coordinate position.
        index: usize,
        /// Offending value.
        value: f64,
        /// Codec width.
        bits: u32,
    },

    /// No (q, t) pair satisfies the incoherent-family requirements.
    #[error("no incoherent family: {0}")]
    FamilyInfeasible(String),

    /// A sketch-index node lookup used a prefix that is not in the tree.
    #[error("unknown index node: depth {depth}, bits {bits:#b}")]
    UnknownNode {
        /// Prefix length.
        depth: u32,
        /// Prefix bits (most significant input bit first).
        bits: u64,
    },

    /// Malformed dataset or index file.
    #[error("format error: {0}")]
    Format(String),

    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T, E = Error> = std::result::Result<T, E>;
