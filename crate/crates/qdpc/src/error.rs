use thiserror::Error;

/// Errors shared across the crate.
///
/// Variants that reject user input carry enough context to report the exact
/// violated clause; variants ending in `Cap` mark operations that are only
/// supported up to a fixed dimension.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension {n} outside supported range 1..=16")]
    DimensionOutOfRange { n: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("coordinate {i} out of range for dimension {n}")]
    CoordinateOutOfRange { i: usize, n: usize },
    #[error("deletion undefined: vertex {vertex} has bit {found} at coordinate {i}, expected {k}")]
    RhoUndefined {
        vertex: String,
        i: usize,
        k: u8,
        found: u8,
    },
    #[error("invalid vertex literal {text:?}: {reason}")]
    BadVertexLiteral { text: String, reason: &'static str },
    #[error("invalid pair literal {text:?}: {reason}")]
    BadPairLiteral { text: String, reason: &'static str },
    #[error("invalid pair-set literal: {reason}")]
    BadPairSetLiteral { reason: String },
    #[error("invalid connector literal: {reason}")]
    BadConnectorLiteral { reason: String },
    #[error("pair-set rejected: vertex {vertex} appears in more than one pair")]
    OverlappingPairs { vertex: String },
    #[error("pair-set rejected: nonempty but every pair is degenerate")]
    AllDegenerate,
    #[error("operation requires a set of two or three edge-pairs")]
    NotEdgePairTriple,
    #[error("bridge {left}-{right} is not an edge in direction {i}")]
    BadBridge { left: String, right: String, i: usize },
    #[error("merge step does not apply: {reason}")]
    BadMergeStep { reason: String },
    #[error("completion search requires an odd pair-set")]
    CompletionNeedsOdd,
    #[error("no completion found within the search bound")]
    CompletionNotFound,
    #[error("even-distance endpoints admit no spanning path (parity obstruction)")]
    EvenDistanceEndpoints,
    #[error("exhaustive decision limited to dimension {max}; got {n}")]
    OracleDimensionCap { n: usize, max: usize },
    #[error("canonicalization limited to dimension {max}; got {n}")]
    CanonicalDimensionCap { n: usize, max: usize },
    #[error("class enumeration limited to dimension {max}; got {n}")]
    EnumerationDimensionCap { n: usize, max: usize },
    #[error("recursive construction does not cover {pairs}: {reason}")]
    ConstructorUnsupported { pairs: String, reason: String },
    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExhausted { nodes: u64 },
    #[error("verdict sources disagree on {pairs}: oracle={oracle}, constructor={constructor}")]
    VerdictDisagreement {
        pairs: String,
        oracle: String,
        constructor: String,
    },
    #[error("internal invariant failed: {what}")]
    Internal { what: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
