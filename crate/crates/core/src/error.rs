use thiserror::Error;

/// Errors reported by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("column count mismatch: {left} vs {right}")]
    ColumnMismatch { left: usize, right: usize },
    #[error("not a sublattice")]
    NotSublattice,
    #[error("rank mismatch: {sub} vs {sup}")]
    RankMismatch { sub: usize, sup: usize },
    #[error("ragged matrix: row {row} has {found} entries, expected {expected}")]
    RaggedMatrix { row: usize, found: usize, expected: usize },

    #[error("cannot parse Cartan type {0:?}")]
    ParseType(String),
    #[error("inadmissible rank {rank} for type {family}")]
    InadmissibleRank { family: char, rank: usize },
    #[error("vector has length {found}, expected {expected}")]
    DimensionMismatch { found: usize, expected: usize },
    #[error("{0:?} is not a root")]
    NotARoot(Vec<i64>),
    #[error("root index {0} out of range")]
    RootOutOfRange(usize),
    #[error("inexact pairing: 2*{num}/{den}")]
    InexactPairing { num: i64, den: i64 },

    #[error("group elements act on different root systems ({left} vs {right} roots)")]
    ParentMismatch { left: usize, right: usize },
    #[error("subgroup has more than {cap} elements")]
    BfsOverflow { cap: usize },

    #[error("Hurwitz index {index} out of range for factorization of length {len}")]
    HurwitzIndex { index: usize, len: usize },

    #[error("expected {expected} roots, got {found}")]
    WrongCount { expected: usize, found: usize },
    #[error("roots span rank {found}, expected {expected}")]
    WrongRank { expected: usize, found: usize },
    #[error("roots are not pairwise obtuse")]
    NotObtuse,
    #[error("reflections do not generate the Weyl group")]
    DoesNotGenerate,
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
