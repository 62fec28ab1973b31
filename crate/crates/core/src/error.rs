use thiserror::Error;

/// Errors raised by the algebraic operations in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("letter {letter} is outside the alphabet [1, {rank}]")]
    LetterOutOfRange { letter: u32, rank: usize },

    #[error("invalid word: {0}")]
    ParseWord(String),

    #[error("invalid subset: {0}")]
    ParseSubset(String),

    #[error("subsets {lo} and {hi} do not satisfy {lo} <= {hi}")]
    NotOrdered { lo: String, hi: String },

    #[error("subsets {0} and {1} have different sizes")]
    SizeMismatch(String, String),

    #[error("matrix dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("cannot evaluate the empty word")]
    EmptyWord,

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("digraph vertices are not labelled by subsets")]
    UnlabelledDigraph,

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("constructed q-word failed verification: {0}")]
    Construction(String),

    #[error("rank {0} is out of the supported range")]
    RankOutOfRange(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
