use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank must be 2, 3 or 4, got {0}")]
    Rank(u8),
    #[error("bad letter token {token:?} for rank {r}")]
    Letter { token: String, r: u8 },
    #[error("descent undefined for unsorted pair at position {0}")]
    UnsortedPair(usize),
    #[error("position {pos} out of range for word of length {len}")]
    Position { pos: usize, len: usize },
    #[error("clasp sequence does not fit type: {0}")]
    ClaspMismatch(String),
    #[error("clasp sequence is not sorted")]
    UnsortedClasp,
    #[error("word is not in BL(C): {0}")]
    NotInBl(String),
    #[error("malformed tableau: {0}")]
    Tableau(String),
    #[error("invalid graph: {0}")]
    Graph(String),
    #[error("graph parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("move not applicable: {0}")]
    Move(String),
    #[error("labeling failed: {0}")]
    Labeling(String),
    #[error("growth failed: {0}")]
    Growth(String),
    #[error("rule file error on line {line}: {msg}")]
    Rule { line: usize, msg: String },
    #[error("search budget of {0} states exceeded")]
    Budget(usize),
    #[error("swap not defined: {0}")]
    Swap(String),
    #[error("saturation mismatch: {0}")]
    Saturation(String),
    #[error("dimension cap exceeded: {0}")]
    DimensionCap(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
