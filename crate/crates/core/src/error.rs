use std::path::PathBuf;
use thiserror::Error;

/// Errors shared across network construction, retrieval, and reporting.
#[derive(Debug, Error)]
pub enum Error {
    #[error("network needs at least 2 neurons, got {0}")]
    NetworkTooSmall(usize),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("element {index} is {value}, expected -1 or +1")]
    NotBipolar { index: usize, value: i64 },

    #[error("matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },

    #[error("entry ({row},{col}) = {value} breaks symmetry against ({col},{row}) = {mirror}")]
    NotSymmetric {
        row: usize,
        col: usize,
        value: f64,
        mirror: f64,
    },

    #[error("diagonal entry ({0},{0}) must be zero")]
    NonzeroDiagonal(usize),

    #[error("entry ({row},{col}) = {value} exceeds the memory count {count}")]
    EntryExceedsCount {
        row: usize,
        col: usize,
        value: i32,
        count: usize,
    },

    #[error("entry ({row},{col}) = {value} has the wrong parity for memory count {count}")]
    EntryParity {
        row: usize,
        col: usize,
        value: i32,
        count: usize,
    },

    #[error("proximity ({row},{col}) = {value} lies outside (0, {max}]")]
    ProximityOutOfRange {
        row: usize,
        col: usize,
        value: f64,
        max: f64,
    },

    #[error("proximity row 0 must increase strictly with the column index (column {col})")]
    ChainRowNotSorted { col: usize },

    #[error("not a permutation of 0..{n}: {detail}")]
    InvalidPermutation { n: usize, detail: String },

    #[error("neuron index {index} out of range for a network of {n} neurons")]
    NeuronOutOfRange { index: usize, n: usize },

    #[error("fragment is incomplete: {assigned} of {n} components assigned")]
    FragmentIncomplete { assigned: usize, n: usize },

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error("capacity curves are empty")]
    EmptyCurves,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
