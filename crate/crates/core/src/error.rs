use thiserror::Error;

use crate::code::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid Pauli character {0:?} (expected one of I, X, Y, Z)")]
    InvalidPauliChar(char),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("generator {generator}, block {block}: expected {expected} qubits, found {found}")]
    BlockWidth {
        generator: usize,
        block: usize,
        expected: usize,
        found: usize,
    },

    #[error("expected {expected} generators (n - k), found {found}")]
    GeneratorCount { expected: usize, found: usize },

    #[error("invalid code parameters: {0}")]
    InvalidParameters(String),

    #[error("cannot apply delay {delay}: block {block} is not the identity")]
    InvalidDelay { delay: isize, block: usize },

    #[error("degenerate generator set: generator {0} is the identity")]
    DegenerateGenerator(usize),

    #[error("not a valid convolutional code ({} commutation violations)", .0.len())]
    InvalidCode(Vec<Violation>),

    #[error("window of {window} frames is too small, need at least {required}")]
    WindowTooSmall { window: usize, required: usize },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("encoder rows {first} and {second} have inconsistent commutation relations")]
    InconsistentRows { first: usize, second: usize },

    #[error("partial encoder input rows are linearly dependent: rows {0:?}")]
    DependentRows(Vec<usize>),

    #[error("synthesis failure: {0}")]
    SynthesisFailure(String),

    #[error("memory size {m} exceeds the analysis bound of {bound} qubits")]
    BoundExceeded { m: usize, bound: usize },
}
