use thiserror::Error;

use crate::combinatorics::Partition;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombinatoricsError {
    #[error("parts {0:?} do not form a partition")]
    NotAPartition(Vec<usize>),
    #[error("cannot parse partition from {0:?}")]
    Parse(String),
    #[error("{left} and {right} are not compatible for concatenation")]
    Incompatible { left: Partition, right: Partition },
    #[error("expected {expected} entries, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("tableau is not standard")]
    NotStandard,
    #[error("{i} is not coprime to {m}")]
    NotCoprime { i: usize, m: usize },
    #[error("{inner} is not contained in {outer}")]
    NotContained { outer: Partition, inner: Partition },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharacterError {
    #[error("class functions of degrees {0} and {1} cannot be combined")]
    DegreeMismatch(usize, usize),
    #[error("not a character: multiplicity of {lambda} would be {value}")]
    NotACharacter { lambda: Partition, value: String },
    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("column index {index} out of range for dimension {dim}")]
    OutOfRange { index: usize, dim: usize },
    #[error("the action does not preserve the relation subspace (generator {generator})")]
    NotInvariant { generator: usize },
    #[error("modular computations disagree: {0}")]
    ModularDisagreement(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("bracket has {found} arguments, expected {expected}")]
    Arity { expected: usize, found: usize },
    #[error("word is not multilinear in 1..={0}")]
    NotMultilinear(usize),
    #[error("invalid parameters n = {n}, k = {k}")]
    Parameters { n: usize, k: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("cannot parse tree from {0:?}")]
    Parse(String),
    #[error("invalid tree partition: {0}")]
    InvalidTPartition(String),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
}

/// Top-level error type of the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Combinatorics(#[from] CombinatoricsError),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("module of degree {degree} exceeds the cap {cap}")]
    CapExceeded { degree: usize, cap: usize },
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
