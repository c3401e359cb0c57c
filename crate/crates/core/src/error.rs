use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid degeneracy word {0:?}: indices must be strictly decreasing")]
    InvalidWord(Vec<usize>),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator id `{0}`")]
    DuplicateGenerator(String),
    #[error("generator `{id}`: {reason}")]
    MalformedGenerator { id: String, reason: String },
    #[error("simplicial identity d_{i} d_{j} = d_{} d_{i} fails on `{id}`", j - 1)]
    SimplicialIdentity { id: String, i: usize, j: usize },
    #[error("map is not simplicial at `{id}`: {reason}")]
    NotSimplicial { id: String, reason: String },
    #[error("map source/target mismatch: {0}")]
    Mismatch(String),
    #[error("expected a monomorphism: {0}")]
    NotMono(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("simplex not found in the materialized set (dimension {dim}); raise the dimension bound")]
    MissingCell { dim: usize },
    #[error("dimension bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("square does not commute: {0}")]
    NonCommuting(String),
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("missing {kind} at stage {stage}: {detail}")]
    MissingLimit { kind: &'static str, stage: String, detail: String },
    #[error("arity {arity} at stage {stage} is not below the kappa bound {kappa}")]
    KappaExceeded { stage: String, arity: usize, kappa: usize },
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("schema error at {path}: {reason}")]
    Schema { path: String, reason: String },
    #[error("composite is not unique: {0}")]
    NonUnique(String),
}

pub type Result<T> = std::result::Result<T, Error>;
