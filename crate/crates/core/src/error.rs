use thiserror::Error;

/// Errors produced by class construction, dimension calculators and the game engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain mismatch: expected {expected} points, found {found}")]
    DomainMismatch { expected: usize, found: usize },

    #[error("point {point} out of range for domain of size {size}")]
    PointOutOfRange { point: usize, size: usize },

    #[error("hypothesis class must be nonempty")]
    EmptyClass,

    #[error("duplicate hypothesis at index {index}")]
    DuplicateHypothesis { index: usize },

    #[error("{op}: domain size {n} exceeds enumeration cap {cap}")]
    EnumerationCap {
        op: &'static str,
        n: usize,
        cap: usize,
    },

    #[error("representation finder requires VC dimension 1, class has VC dimension {found}")]
    NotVcDimensionOne { found: usize },

    #[error("invalid class file: {0}")]
    InvalidClassFile(String),

    #[error("unknown {kind} name: {name}")]
    UnknownName { kind: &'static str, name: String },

    #[error("sample source exhausted at round {round}")]
    SampleSourceExhausted { round: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid transcript: {0}")]
    InvalidTranscript(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
