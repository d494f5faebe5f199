use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("bad descriptor: {0}")]
    BadDescriptor(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("mixed-ring operands: {0} vs {1}")]
    MixedRing(String, String),

    #[error("slot {slot} out of range for n = {n}")]
    SlotOutOfRange { slot: String, n: usize },
    #[error("vertex {0} appears more than once")]
    DuplicateVertex(String),
    #[error("vertex {0} is joined to itself")]
    SelfEdge(String),
    #[error("edges ({}, {}) and ({}, {}) cross", .first.0, .first.1, .second.0, .second.1)]
    NonPlanar { first: (String, String), second: (String, String) },
    #[error("vertex {0} is neither on an edge nor listed as isolated")]
    UncoveredVertex(String),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid link state: {0}")]
    BadLinkState(String),
    #[error("cannot splice {i} and {k}: {reason} at vertex {blocking}")]
    InvalidSplice { i: usize, k: usize, blocking: usize, reason: &'static str },

    #[error("the isolated set S must be nonempty")]
    EmptySubset,
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("the cup module needs even n, got {0}")]
    OddCupModule(usize),
    #[error("{0} is not closed under the left action")]
    NotSubmodule(String),

    #[error("link state {0} has no defect")]
    NoDefect(String),
    #[error("no diagram satisfies the idempotent conditions for {0}")]
    NoIdempotentFound(String),
    #[error("{label}: generator check failed (in ideal: {in_ideal}, idempotent: {idempotent}, right unit: {unit})")]
    GeneratorFailed { label: String, in_ideal: bool, idempotent: bool, unit: bool },
    #[error("cover certificate failed for {0}")]
    CertificateFailed(String),

    #[error("boundary composite starting at degree {0} is nonzero")]
    D2NotZero(i64),
    #[error("term of dimension {dim} exceeds the size guard of {limit} stored entries")]
    SizeGuardExceeded { dim: usize, limit: usize },
    #[error("homology needs a specialized ring, got {0}")]
    NotExact(String),
    #[error("relations do not form a subcomplex in degree {0}")]
    NotSubcomplex(i64),

    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
