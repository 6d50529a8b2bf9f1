use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("m must be at least 1, got {0}")]
    InvalidM(i64),
    #[error("delta must satisfy delta > -m = {bound}, got {delta}")]
    DeltaOutOfDomain { delta: f64, bound: f64 },
    #[error("graph needs at least 2 vertices, got n = {0}")]
    TooFewVertices(u64),
    #[error("graph size n = {0} does not fit 32-bit vertex labels")]
    TooManyVertices(u64),
    #[error("vertex label {label} out of range 1..={n}")]
    VertexOutOfRange { label: u64, n: u32 },
    #[error("invalid edge triple ({newer}, {slot}, {target}): {reason}")]
    InvalidTriple {
        newer: u64,
        slot: u64,
        target: u64,
        reason: &'static str,
    },
    #[error("enumeration would produce {outcomes} outcomes, above the limit of {limit}")]
    EnumerationTooLarge { outcomes: u128, limit: u128 },
    #[error("conditioning event has probability zero")]
    ZeroProbabilityCondition,
    #[error("events are not disjoint")]
    EventsNotDisjoint,
    #[error("inclusion-exclusion supports at most {limit} edges, got {got}")]
    EventTooLarge { got: usize, limit: usize },
    #[error("parameters outside regime: {0}")]
    OutOfRegime(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed graph file (line {line}): {reason}")]
    Format { line: usize, reason: String },
    #[error("invalid experiment plan: {0}")]
    Plan(String),
    #[error("cell (n = {n}, seed index = {seed_index}) failed: {source}")]
    Cell {
        n: u32,
        seed_index: u32,
        #[source]
        source: Box<Error>,
    },
    #[error("cannot resume from {path}: {reason}")]
    Resume { path: PathBuf, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
