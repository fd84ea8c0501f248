use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("dimension {dimension} exceeds the configured limit {limit}")]
    DimensionLimitExceeded { dimension: usize, limit: usize },
    #[error("graph has {size} vertices, above the configured limit {limit}")]
    SizeLimitExceeded { size: usize, limit: usize },
    #[error("element {0} lies outside the (truncated) universe")]
    OutsideUniverse(u32),
    #[error("ground sets of the parts overlap at {0}")]
    OverlappingParts(u32),
    #[error("relation is not a partial order: {0}")]
    NotAPoset(String),
    #[error("limit ordinal {0} has no fundamental sequence")]
    LadderMissing(String),
    #[error("family is not hereditary or does not cover its universe: {0}")]
    NotHereditary(String),
    #[error("equivalence violation: {0}")]
    EquivalenceViolation(String),
    #[error("host injection exhausted at guest index {0}")]
    HostExhausted(usize),
    #[error("injection values are not pairwise distinct: {0}")]
    NotInjective(String),
    #[error("truncation exceeded: index {index} beyond {truncation}")]
    TruncationExceeded { index: usize, truncation: usize },
    #[error("invalid emulation: {0}")]
    InvalidEmulation(String),
    #[error("unknown label {0}")]
    UnknownLabel(u32),
    #[error("emulation search space exceeds the limit: {0}")]
    SearchSpaceExceeded(String),
    #[error("point is not on the unit sphere (norm = {0})")]
    NotOnSphere(String),
    #[error("not an induced odd hole of length >= 5: {0}")]
    NotAnOddHole(String),
    #[error("precision exhausted after {bits} bits")]
    PrecisionExhausted { bits: u32 },
    #[error("vector lies outside the unit ball: {0}")]
    OutsideBall(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}
