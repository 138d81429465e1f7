use thiserror::Error;

/// Errors raised by the library. Every variant is a domain error: the
/// caller asked for something ill-formed or outside a supported range.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity {arity} is outside the supported range 1..={cap}")]
    ArityOutOfRange { arity: u32, cap: u32 },

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: u32, found: u32 },

    #[error("expected {expected} argument functions, found {found}")]
    WrongArgumentCount { expected: usize, found: usize },

    #[error("index {index} out of range for arity {arity}")]
    IndexOutOfRange { index: u32, arity: u32 },

    #[error("unknown function symbol `{0}`")]
    UnknownSymbol(String),

    #[error("unknown clone name `{0}`")]
    UnknownClone(String),

    #[error("invalid rank parameter {0}: must be at least 2")]
    InvalidRank(u32),

    #[error("cannot parse function literal `{0}`")]
    BadLiteral(String),

    #[error("{what} is not enumerable at arity {arity}")]
    NotEnumerable { what: String, arity: u32 },

    #[error("cap {cap} is too small for a generator of arity {arity}")]
    CapTooSmall { cap: u32, arity: u32 },

    #[error("cap {cap} exceeds the supported limit {limit} for {what}")]
    CapTooLarge { cap: u32, limit: u32, what: String },

    #[error("generator set must be nonempty")]
    EmptyGenerators,

    #[error("class caps differ: {left} vs {right}")]
    CapMismatch { left: u32, right: u32 },

    #[error("composition would need about {estimate} evaluations, above the limit {limit}")]
    WorkLimit { estimate: u128, limit: u128 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
