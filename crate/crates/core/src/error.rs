use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An input had the wrong number of bits, players, actions, ...
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// Malformed text input. `line` is 1-based; 0 means "no particular line".
    #[error("format error at line {line}: {msg}")]
    Format { line: usize, msg: String },

    /// A gate refers to itself or to a later gate.
    #[error("acyclicity violation at node {node}: operand {operand} is not an earlier node")]
    Cyclic { node: usize, operand: usize },

    /// An instance broke one of its structural promises.
    #[error("invalid instance: {0}")]
    Invalid(String),

    /// A brute-force or construction size cap was exceeded.
    #[error("size cap exceeded: {0}")]
    CapExceeded(String),

    /// A loop guard tripped; the instance is malformed.
    #[error("step budget exhausted after {steps} steps: {msg}")]
    Budget { steps: u64, msg: String },

    /// A tie in the pivoting ratio test with perturbation disabled.
    #[error("degenerate pivot: {0}")]
    Degenerate(String),

    /// A point could not be mapped back to source geometry.
    #[error("decode error: {0}")]
    Decode(String),

    /// Something that valid input cannot produce.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn format_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Format {
        line,
        msg: msg.into(),
    }
}
