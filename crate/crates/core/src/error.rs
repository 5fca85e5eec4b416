use thiserror::Error;

/// Errors produced by the minimizer and its parsers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("width mismatch: {left} vs {right}")]
    WidthMismatch { left: usize, right: usize },

    #[error("operation requires a nonzero bit vector")]
    ZeroVector,

    #[error("invalid character {ch:?} at position {pos} in {text:?}")]
    InvalidChar { text: String, pos: usize, ch: char },

    #[error("empty bit string")]
    EmptyText,

    #[error("minterm {minterm} lies inside off-cube {off_cube}")]
    InconsistentFunction { minterm: String, off_cube: String },

    #[error("minterm {minterm} gets conflicting values on output {output}")]
    ConflictingOutput { minterm: String, output: usize },

    #[error("offset is empty")]
    EmptyOffset,

    #[error("onset is empty")]
    EmptyOnset,

    #[error("{what}: {n} exceeds the limit of {limit}")]
    TooLarge {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("line {line}: {message}")]
    Pla { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
