use thiserror::Error;

/// Errors raised while building, evaluating or verifying curves.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter t = {0} lies outside [0, 1]")]
    Domain(f64),

    #[error("malformed curve: {0}")]
    Malformed(String),

    #[error("invalid structure: {0}")]
    Structure(String),

    #[error("pieces {left} and {right} do not join: endpoint gap {gap:e} exceeds tolerance {tolerance:e}")]
    Continuity {
        left: usize,
        right: usize,
        gap: f64,
        tolerance: f64,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("index {index} out of range 1..={max}")]
    OutOfRange { index: usize, max: usize },

    #[error("{required} breakpoints required, only {available} available")]
    InsufficientBreakpoints { required: usize, available: usize },

    #[error("polynomial parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
