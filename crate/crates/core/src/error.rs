use thiserror::Error;

/// Errors raised by precondition checks across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum HardyError {
    #[error("index {index} is outside the domain of {what} (requires {requirement})")]
    Domain {
        what: &'static str,
        index: u64,
        requirement: &'static str,
    },
    #[error("{what} must be strictly positive, got {value} at index {index}")]
    NonPositive {
        what: &'static str,
        index: u64,
        value: f64,
    },
    #[error("increment sequence must be non-negative, got {value} at index {index}")]
    NegativeIncrement { index: u64, value: f64 },
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T, E = HardyError> = std::result::Result<T, E>;
