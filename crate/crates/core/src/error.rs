use alloc::string::String;

/// Failure modes shared by every solver and constructor in the crate.
///
/// Validation failures and budget exhaustion are kept apart so callers can
/// map them to different exit codes.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExhausted(_))
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
