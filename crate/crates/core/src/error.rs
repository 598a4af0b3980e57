use thiserror::Error;

/// Errors produced by the library. Each variant maps onto one CLI exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A precondition of a theorem-backed computation does not hold for the input.
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("budget exceeded for {what}: need {required}, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        required: u128,
        budget: u128,
    },
}

impl Error {
    pub(crate) fn parse(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Parse {
            what,
            detail: detail.into(),
        }
    }

    pub(crate) fn invalid(detail: impl Into<String>) -> Self {
        Error::InvalidArgument(detail.into())
    }

    pub(crate) fn hypothesis(detail: impl Into<String>) -> Self {
        Error::HypothesisViolated(detail.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
