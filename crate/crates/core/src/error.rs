use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderLimitExceeded { order: usize, cap: usize },

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("bad parameters: {0}")]
    BadParams(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search budget exceeded: more than {cap} subgroups")]
    SearchBudgetExceeded { cap: usize },

    #[error("enumeration budget exceeded: more than {cap} nodes")]
    BudgetExceeded { cap: usize },
}

impl Error {
    /// Parse error on a single-line input, `position` counted from zero.
    pub fn parse_at(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line: 1,
            column: position + 1,
            message: message.into(),
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::SearchBudgetExceeded { .. } | Error::BudgetExceeded { .. }
        )
    }
}
