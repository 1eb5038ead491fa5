use thiserror::Error;

/// Errors raised by group computations.
///
/// Variants fall into four families that the CLI maps onto exit codes:
/// usage/precondition problems, resource caps, structural misuse, and
/// falsified mathematical assertions (which valid inputs never produce).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("element of group #{found} used in group #{expected}")]
    ForeignElement { expected: u64, found: u64 },

    #[error("closure too large: reached {partial} elements (cap {cap})")]
    ClosureTooLarge { cap: usize, partial: usize },

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("not normal: {element} conjugated by {by} leaves the subgroup")]
    NotNormal { element: String, by: String },

    #[error("no internal root by this method: element order {order} is even")]
    NoInternalRoot { order: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("falsified: {0}")]
    Falsified(String),

    #[error("Levin violation: {0}")]
    LevinViolation(String),
}

impl GroupError {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        GroupError::Parse {
            position,
            message: message.into(),
        }
    }

    pub(crate) fn precondition(message: impl Into<String>) -> Self {
        GroupError::Precondition(message.into())
    }

    pub(crate) fn falsified(message: impl Into<String>) -> Self {
        GroupError::Falsified(message.into())
    }

    /// Short machine-readable category name.
    pub fn kind(&self) -> &'static str {
        match self {
            GroupError::ForeignElement { .. } => "structural",
            GroupError::ClosureTooLarge { .. } | GroupError::ResourceCap(_) => "resource-cap",
            GroupError::NotNormal { .. } | GroupError::Precondition(_) => "precondition",
            GroupError::NoInternalRoot { .. } => "no-internal-root",
            GroupError::Parse { .. } => "parse",
            GroupError::Falsified(_) => "falsified",
            GroupError::LevinViolation(_) => "levin-violation",
        }
    }
}

pub type Result<T, E = GroupError> = std::result::Result<T, E>;
