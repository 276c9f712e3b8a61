// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by the symbolic and oracle layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The input violates an operation's precondition.
    #[error("{value}: {reason}")]
    Domain { value: String, reason: String },

    /// A backward (or forward) trace landed on the 1 -> 4 -> 2 -> 1 cycle.
    #[error("value 1 lies on the trivial cycle 1 -> 4 -> 2 -> 1")]
    TrivialCycle,

    #[error("iteration budget of {0} steps exhausted")]
    BudgetExceeded(u64),

    #[error("malformed prefix {prefix:?}: {reason}")]
    Parse { prefix: String, reason: String },

    /// Two independent derivations disagreed. Never silently corrected.
    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("unknown check {0:?}")]
    UnknownCheck(String),
}

impl Error {
    pub(crate) fn domain(value: impl ToString, reason: impl Into<String>) -> Self {
        Error::Domain {
            value: value.to_string(),
            reason: reason.into(),
        }
    }

    /// True for errors that signal a broken derivation rather than bad input.
    pub fn is_consistency(&self) -> bool {
        matches!(self, Error::Consistency(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
