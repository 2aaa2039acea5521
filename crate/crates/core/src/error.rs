use serde::Serialize;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind", content = "detail", rename_all = "snake_case")]
pub enum Error {
    #[error("malformed presentation: {0}")]
    MalformedPresentation(String),

    #[error("theta table for colors ({i},{j}) is not a bijection")]
    InvalidPermutation { i: usize, j: usize },

    #[error(
        "cubic condition fails for colors ({i},{j},{l}) at {witness:?}: {lhs:?} vs {rhs:?}"
    )]
    CubicViolation {
        i: usize,
        j: usize,
        l: usize,
        witness: [usize; 3],
        lhs: [usize; 3],
        rhs: [usize; 3],
    },

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("words belong to presentations with different rank")]
    MixedPresentations,

    #[error("requested prefix degree {requested:?} exceeds word degree {available:?}")]
    NotAPrefix {
        requested: Vec<usize>,
        available: Vec<usize>,
    },

    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    BudgetExceeded {
        what: String,
        needed: u128,
        limit: u128,
    },

    #[error("lattice inconsistency: {reason} for {vector:?}")]
    LatticeInconsistency { vector: Vec<i64>, reason: String },

    #[error("color words {i} and {j} do not commute")]
    NotCommuting { i: usize, j: usize },

    #[error("invalid construction: {0}")]
    InvalidConstruction(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn budget(what: impl Into<String>, needed: u128, limit: u128) -> Self {
        Error::BudgetExceeded {
            what: what.into(),
            needed,
            limit,
        }
    }

    /// True for the errors that reject data on mathematical grounds.
    pub fn is_rejection(&self) -> bool {
        matches!(
            self,
            Error::InvalidPermutation { .. }
                | Error::CubicViolation { .. }
                | Error::LatticeInconsistency { .. }
                | Error::NotCommuting { .. }
                | Error::InvalidConstruction(_)
        )
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}
