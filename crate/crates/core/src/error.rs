use thiserror::Error;

use crate::poset::NodeId;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed group oracle: {0}")]
    MalformedOracle(String),
    #[error("generating set failed validation: {0}")]
    InvalidGeneratingSet(String),
    #[error("target element is not reachable from the identity")]
    TargetUnreachable,
    #[error("size cap exceeded: {what} (limit {limit})")]
    SizeCap { what: String, limit: usize },
    #[error("maximal chain budget exceeded (limit {limit})")]
    ChainBudgetExceeded { limit: usize },
    #[error("search budget exceeded (limit {limit})")]
    SearchBudgetExceeded { limit: u64 },
    #[error("linear extension budget exceeded (limit {limit})")]
    ExtensionBudgetExceeded { limit: usize },
    #[error("no edge from node {node} with label {label}")]
    NoSuchEdge { node: NodeId, label: String },
    #[error("nodes {x} and {y} are not comparable")]
    NotComparable { x: NodeId, y: NodeId },
    #[error("operation requires a labeled interval")]
    Unlabeled,
    #[error("unknown label: {0}")]
    UnknownLabel(String),
    #[error("order omits occurring label {0}")]
    IncompleteOrder(String),
    #[error("node {0} is not an atom")]
    NotAnAtom(NodeId),
    #[error("order is not compatible")]
    NotCompatible,
    #[error("order does not give an EL-labeling")]
    NotElLabeling,
    #[error("sequence is not a permutation of the maximal chains")]
    NotAPermutationOfChains,
    #[error("expected rank {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("position {0} out of range")]
    BadPosition(usize),
    #[error("unknown fixture: {0}")]
    UnknownFixture(String),
    #[error("invalid interval: {0}")]
    InvalidInterval(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("two independent computations disagree: {0}")]
    OracleDisagreement(String),
    #[error("proved implication violated: {0}")]
    TheoremViolation(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors raised by exhausting a configured resource budget.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::ChainBudgetExceeded { .. }
                | Error::SearchBudgetExceeded { .. }
                | Error::ExtensionBudgetExceeded { .. }
                | Error::SizeCap { .. }
        )
    }

    /// True for internal consistency failures (a bug, never bad input).
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::OracleDisagreement(_) | Error::TheoremViolation(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
