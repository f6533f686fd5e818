use thiserror::Error;

use crate::invariants::Violation;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-range arguments.
    #[error("input error: {0}")]
    Input(String),

    /// Structurally well-formed input that breaks a game or invariant rule.
    #[error("validation error: {0}")]
    Validation(String),

    #[error("invalid invariants: {}", format_violations(.0))]
    Invariants(Vec<Violation>),

    #[error("game is not complete: players {0} and {1} are incomparable")]
    NotComplete(u32, u32),

    /// A formula or bijection was evaluated outside its stated domain.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
