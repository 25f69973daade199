//! Crate-wide error type. Construction and validation of rings, maps, and
//! family setups return `Result`; in-ring arithmetic on already-validated
//! classes panics on misuse instead (see `chow`).

use thiserror::Error;

/// Everything that can go wrong while building or evaluating a setup.
///
/// `Syntax` and `UnknownVariable` are input-text errors (the CLI maps them to
/// exit code 2); the remaining variants are domain errors (exit code 1).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {at}: {what}")]
    Syntax { at: usize, what: String },

    #[error("unknown variable `{name}` at byte {at}")]
    UnknownVariable { name: String, at: usize },

    #[error("invalid ring presentation: {0}")]
    Presentation(String),

    #[error("rewrite rules are not confluent: {0}")]
    NotConfluent(String),

    #[error("classes live in different rings ({left} vs {right})")]
    RingMismatch { left: String, right: String },

    #[error("foreign variable `{0}` does not exist in the target ring")]
    ForeignVariable(String),

    #[error("ring map does not preserve degrees: {0}")]
    DegreeMismatch(String),

    #[error("ring map does not respect relations: {0}")]
    RelationViolation(String),

    #[error("pushforward data is invalid: {0}")]
    Pushforward(String),

    #[error("isomorphism data is not invertible: {0}")]
    NotInvertible(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("expected an integer, found {0}")]
    NotAnInteger(String),

    #[error("inconsistent setup: {0}")]
    Inconsistent(String),

    #[error("unknown builtin example `{0}` (expected `f1f1` or `p2f6`)")]
    UnknownExample(String),

    #[error("input file error: {0}")]
    InputFile(String),
}

impl Error {
    /// `true` for errors caused by malformed input text rather than by
    /// inconsistent mathematical data.
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. } | Error::UnknownVariable { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
