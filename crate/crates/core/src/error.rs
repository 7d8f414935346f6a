use std::fmt;

use thiserror::Error;

use crate::element::ElementSet;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by matroid, decomposition, Tutte and MSO operations.
#[derive(Debug, Error)]
pub enum Error {
    /// The input violates a mathematical precondition (unknown element, overlapping labels, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// A named precondition of a construction does not hold.
    #[error("precondition `{name}` violated: {detail}")]
    Precondition { name: &'static str, detail: String },
    /// A brute-force or compilation budget was exceeded.
    #[error("resource bound exceeded: {0}")]
    Resource(String),
    /// The proper amalgam does not exist; `f` and `g` violate submodularity of zeta.
    #[error("no proper amalgam: zeta is not submodular on F = {f:?}, G = {g:?}")]
    NoProperAmalgam { f: ElementSet, g: ElementSet },
    /// A decomposition failed validation.
    #[error("invalid decomposition: {0}")]
    Invalid(crate::decomposition::ValidationReport),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("kind mismatch: {0}")]
    Kind(String),
    #[error("format error: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl fmt::Display) -> Self {
        Error::Domain(msg.to_string())
    }

    pub(crate) fn resource(msg: impl fmt::Display) -> Self {
        Error::Resource(msg.to_string())
    }

    pub(crate) fn precondition(name: &'static str, detail: impl fmt::Display) -> Self {
        Error::Precondition { name, detail: detail.to_string() }
    }

    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Resource(_) => 2,
            Error::Syntax { .. } | Error::Kind(_) | Error::Format(_) | Error::Io(_) | Error::Json(_) => 3,
            _ => 1,
        }
    }
}
