use thiserror::Error;

/// Errors produced by the structure kernels and experiment modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} is invalid for a domain of size {domain}")]
    InvalidVertex { vertex: usize, domain: usize },

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("{what}: size {got} exceeds the limit of {limit}")]
    SizeLimit {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("self-loop query at vertex {0}")]
    SelfLoop(u64),

    #[error("no extension witness within bound {bound} at step {step}")]
    WitnessNotFound { bound: u64, step: usize },

    #[error("not a C-relation: {reason}")]
    NotACRelation {
        reason: String,
        violations: Vec<[usize; 3]>,
    },

    #[error("domain mismatch: {left} vs {right}")]
    DomainMismatch { left: usize, right: usize },

    #[error("degenerate direction: {0}")]
    DegenerateDirection(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn size(what: &'static str, limit: usize, got: usize) -> Self {
        Error::SizeLimit { what, limit, got }
    }

    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
