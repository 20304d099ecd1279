use thiserror::Error;

/// Every failure the library can report. Each variant is a distinct, named condition.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("rank deficient: {0}")]
    Rank(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate system: {0}")]
    Degenerate(String),
    #[error("degree drop: transformed polynomial has lower degree")]
    DegreeDrop,
    #[error("not a root: g(expr(alpha)) != 0 in K_f")]
    NotARoot,
    #[error("content mismatch: |f0| = {f0}, |g0| = {g0}")]
    ContentMismatch { f0: String, g0: String },
    #[error("lattices belong to different algebras")]
    AlgebraMismatch,
    #[error("change of basis is not unimodular: {0}")]
    NotUnimodular(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("search limit {limit} exhausted: {what}")]
    SearchLimit { limit: u64, what: String },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
