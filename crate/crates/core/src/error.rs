use thiserror::Error;

use crate::dsl::Diagnostic;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("generator `{0}` is not part of presentation `{1}`")]
    PresentationMismatch(String, String),
    #[error("rewriting diverged after {steps} steps (last digram {digram})")]
    Divergence { steps: usize, digram: String },
    #[error("context mismatch: {0}")]
    Context(String),
    #[error("no image given for generator `{0}`")]
    Unmapped(String),
    #[error("presentation `{0}` has no Hopf data for `{1}`")]
    MissingHopfData(String, String),
    #[error("classical limit undefined: {0}")]
    Limit(String),
    #[error("{} diagnostic(s):\n{}", .0.len(), .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("\n"))]
    Parse(Vec<Diagnostic>),
    #[error("unknown model `{0}`")]
    UnknownModel(String),
    #[error("cap exceeded: {0}")]
    Cap(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}
