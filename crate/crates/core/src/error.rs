use thiserror::Error;

use crate::complex::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("presentation: {0}")]
    Presentation(String),

    #[error("invalid morphism: {}", join_violations(.0))]
    Invalid(Vec<Violation>),

    #[error("unknown {sort} `{id}`")]
    UnknownCell { sort: &'static str, id: String },

    #[error("cannot identify a cell with itself")]
    SameCell,

    #[error("label mismatch: {0}")]
    LabelMismatch(String),

    #[error("edge {0} is not a free face")]
    NotFree(usize),

    #[error("complex has no free faces")]
    NoFreeFaces,

    #[error("complex has no 2-cells")]
    NoFaces,

    #[error("complex is not connected")]
    Disconnected,

    #[error("target presentations differ")]
    TargetMismatch,

    #[error("target is not the presentation complex of <a,b | b, baBAA>")]
    NotOverKp,

    #[error("budget exhausted: {0}")]
    Budget(String),

    #[error("argument: {0}")]
    Argument(String),

    #[error("format: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

impl Error {
    /// Budget exhaustion and malformed input both map to exit code 2 in the CLI;
    /// this distinguishes them for reporting.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget(_))
    }
}
