use thiserror::Error;

use crate::graph::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown {kind} `{label}`")]
    UnknownLabel { kind: &'static str, label: String },

    #[error("duplicate {kind} `{label}`")]
    DuplicateLabel { kind: &'static str, label: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(ValidationReport),

    #[error("vertex `{vertex}` has {degree} incident half-edges, expected 4")]
    NotFourRegular { vertex: String, degree: usize },

    #[error("matrix is not square ({rows} x {cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("entry at ({row}, {col}) is not an integer")]
    NonIntegral { row: String, col: String },

    #[error("invalid walk: {0}")]
    InvalidWalk(String),

    #[error("invalid transversal: {0}")]
    InvalidTransversal(String),

    #[error("invalid transitional orientation: {0}")]
    InvalidOrientation(String),

    #[error("edge set is not based: {0}")]
    NotBased(String),

    #[error("not a cycle basis: {0}")]
    NotCycleBasis(String),

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("{what}: search space {required} exceeds cap {cap}")]
    SizeCap {
        what: &'static str,
        required: u128,
        cap: u128,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn is_size_cap(&self) -> bool {
        matches!(self, Error::SizeCap { .. })
    }

    pub(crate) fn unknown(kind: &'static str, label: impl Into<String>) -> Self {
        Error::UnknownLabel {
            kind,
            label: label.into(),
        }
    }
}
