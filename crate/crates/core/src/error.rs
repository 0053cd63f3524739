use thiserror::Error;

use crate::tensor::{Parity, Variance};

#[derive(Debug, Error)]
pub enum Error {
    #[error("variance mismatch: expected {expected:?}, found {found:?}")]
    VarianceMismatch { expected: Variance, found: Variance },

    #[error("parity mismatch: {0:?} vs {1:?}")]
    ParityMismatch(Parity, Parity),

    #[error("symmetry precondition violated: {what} (defect {defect:e})")]
    Symmetry { what: &'static str, defect: f64 },

    #[error("invalid metric: {0}")]
    InvalidMetric(String),

    #[error("singular or ill-conditioned basis transform: {0}")]
    InvalidTransform(String),

    #[error("invalid Young diagram {0:?}: rows must be a weakly decreasing partition of 3")]
    InvalidPartition(Vec<usize>),

    #[error("unknown isotopic family `{0}` (expected plain, tilde or hat)")]
    UnknownFamily(String),

    #[error("unknown operator `{0}`")]
    UnknownOperator(String),

    #[error("rank-deficient reconstruction system `{system}`: residual {residual:e}")]
    RankDeficient { system: String, residual: f64 },

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by an input that parses fine but breaks a
    /// variance or symmetry precondition of the requested decomposition.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::VarianceMismatch { .. } | Error::ParityMismatch(..) | Error::Symmetry { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
