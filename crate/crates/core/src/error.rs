use thiserror::Error;

/// Errors surfaced by the numerical core.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("elements belong to different Grassmann algebras ({0} vs {1} generators)")]
    AlgebraMismatch(usize, usize),
    #[error("operation requires an even element, got odd or mixed parity")]
    OddParity,
    #[error("element has zero body and is not invertible")]
    SingularElement,
    #[error("boson-block determinant has zero body; superdeterminant undefined")]
    SingularBosonBlock,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("covariance matrix is not positive definite (beta too large for W)")]
    CovarianceNotPositive,
    #[error("LAPACK routine {routine} failed with info={info}")]
    Lapack { routine: &'static str, info: i32 },
    #[error("secular eigensolver failed: {0}")]
    SecularFailure(String),
    #[error("quadrature error estimate {got:.3e} exceeds requested tolerance {want:.3e}")]
    QuadratureTolerance { got: f64, want: f64 },
    #[error("transfer grid too coarse: kernel row-sum defect {0:.3e}")]
    GridTooCoarse(f64),
    #[error("normalization constant drifts across probe points: {0}")]
    CalibrationDrift(String),
    #[error("resolvent solve failed to converge near the spectrum")]
    ResolventFailure,
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CoreError>;
