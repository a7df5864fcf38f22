use thiserror::Error;

/// Errors shared by all subsystems.
#[derive(Debug, Error)]
pub enum Error {
    #[error("deformation parameter mismatch: {0} vs {1}")]
    ThetaMismatch(f64, f64),
    #[error("ambient box too small: need {needed}, have {have}")]
    BoxTooSmall { needed: u32, have: u32 },
    #[error("singular metric: Newton inverse residual stalled at {residual:.3e}")]
    SingularMetric { residual: f64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("quadrature failed to reach tolerance {tol:.3e} (estimate {estimate:.3e})")]
    QuadratureFailure { tol: f64, estimate: f64 },
    #[error("series did not converge: {0}")]
    SeriesDivergence(String),
    #[error("function has no Taylor data at the origin: {0}")]
    NotEntire(String),
    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),
    #[error("lattice sum truncation not converged (tail {tail:.3e})")]
    TruncationNotConverged { tail: f64 },
    #[error("matrix element accuracy {err:.3e} above threshold {tol:.3e}")]
    MatrixElement { err: f64, tol: f64 },
    #[error("heat-expansion fit ill-conditioned (cond {cond:.3e})")]
    FitIllConditioned { cond: f64 },
    #[error("unsupported orientation: module slope must be positive, got {0}")]
    UnsupportedOrientation(f64),
    #[error("flow step failed after {halvings} halvings")]
    StepFailure { halvings: u32 },
    #[error("structural error in symbol engine: {0}")]
    Structural(String),
    #[error("invalid geometry: {0}")]
    Geometry(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
