use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration needs at least 2 points, got {0}")]
    TooFewPoints(usize),

    #[error("point {index} has norm {norm} farther than 1e-6 from 1")]
    NotOnSphere { index: usize, norm: f64 },

    #[error("point {index} has {got} coordinates, expected {expected} for S^{dim}")]
    BadPointLength {
        index: usize,
        got: usize,
        expected: usize,
        dim: usize,
    },

    #[error("points {i} and {j} coincide (pairwise distance below 1e-9)")]
    CoincidentPoints { i: usize, j: usize },

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("point-count mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("tolerance {0} outside [0, 0.01]")]
    TolOutOfRange(f64),

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("origin is not strictly interior to the convex hull (margin {margin:.3e})")]
    OriginNotInterior { margin: f64 },

    #[error("degenerate hull input: {0}")]
    DegenerateHull(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("no sign change on bracket [{0}, {1}]")]
    NoSignChange(f64, f64),

    #[error("all {0} restarts diverged (non-finite energy)")]
    AllRestartsFailed(usize),

    #[error("unknown name: {0}")]
    UnknownName(String),

    #[error("eigen-solver failed: {0}")]
    Eigen(String),
}
