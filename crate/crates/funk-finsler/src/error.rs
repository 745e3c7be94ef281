use thiserror::Error;

/// Errors raised by chart validation and pointwise operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FunkError {
    #[error("invalid curvature sign {0}: must be -1, 0, or +1")]
    InvalidEps(i32),
    #[error("invalid radius {r} for eps = {eps}: require r > 0 (and r <= 1 when eps != 0)")]
    InvalidRadius { r: f64, eps: i32 },
    #[error("point outside disc: |x| = {norm} not strictly inside radius {r}")]
    PointOutsideDisc { norm: f64, r: f64 },
    #[error("degenerate direction: |xi| = 0")]
    DegenerateDirection,
    #[error("negative arc length {0}")]
    NegativeArc(f64),
    #[error("fundamental tensor not positive definite (min eigenvalue {min_eigenvalue})")]
    ConvexityViolation { min_eigenvalue: f64 },
    #[error("wind too strong: ||W||_h^2 = {0} >= 1")]
    WindTooStrong(f64),
    #[error("geodesic exited the disc at step {step} of {total}")]
    BoundaryExit { step: usize, total: usize },
    #[error("degenerate flag: g-Gram determinant {0} <= 0")]
    DegenerateFlag(f64),
    #[error("segment endpoints coincide")]
    CoincidentPoints,
}

pub type Result<T> = std::result::Result<T, FunkError>;
