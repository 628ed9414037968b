use thiserror::Error;

/// Errors raised by the geometric, analytic and numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum HeartError {
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("invalid direction: {0}")]
    InvalidDirection(String),
    #[error("shadow coordinate {0} lies outside the shadow")]
    OutsideShadow(f64),
    #[error("tolerance {tol} is below the geometric floor {floor}")]
    ToleranceTooSmall { tol: f64, floor: f64 },
    #[error("dimension {0} is not supported")]
    UnsupportedDimension(usize),
    #[error("center is too close to the boundary (distance {0})")]
    CenterTooCloseToBoundary(f64),
    #[error("grid spacing {h} exceeds inradius/8 = {limit}")]
    GridTooCoarse { h: f64, limit: f64 },
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("frequency is not orthogonal to the direction (dot = {0:e})")]
    FrequencyNotOrthogonal(f64),
    #[error("chord length {0:e} is too small for a stable ratio")]
    DenominatorTooSmall(f64),
    #[error("support function is not positive on the boundary (min {0:e})")]
    QuadratureUnstable(f64),
    #[error("witness is invalid: {0}")]
    WitnessInvalid(String),
    #[error("heart is empty; centroid membership violated")]
    EmptyHeart,
}

pub type Result<T> = std::result::Result<T, HeartError>;
