use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("matrix is not Hermitian (relative defect {defect:.3e})")]
    NotHermitian { defect: f64 },

    #[error("spectrum falls below the noise floor {floor:e} at k = {k}")]
    NoiseFloor { k: usize, floor: f64 },

    #[error("superlevel set touches the box boundary; try a box of half-width {suggested}")]
    BoxTooSmall { suggested: f64 },

    #[error("eigenvalue count not stable after {refinements} refinements: {counts:?}")]
    CountUnstable { refinements: usize, counts: Vec<usize> },

    #[error("precondition violated at x = {x}: {reason}")]
    Precondition { x: f64, reason: String },

    #[error("symbol is not smooth: {0}")]
    NonSmooth(String),

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
