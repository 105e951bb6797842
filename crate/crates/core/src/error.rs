use thiserror::Error;

/// Errors produced by solvers and supporting machinery.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("non-finite value {value} in cell {cell} at t = {time}")]
    NonFinite { time: f64, cell: usize, value: f64 },

    #[error("coordinate {x} outside domain [{left}, {right}]")]
    OutOfDomain { x: f64, left: f64, right: f64 },

    #[error("solver did not converge within {iterations} iterations (residual {residual:.3e})")]
    SolverDiverged { iterations: usize, residual: f64 },

    #[error("operator built for {expected} cells, got state of length {actual}")]
    SizeMismatch { expected: usize, actual: usize },

    #[error("scheme requires a degree-{0} nonlocal weight table")]
    MissingWeightTable(usize),

    #[error("quadrature did not reach tolerance {tolerance:.1e} (error estimate {estimate:.3e})")]
    QuadratureFailure { tolerance: f64, estimate: f64 },

    #[error("insufficient decay at window edge: |u| = {edge:.3e}, max |u| = {max:.3e}")]
    InsufficientDecay { edge: f64, max: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
