//! Error type shared by every solver component.

use thiserror::Error;

/// Errors produced by the solver library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A quadrature rule was requested outside the supported range.
    #[error("quadrature point count {0} outside supported range 1..=16")]
    QuadratureRange(usize),
    /// A basis evaluation point lies outside the cell closure.
    #[error("evaluation point {point:?} outside cell")]
    PointOutsideCell {
        /// Offending point.
        point: Vec<f64>,
    },
    /// A physical state violated positivity (density, depth or pressure).
    #[error("inadmissible state {state:?}{context}")]
    Inadmissible {
        /// Conservative state that failed the check.
        state: Vec<f64>,
        /// Human-readable location (cell/face) of the failure, may be empty.
        context: String,
    },
    /// A Roe average produced a nonpositive squared sound speed.
    #[error("inadmissible Roe average (a^2 = {0})")]
    InadmissibleAverage(f64),
    /// The requested operation is not defined for the model.
    #[error("operation `{op}` is not supported for model {model}")]
    Unsupported {
        /// Operation name.
        op: &'static str,
        /// Model name.
        model: &'static str,
    },
    /// A global Lax–Friedrichs bound was smaller than a local wave speed.
    #[error("Lax-Friedrichs bound M = {m} below max |lambda| = {lambda}")]
    SplittingBound {
        /// Configured bound.
        m: f64,
        /// Offending eigenvalue magnitude.
        lambda: f64,
    },
    /// Boundary configuration is invalid (e.g. reflective wall for a scalar law).
    #[error("invalid boundary configuration: {0}")]
    Boundary(String),
    /// Flux scheme and model are incompatible.
    #[error("flux scheme {scheme} incompatible with model {model}")]
    Incompatible {
        /// Scheme name.
        scheme: &'static str,
        /// Model name.
        model: &'static str,
    },
    /// A NaN or infinite value appeared during time stepping.
    #[error("solution diverged at t = {time} (stage {stage})")]
    Divergence {
        /// Time at the beginning of the failing step.
        time: f64,
        /// One-based Runge–Kutta stage index.
        stage: usize,
    },
    /// A dense linear system could not be solved.
    #[error("singular linear system: {0}")]
    Singular(&'static str),
    /// Exact-solution evaluation failed.
    #[error("exact solution unavailable: {0}")]
    ExactSolution(String),
    /// Invalid run configuration.
    #[error("configuration error: {0}")]
    Config(String),
    /// An output file could not be written.
    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

/// Convenience result alias.
pub type Result<T> = std::result::Result<T, Error>;
