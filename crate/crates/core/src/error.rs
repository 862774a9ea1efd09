use std::path::PathBuf;

use thiserror::Error;

/// Failures raised by data construction, evolution and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("area radius r = {r:e} is non-positive at R = {radius} (T = {time})")]
    NonPositiveRadius { time: f64, radius: f64, r: f64 },

    #[error(
        "constraint solver did not converge: estimated error {estimate:e} exceeds {tolerance:e}"
    )]
    NonConvergence { estimate: f64, tolerance: f64 },

    #[error("non-finite value detected at step {step} (T = {time})")]
    NanDetected { step: usize, time: f64 },

    #[error("quadrature failed to reach tolerance {tolerance:e} (estimate {estimate:e})")]
    QuadratureFailure { estimate: f64, tolerance: f64 },

    #[error("invalid configuration: {}", .0.join("; "))]
    InvalidConfig(Vec<String>),

    #[error("config parse error at line {line}: {message}")]
    ConfigParse { line: usize, message: String },

    #[error("bad snapshot {path:?}: {message}")]
    Snapshot { path: PathBuf, message: String },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures of the numerics themselves (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonPositiveRadius { .. }
                | Error::NonConvergence { .. }
                | Error::NanDetected { .. }
                | Error::QuadratureFailure { .. }
        )
    }

    /// Simulation time at which a numerical failure happened, when known.
    pub fn failure_time(&self) -> Option<f64> {
        match self {
            Error::NonPositiveRadius { time, .. } | Error::NanDetected { time, .. } => Some(*time),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
