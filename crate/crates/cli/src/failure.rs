use std::fmt;

use ewm_core::Error;

/// What went wrong, sorted by exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad input: exit 1.
    Invalid(String),
    /// The numerics broke down or a check did not hold: exit 2.
    Numerical { message: String, time: Option<f64> },
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::Numerical { .. } => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Invalid(m) => f.write_str(m),
            Failure::Numerical {
                message,
                time: Some(t),
            } => write!(f, "{message} (failed at T = {t})"),
            Failure::Numerical {
                message,
                time: None,
            } => f.write_str(message),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical {
                time: e.failure_time(),
                message: e.to_string(),
            }
        } else {
            Failure::Invalid(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}
