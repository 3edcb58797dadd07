use std::fmt;

/// Failure classes of a run, each with its process exit code.
#[derive(Debug, Clone, PartialEq)]
pub enum RunError {
    /// Bad config or parameters: exit 2.
    Validation(String),
    /// The computation ran but a declared tolerance failed: exit 3.
    Tolerance(String),
    /// Could not write artifacts: exit 1.
    Io(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Validation(_) => 2,
            RunError::Tolerance(_) => 3,
            RunError::Io(_) => 1,
        }
    }

    pub fn status(&self) -> &'static str {
        match self {
            RunError::Validation(_) => "validation_error",
            RunError::Tolerance(_) => "tolerance_failure",
            RunError::Io(_) => "io_error",
        }
    }

    pub fn reason(&self) -> &str {
        match self {
            RunError::Validation(s) | RunError::Tolerance(s) | RunError::Io(s) => s,
        }
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.status(), self.reason())
    }
}

impl std::error::Error for RunError {}

impl From<supou::Error> for RunError {
    fn from(e: supou::Error) -> Self {
        match e {
            supou::Error::Quadrature { .. } | supou::Error::Overflow(_) => {
                RunError::Tolerance(e.to_string())
            }
            _ => RunError::Validation(e.to_string()),
        }
    }
}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        RunError::Io(e.to_string())
    }
}

impl From<csv::Error> for RunError {
    fn from(e: csv::Error) -> Self {
        RunError::Io(e.to_string())
    }
}
