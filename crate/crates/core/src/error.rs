use thiserror::Error;

/// Errors raised by the analytic routines, the Fock-space oracle and the
/// experiment drivers.
#[derive(Debug, Error)]
pub enum Error {
    /// Inputs outside the region where the requested formula is defined,
    /// e.g. `epsilon >= omega` where no Bogoliubov transform exists.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative routine (bisection, Lanczos, truncation doubling) did not
    /// reach its tolerance.
    #[error("convergence error: {0}")]
    Convergence(String),

    /// The truncated Fock space would exceed the configured basis budget.
    #[error("capacity error: basis dimension {required} exceeds budget {budget}")]
    Capacity { required: u128, budget: usize },

    /// Finite-difference states could not be phase-aligned with the reference.
    #[error("gauge error: overlap {overlap:.3e} with the reference state is below 0.5")]
    Gauge { overlap: f64 },

    #[error("invalid input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Parse(_) => 2,
            Error::Capacity { .. } => 3,
            Error::Convergence(_) | Error::Gauge { .. } | Error::Io(_) | Error::Json(_) => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
