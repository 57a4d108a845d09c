use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A point or parameter lies outside the set where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("inadmissible domain #{index}: {reason}")]
    InadmissibleDomain { index: usize, reason: String },

    #[error("quadrature missed tolerance {tol:e}: achieved error estimate {achieved:e}")]
    Quadrature { achieved: f64, tol: f64 },

    #[error("quadrature did not converge: {0}")]
    NonConvergence(String),

    #[error("walk-on-spheres: {overflow} of {walks} walks exceeded {max_steps} steps")]
    WalkOverflow {
        overflow: u64,
        walks: u64,
        max_steps: u64,
    },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures of a numerical method (as opposed to bad input).
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::Quadrature { .. } | Error::NonConvergence(_) | Error::WalkOverflow { .. }
        )
    }
}
