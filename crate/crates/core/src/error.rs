use thiserror::Error;

/// Errors raised by samplers, density evaluators and estimators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of a numerical primitive.
    #[error("domain error: {0}")]
    Domain(String),

    /// Ensemble parameters violate a model constraint.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// A regime schedule could not be realized at one of its points.
    #[error("schedule point {index}: {reason}")]
    Schedule { index: usize, reason: String },

    /// Two independent computations of the same quantity disagree.
    #[error("internal consistency failure: {0}")]
    Consistency(String),

    /// A Monte Carlo estimator could not produce a trustworthy value.
    #[error("estimator failure: {0}")]
    Estimator(String),
}

impl Error {
    /// True for errors caused by caller-supplied configuration rather than by
    /// the computation itself.
    pub fn is_validation(&self) -> bool {
        matches!(self, Error::Domain(_) | Error::InvalidParams(_) | Error::Schedule { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
