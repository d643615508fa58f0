//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violated its documented domain. Always a caller error.
    #[error("invalid {name}: {reason}")]
    Domain { name: &'static str, reason: String },

    /// The queried point is too close to the boundary curve for a winding
    /// number to be meaningful.
    #[error("point lies on the boundary curve (distance {distance:.3e})")]
    PointOnCurve { distance: f64 },

    /// Adaptive curve refinement would exceed its sample budget.
    #[error("curve refinement budget exceeded: {needed} samples requested, budget {budget}")]
    RefinementBudget { needed: usize, budget: usize },

    /// A root or crossing the algorithm depends on could not be bracketed.
    #[error("no root found: {0}")]
    NoRoot(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(name: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            name,
            reason: reason.into(),
        }
    }

    /// True for errors caused by invalid input rather than a failed computation.
    pub fn is_validation(&self) -> bool {
        matches!(self, Error::Domain { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
