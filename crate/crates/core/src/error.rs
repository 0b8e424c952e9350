//! Failure modes shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A single parameter is outside its physical or numerical domain.
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// Parameters are individually fine but jointly inconsistent. The message
    /// names the violated bound.
    #[error("invalid configuration: {detail}")]
    Configuration { detail: String },

    /// An approximation was asked to operate outside its stated domain.
    #[error("approximation domain violated: {detail}")]
    ApproximationDomain { detail: String },

    /// Too few samples or trials to produce the requested estimate.
    #[error("insufficient data: {detail}")]
    InsufficientData { detail: String },

    /// The planned run is too small to resolve the target rate.
    #[error("plan too small: {detail}; suggested trials: {suggested_trials}")]
    PlanTooSmall {
        detail: String,
        suggested_trials: u64,
    },
}
