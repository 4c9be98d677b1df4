use thiserror::Error;

/// Errors reported by the solver stack.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter {
        name: &'static str,
        reason: &'static str,
    },

    #[error("unknown profile kind `{0}`")]
    UnknownProfile(alloc::string::String),

    #[error("no physical permittivity root at detuning {detuning} and density {density}")]
    NoPhysicalRoot { detuning: f64, density: f64 },

    #[error("grid mismatch: {0}")]
    GridMismatch(&'static str),

    #[error("matrix of dimension {dim} is singular")]
    Singular { dim: usize },

    #[error("operator at detuning {detuning} with cutoff {cutoff} is ill-conditioned (estimate {condition:e})")]
    IllConditioned {
        detuning: f64,
        cutoff: usize,
        condition: f64,
    },

    #[error("residual {residual:e} exceeds tolerance at detuning {detuning} with cutoff {cutoff}")]
    Residual {
        detuning: f64,
        cutoff: usize,
        residual: f64,
    },

    #[error("no convergence at detuning {detuning} after reaching cutoff {cutoff} (last change {change:e})")]
    NotConverged {
        detuning: f64,
        cutoff: usize,
        change: f64,
        last: crate::ScatterCoefficients,
    },
}
