use thiserror::Error;

use crate::catalog::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid metric: {0}")]
    InvalidMetric(String),

    #[error("space `{0}` carries no Killing-ratio data (ideals or single_a required)")]
    MissingKillingData(String),

    #[error("catalog parse error: {0}")]
    Parse(String),

    #[error("catalog entry `{entry}` is invalid: {}", join(violations))]
    Validation {
        entry: String,
        violations: Vec<Violation>,
    },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("finite-difference stencil left the metric domain at ({x1}, {x2}, {x4})")]
    StencilOutOfDomain { x1: f64, x2: f64, x4: f64 },

    #[error("Newton iteration did not converge after {iterations} steps (gradient norm {grad_norm:e})")]
    NoConvergence { iterations: usize, grad_norm: f64 },

    #[error("Hessian is numerically singular (det = {det:e})")]
    SingularHessian { det: f64 },

    #[error("Newton iterate left the metric domain after {halvings} step halvings")]
    LeftDomain { halvings: usize },
}

fn join(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
