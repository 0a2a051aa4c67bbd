use thiserror::Error;

/// Errors produced by model construction, solvers and the scenario layer.
#[derive(Debug, Error)]
pub enum Error {
    /// A physical or control parameter violates its domain.
    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    /// Kron reduction hit a pivot too small to eliminate the node safely.
    #[error("kron reduction failed: |Y[{node},{node}]| = {pivot:.3e} below tolerance relative to largest entry")]
    SingularPivot { node: usize, pivot: f64 },

    /// The Newton equilibrium solve did not converge, typically because the
    /// dispatch exceeds what the network can transfer.
    #[error("operating point infeasible: residual {residual:.3e} pu after {iterations} iterations")]
    Infeasible { iterations: usize, residual: f64 },

    /// Eigenvalue/eigenvector extraction failed its residual contract.
    #[error("eigen solver failed: {0}")]
    Eigen(String),

    /// A named input/output channel does not exist on the model.
    #[error("unknown channel '{name}'; available: {available}")]
    UnknownChannel { name: String, available: String },

    /// State-space assembly produced inconsistent dimensions.
    #[error("model assembly failed: {0}")]
    Assembly(String),

    /// Scenario file could not be parsed (syntax or unknown keys).
    #[error("scenario parse error: {0}")]
    Parse(String),

    /// Scenario parsed but one or more values violate the schema. All
    /// violations are collected, not just the first.
    #[error("scenario validation failed:\n{}", .0.join("\n"))]
    Validation(Vec<String>),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
