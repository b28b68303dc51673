use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("matrix is not symmetric (max |H - H^T| = {max_asymmetry:e})")]
    NotSymmetric { max_asymmetry: f64 },

    #[error("eigensolver did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("approximation {approximation} requires {requirement}")]
    ApproximationMismatch {
        approximation: &'static str,
        requirement: &'static str,
    },

    #[error("grid is not uniform (step {step} differs from {expected})")]
    NonUniformGrid { step: f64, expected: f64 },

    #[error("grid is not strictly increasing at position {position}")]
    NonIncreasingGrid { position: usize },

    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("phase-space point outside the domain: {0}")]
    DomainViolation(String),

    #[error("range [{lo}, {hi}] does not bracket the bifurcation")]
    NoBracket { lo: f64, hi: f64 },

    #[error("no saddle fixed point; saddles appear above lambda' = {critical:.6}")]
    NoSaddle { critical: f64 },

    #[error("failure at coupling {coupling}: {source}")]
    AtCoupling {
        coupling: f64,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
