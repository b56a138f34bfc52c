use thiserror::Error;

/// Errors produced by the exact and numerical evaluators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid quantum state: {0}")]
    InvalidState(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot add pi-graded values of grade {left} and {right}")]
    GradeMismatch { left: i32, right: i32 },

    #[error("pi grade {0} outside the supported range -1..=1")]
    GradeOverflow(i32),

    #[error("sqrt(pi) parity mismatch: {0}")]
    SqrtPiParity(String),

    #[error("moment p^{power} diverges for l = {l}: endpoint exponents {upper} (x -> 1) and {lower} (x -> -1) must exceed -1")]
    DivergentMoment { power: f64, l: u32, upper: f64, lower: f64 },

    #[error("quadrature did not converge: estimate {estimate} with error {error} (requested relative {requested})")]
    NonConvergence { estimate: f64, error: f64, requested: f64 },

    #[error("internal consistency fault: {0}")]
    InternalFault(String),

    #[error("cannot parse exact value {0:?}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
