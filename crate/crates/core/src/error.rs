use thiserror::Error;

/// Errors raised by evaluation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument {re}{im:+}i lies within the pole guard of a pole")]
    PoleProximity { re: f64, im: f64 },

    #[error("integral does not converge: endpoint exponent {0} <= -1")]
    NonConvergent(f64),

    #[error("tolerance not met after {iterations} iterations (estimated error {estimate:e})")]
    ToleranceNotMet { iterations: usize, estimate: f64 },

    #[error("insufficient samples: need {needed}, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("not a Dirichlet character: {0}")]
    NotACharacter(String),

    #[error("exceptional set disagrees with gcd rule at n = {0}")]
    PrimitiveMismatch(i64),

    #[error("division by a near-zero denominator at z = {re}{im:+}i")]
    DivisionNearZero { re: f64, im: f64 },

    #[error("y = {y} is within the node guard of interpolation node {node}")]
    NearNode { y: f64, node: f64 },

    #[error("the series path needs a rational shift v = a/b")]
    IrrationalV,

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("evaluation paths disagree: {0}")]
    PathMismatch(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
