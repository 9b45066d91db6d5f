use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// Field or dyadic requested at the emitter position.
    #[error("singular evaluation at x = 0")]
    Singularity,

    #[error("quadrature did not converge: estimated error {estimate:.3e} exceeds tolerance {tolerance:.3e}")]
    Accuracy { estimate: f64, tolerance: f64 },

    #[error("integrator failure: {0}")]
    IntegratorFailure(String),

    #[error("decay fit failed: {0}")]
    FitFailure(String),

    #[error("ratio undefined: reference field vanishes at the evaluation point")]
    UndefinedRatio,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
