//! Error type shared by every module.

/// Failure modes of kernel/series/quadrature evaluation.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Argument on a branch cut or outside an operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Gamma-type pole hit at a nonpositive integer.
    #[error("pole error: {0}")]
    Pole(String),

    /// A series tail could not be certified within the degree budget.
    #[error("convergence budget exhausted: {0}")]
    ConvergenceBudget(String),

    /// An integrand produced NaN/Inf; the offending node is reported.
    #[error("nonfinite integrand at node {0}")]
    NonfiniteIntegrand(String),

    /// Richardson extrapolation needs at least three samples.
    #[error("insufficient samples: need at least {need}, got {got}")]
    InsufficientSamples { need: usize, got: usize },

    /// Stencil application touched a point outside the array box.
    #[error("lattice point outside array box: {0}")]
    OutOfBox(String),

    /// Torus grid too small for the requested lattice point (aliasing).
    #[error("grid too small (aliasing): {0}")]
    GridTooSmall(String),

    /// A quadrature error estimate stayed above the requested tolerance.
    #[error("accuracy target not met: {0}")]
    Accuracy(String),

    #[error("unknown suite: {0}")]
    UnknownSuite(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
