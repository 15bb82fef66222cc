use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("matrix is singular (condition estimate {condition:.3e})")]
    SingularMatrix { condition: f64 },

    #[error("no numerical kernel: smallest singular value {smallest:.3e} above threshold {threshold:.3e}")]
    NoKernel { smallest: f64, threshold: f64 },

    #[error("kernel has dimension {dimension} (expected 1)")]
    DegenerateKernel { dimension: usize },

    #[error("quadrature did not reach tolerance {tolerance:.1e} within {panels} panels")]
    ToleranceNotMet { tolerance: f64, panels: usize },

    #[error("dressing is degenerate: omega21 = rabi = 0 gives a zero generalized Rabi frequency")]
    DegenerateDressing,

    #[error("closed-form dressed basis deviates from the eigensolver by {deviation:.3e}")]
    DressingMismatch { deviation: f64 },

    #[error("photon cutoff {n_max} exceeds the supported maximum {max}")]
    DimensionTooLarge { n_max: usize, max: usize },

    #[error("steady state is not positive: minimum eigenvalue {min_eigenvalue:.3e}")]
    NonPositive { min_eigenvalue: f64 },

    #[error("rate-equation denominator vanishes ({denominator:.3e})")]
    SingularRateMatrix { denominator: f64 },

    #[error("resolvent is singular at omega = {omega}")]
    ResolventSingular { omega: f64 },

    #[error("stationary components do not cancel (residual {residual:.3e})")]
    StationaryMismatch { residual: f64 },
}
