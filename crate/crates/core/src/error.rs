//! Crate-wide error type.

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A quantity that must be strictly positive was not.
    #[error("{name} must be strictly positive (got {value:e})")]
    NonPositive { name: &'static str, value: f64 },

    /// SI-space evaluation at or below plate contact, where the ideal
    /// parallel-plate pressure diverges.
    #[error("plate separation {x:e} m is at or below contact; the ideal Casimir form is invalid there")]
    Singularity { x: f64 },

    /// Dimensionless evaluation at or below plate contact (1 + u <= 0).
    #[error("plates in contact: 1 + u = {chi:e} <= 0")]
    Contact { chi: f64 },

    /// The static potential has no minimum for this configuration.
    #[error("no stable equilibrium: k = {k:e} N/m does not exceed the pull-in threshold k_crit = {k_crit:e} N/m")]
    Unstable { k: f64, k_crit: f64 },

    /// Released from rest at the free length, the plate reaches the potential
    /// barrier and falls onto the fixed plate.
    #[error("release from rest at x0 collapses onto the fixed plate (c_hat = {c_hat:e} leaves no turning point)")]
    Collapse { c_hat: f64 },

    /// Not enough samples or cycles for the requested operation.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// Variance-normalized statistics are undefined for constant data.
    #[error("data series is constant; variance-normalized statistics are undefined")]
    ZeroVariance,

    /// An input value violates a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Malformed text input (config file or CSV), with 1-based line number.
    #[error("{source_name}:{line}: {msg}")]
    Parse {
        source_name: String,
        line: usize,
        msg: String,
    },

    /// A bracketed root solve could not run on the given interval.
    #[error("root finding failed: {0}")]
    RootFind(String),
}
