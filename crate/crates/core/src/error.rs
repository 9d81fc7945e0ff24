//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A physical parameter or function argument is outside its domain.
    #[error("domain error in {op}: {msg}")]
    Domain { op: &'static str, msg: String },

    /// Classical density evaluated exactly at a turning point, where it diverges.
    #[error("classical density is singular at the turning point |x| = {turning_point}")]
    SingularAtTurningPoint { turning_point: f64 },

    /// Floating-point overflow in a polynomial recurrence.
    #[error("overflow in {op} for n = {n}, argument = {arg}")]
    Overflow { op: &'static str, n: u32, arg: f64 },

    /// A quadrature or series acceleration failed to reach its tolerance.
    #[error("{op} did not converge: achieved error {achieved:.3e}, required {required:.3e}")]
    NoConvergence {
        op: &'static str,
        achieved: f64,
        required: f64,
    },

    /// Two profiles were expected to share a grid but do not.
    #[error("grid mismatch: {msg}")]
    GridMismatch { msg: String },

    /// Coarse-graining window does not cover at least one grid spacing.
    #[error("coarse-grain window {window} is narrower than the grid spacing {spacing}")]
    WindowTooNarrow { window: f64, spacing: f64 },

    /// Operation requested outside the region where the expansion is validated.
    #[error("{op} is only validated for {constraint}; got {value}")]
    OutsideValidatedDomain {
        op: &'static str,
        constraint: &'static str,
        value: f64,
    },

    /// Correction orders beyond k = 1 have no implemented closed form.
    #[error("correction series is implemented for k <= 1; requested k_max = {k_max}")]
    CorrectionOrderUnsupported { k_max: usize },

    /// Invalid run configuration (bad grid, tolerances, ...).
    #[error("invalid configuration: {msg}")]
    Config { msg: String },
}

impl Error {
    pub(crate) fn domain(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Domain {
            op,
            msg: msg.into(),
        }
    }
}
