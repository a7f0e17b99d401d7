use thiserror::Error;

use crate::specfun::{Direction, KernelConvention};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("fractal order must lie in (0, 1], got {0}")]
    InvalidOrder(f64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{function} is undefined at {value}")]
    Domain { function: &'static str, value: f64 },

    #[error("{0} overflows double precision")]
    Overflow(String),

    #[error("|z| = {magnitude} exceeds the magnitude guard {guard}; shrink N or raise the guard")]
    GuardExceeded { magnitude: f64, guard: f64 },

    #[error(
        "kernel entry (n = {n}, k = {k}) has argument magnitude {magnitude} above the guard {guard}; \
         N is too large for this order at the configured precision"
    )]
    PlanGuardExceeded {
        n: usize,
        k: usize,
        magnitude: f64,
        guard: f64,
    },

    #[error("N = {size} is outside the desk-scale envelope for alpha = {alpha} (max N = {max_size})")]
    EnvelopeExceeded { size: usize, alpha: f64, max_size: usize },

    #[error("series needs more than {bits} bits of working precision")]
    PrecisionExhausted { bits: u32 },

    #[error("series did not terminate within {terms} terms")]
    NonConvergence { terms: usize },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("plan direction is {found:?}, expected {expected:?}")]
    DirectionMismatch { expected: Direction, found: Direction },

    #[error("fractal order mismatch: {expected} vs {found}")]
    OrderMismatch { expected: f64, found: f64 },

    #[error("kernel convention mismatch: {expected:?} vs {found:?}")]
    ConventionMismatch {
        expected: KernelConvention,
        found: KernelConvention,
    },

    #[error("operation requires a periodic discrete approximation")]
    ExtensionMode,
}

impl Error {
    /// True for failures caused by precision or size limits rather than
    /// malformed input.
    pub fn is_limit(&self) -> bool {
        matches!(
            self,
            Error::GuardExceeded { .. }
                | Error::PlanGuardExceeded { .. }
                | Error::EnvelopeExceeded { .. }
                | Error::Overflow(_)
                | Error::NonConvergence { .. }
                | Error::PrecisionExhausted { .. }
        )
    }
}
