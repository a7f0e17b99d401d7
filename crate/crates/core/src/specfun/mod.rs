//! Special functions: the real gamma function, the one-parameter
//! Mittag-Leffler function on complex arguments, and the oscillatory
//! kernel `E_α((±i)^α θ^α)` used by the discrete Yang-Fourier transform.

mod gamma;
pub(crate) mod kernel;
mod mittag_leffler;
mod oracle;
pub(crate) mod precision;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use gamma::{gamma_pos, ln_gamma_pos, GAMMA_MAX_ARG};
pub use kernel::{fractal_kernel, kernel_unit};
pub use mittag_leffler::mittag_leffler;
pub use oracle::{mittag_leffler_oracle, mittag_leffler_oracle_decimal};

/// Complex sample, kernel value or spectrum coefficient.
pub type ComplexValue = Complex64;

/// The fractal order α, restricted to (0, 1].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct FractalOrder(f64);

impl FractalOrder {
    /// α = 1, where every kernel reduces to the classical exponential.
    pub const CLASSICAL: FractalOrder = FractalOrder(1.0);

    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && alpha > 0.0 && alpha <= 1.0 {
            Ok(Self(alpha))
        } else {
            Err(Error::InvalidOrder(alpha))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn is_classical(self) -> bool {
        self.0 == 1.0
    }

    /// Γ(1 + α), the prefactor of every local fractional integral.
    pub fn gamma_one_plus(self) -> f64 {
        // 1 + α ∈ (1, 2] is always inside the domain of gamma_pos.
        gamma_pos(1.0 + self.0).expect("1 + alpha lies in (1, 2]")
    }
}

impl TryFrom<f64> for FractalOrder {
    type Error = Error;

    fn try_from(alpha: f64) -> Result<Self> {
        Self::new(alpha)
    }
}

impl From<FractalOrder> for f64 {
    fn from(order: FractalOrder) -> f64 {
        order.0
    }
}

impl fmt::Display for FractalOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Default largest |z| admitted by a point evaluation of `mittag_leffler`.
pub const DEFAULT_MAGNITUDE_GUARD: f64 = 30.0;

/// Guard large enough for every kernel argument inside the desk-scale
/// transform envelope: (2π·63²/64)^α ≤ 389.6 for α ≤ 1.
pub const TRANSFORM_MAGNITUDE_GUARD: f64 = 390.0;

/// Series controls for the Mittag-Leffler evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MLConfig {
    rel_tol: f64,
    max_terms: usize,
    magnitude_guard: f64,
}

impl MLConfig {
    pub fn new(rel_tol: f64, max_terms: usize, magnitude_guard: f64) -> Result<Self> {
        if !(rel_tol.is_finite() && rel_tol > 0.0) {
            return Err(Error::InvalidConfig(format!("rel_tol must be > 0, got {rel_tol}")));
        }
        if max_terms < 1 {
            return Err(Error::InvalidConfig("max_terms must be >= 1".into()));
        }
        if !(magnitude_guard.is_finite() && magnitude_guard > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "magnitude_guard must be > 0, got {magnitude_guard}"
            )));
        }
        Ok(Self {
            rel_tol,
            max_terms,
            magnitude_guard,
        })
    }

    /// Defaults for building transform plans: same series controls, guard
    /// raised to [`TRANSFORM_MAGNITUDE_GUARD`].
    pub fn transform() -> Self {
        Self {
            magnitude_guard: TRANSFORM_MAGNITUDE_GUARD,
            ..Self::default()
        }
    }

    pub fn with_magnitude_guard(self, magnitude_guard: f64) -> Result<Self> {
        Self::new(self.rel_tol, self.max_terms, magnitude_guard)
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    pub fn magnitude_guard(&self) -> f64 {
        self.magnitude_guard
    }
}

impl Default for MLConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-15,
            max_terms: 4000,
            magnitude_guard: DEFAULT_MAGNITUDE_GUARD,
        }
    }
}

/// How the fractal imaginary unit `i^α` is read in the forward kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelConvention {
    /// Forward argument `(-i)^α θ^α = e^{-iπα/2} θ^α`; the forward and
    /// inverse kernels are complex conjugates.
    #[default]
    ConjugatePair,
    /// Forward argument `-(i^α) θ^α = -e^{+iπα/2} θ^α`.
    NegatedPrincipal,
}

impl KernelConvention {
    pub const ALL: [KernelConvention; 2] = [Self::ConjugatePair, Self::NegatedPrincipal];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::ConjugatePair => "conjugate-pair",
            Self::NegatedPrincipal => "negated-principal",
        }
    }
}

impl fmt::Display for KernelConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for KernelConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "conjugate-pair" => Ok(Self::ConjugatePair),
            "negated-principal" => Ok(Self::NegatedPrincipal),
            other => Err(Error::InvalidInput(format!(
                "unknown kernel convention {other:?} (expected conjugate-pair or negated-principal)"
            ))),
        }
    }
}

/// Transform direction; selects the sign of the kernel argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Inverse,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractal_order_bounds() {
        assert!(FractalOrder::new(1.0).is_ok());
        assert!(FractalOrder::new(1e-9).is_ok());
        for bad in [0.0, -0.5, 1.0 + 1e-12, f64::NAN, f64::INFINITY] {
            assert!(matches!(FractalOrder::new(bad), Err(Error::InvalidOrder(_))));
        }
    }

    #[test]
    fn fractal_order_serde_validates() {
        let ok: FractalOrder = serde_json::from_str("0.5").unwrap();
        assert_eq!(ok.value(), 0.5);
        assert!(serde_json::from_str::<FractalOrder>("1.5").is_err());
    }

    #[test]
    fn config_validation() {
        assert!(MLConfig::new(0.0, 10, 1.0).is_err());
        assert!(MLConfig::new(1e-12, 0, 1.0).is_err());
        assert!(MLConfig::new(1e-12, 10, -1.0).is_err());
        let cfg = MLConfig::default();
        assert_eq!(cfg.rel_tol(), 1e-15);
        assert_eq!(cfg.max_terms(), 4000);
        assert_eq!(cfg.magnitude_guard(), 30.0);
    }

    #[test]
    fn convention_names_round_trip() {
        for c in KernelConvention::ALL {
            assert_eq!(c.as_str().parse::<KernelConvention>().unwrap(), c);
            assert_eq!(serde_json::to_string(&c).unwrap(), format!("\"{}\"", c.as_str()));
        }
        assert_eq!(KernelConvention::default(), KernelConvention::ConjugatePair);
        assert!("principal".parse::<KernelConvention>().is_err());
    }
}
