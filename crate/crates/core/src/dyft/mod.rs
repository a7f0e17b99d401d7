//! N-point discrete Yang-Fourier transform.
//!
//! Forward: `F(k) = 1/(Γ(1+α)·N^α) · Σ_n f(n)·E_α((-i)^α (2π·nk/N)^α)`.
//! Inverse: `f(n) = Σ_k F(k)·E_α(i^α (2π·nk/N)^α)`, with no prefactor.
//!
//! At α = 1 this is the DFT with the 1/N factor on the forward side. For
//! α < 1 the kernel has no orthogonality, so inverse∘forward is not the
//! identity; [`roundtrip`] measures the gap instead of assuming it away.

mod plan;
mod transform;

pub use crate::specfun::Direction;
pub use plan::{make_plan, make_plan_within, Envelope, TransformPlan};
pub use transform::{approximate_spectrum, forward, inverse, roundtrip, ResidualReport, Spectrum};
