//! Discrete Yang-Fourier transforms of fractal signals.
//!
//! * [`specfun`]: gamma, Mittag-Leffler and the oscillatory transform kernel.
//! * [`lfc`]: local fractional quadrature and the sampled-signal model.
//! * [`dyft`]: kernel plans and the forward/inverse N-point transforms.
//! * [`analysis`]: property checks, residual sweeps and JSON reports.

pub mod analysis;
pub mod dyft;
pub mod error;
pub mod lfc;
pub mod rng;
pub mod specfun;
pub mod summation;

pub use dyft::{
    approximate_spectrum, forward, inverse, make_plan, roundtrip, Envelope, ResidualReport, Spectrum, TransformPlan,
};
pub use error::{Error, Result};
pub use lfc::{
    build_discrete_approximation, coefficient_at, lfi_quadrature, natural_window, windowed_pairing,
    DiscreteApproximation, Extension, NaturalWindow, Partition, SampledSignal,
};
pub use specfun::{
    fractal_kernel, gamma_pos, mittag_leffler, mittag_leffler_oracle, ComplexValue, Direction, FractalOrder,
    KernelConvention, MLConfig,
};
