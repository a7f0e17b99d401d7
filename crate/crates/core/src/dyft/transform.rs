use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::plan::TransformPlan;
use crate::error::{Error, Result};
use crate::lfc::DiscreteApproximation;
use crate::specfun::{fractal_kernel, ComplexValue, Direction, FractalOrder, KernelConvention, MLConfig};
use crate::summation::ComplexNeumaierSum;

/// DYFT coefficients `F(k)` of a signal sampled at spacing `dt_origin`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    coeffs: Vec<ComplexValue>,
    order: FractalOrder,
    convention: KernelConvention,
    domega: f64,
    dt_origin: f64,
}

impl Spectrum {
    pub fn new(
        coeffs: Vec<ComplexValue>,
        order: FractalOrder,
        convention: KernelConvention,
        dt_origin: f64,
    ) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("a spectrum needs at least one coefficient".into()));
        }
        if !(dt_origin.is_finite() && dt_origin > 0.0) {
            return Err(Error::InvalidInput(format!(
                "sample spacing must be > 0, got {dt_origin}"
            )));
        }
        if let Some(i) = coeffs.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::InvalidInput(format!("coefficient {i} is not finite")));
        }
        let domega = 2.0 * PI / (coeffs.len() as f64 * dt_origin);
        Ok(Self {
            coeffs,
            order,
            convention,
            domega,
            dt_origin,
        })
    }

    pub fn coeffs(&self) -> &[ComplexValue] {
        &self.coeffs
    }

    pub fn size(&self) -> usize {
        self.coeffs.len()
    }

    pub fn order(&self) -> FractalOrder {
        self.order
    }

    pub fn convention(&self) -> KernelConvention {
        self.convention
    }

    /// Frequency spacing Δω = 2π/(NΔt).
    pub fn domega(&self) -> f64 {
        self.domega
    }

    pub fn dt_origin(&self) -> f64 {
        self.dt_origin
    }

    /// Natural-window period T = NΔt.
    pub fn period(&self) -> f64 {
        self.coeffs.len() as f64 * self.dt_origin
    }
}

fn expect_direction(plan: &TransformPlan, expected: Direction) -> Result<()> {
    if plan.direction() != expected {
        return Err(Error::DirectionMismatch {
            expected,
            found: plan.direction(),
        });
    }
    Ok(())
}

fn check_finite(values: &[ComplexValue]) -> Result<()> {
    match values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
        Some(i) => Err(Error::InvalidInput(format!("value {i} is not finite"))),
        None => Ok(()),
    }
}

/// Forward N-point DYFT. Each output sums over ascending n.
pub fn forward(signal_values: &[ComplexValue], dt: f64, plan: &TransformPlan) -> Result<Spectrum> {
    expect_direction(plan, Direction::Forward)?;
    let size = plan.size();
    if signal_values.len() != size {
        return Err(Error::LengthMismatch {
            expected: size,
            found: signal_values.len(),
        });
    }
    check_finite(signal_values)?;
    let order = plan.order();
    let prefactor = 1.0 / (order.gamma_one_plus() * (size as f64).powf(order.value()));
    let coeffs = (0..size)
        .map(|k| {
            let mut acc = ComplexNeumaierSum::new();
            for (n, f) in signal_values.iter().enumerate() {
                acc += f * plan.entry(n, k);
            }
            acc.value() * prefactor
        })
        .collect();
    Spectrum::new(coeffs, order, plan.convention(), dt)
}

/// Inverse N-point DYFT. Each output sums over ascending k.
pub fn inverse(spectrum: &Spectrum, plan: &TransformPlan) -> Result<Vec<ComplexValue>> {
    expect_direction(plan, Direction::Inverse)?;
    if spectrum.size() != plan.size() {
        return Err(Error::LengthMismatch {
            expected: plan.size(),
            found: spectrum.size(),
        });
    }
    if spectrum.order() != plan.order() {
        return Err(Error::OrderMismatch {
            expected: plan.order().value(),
            found: spectrum.order().value(),
        });
    }
    if spectrum.convention() != plan.convention() {
        return Err(Error::ConventionMismatch {
            expected: plan.convention(),
            found: spectrum.convention(),
        });
    }
    Ok((0..plan.size())
        .map(|n| {
            let mut acc = ComplexNeumaierSum::new();
            for (k, coeff) in spectrum.coeffs().iter().enumerate() {
                acc += coeff * plan.entry(n, k);
            }
            acc.value()
        })
        .collect())
}

/// Continuous-spectrum approximation from the discrete approximation:
/// `(1/Γ(1+α)) Σ_k f̃_k·E_α((-i)^α (ω·kΔt)^α)`.
///
/// At ω = nΔω this equals `T^α·F(n)` for the forward DYFT `F`.
pub fn approximate_spectrum(
    approx: &DiscreteApproximation,
    omega: f64,
    convention: KernelConvention,
    cfg: &MLConfig,
) -> Result<ComplexValue> {
    if !(omega.is_finite() && omega >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "frequency must be finite and >= 0, got {omega}"
        )));
    }
    let order = approx.order();
    let last = (approx.len() - 1) as f64;
    let max_radius = (omega * last * approx.dt()).powf(order.value());
    if max_radius > cfg.magnitude_guard() {
        return Err(Error::GuardExceeded {
            magnitude: max_radius,
            guard: cfg.magnitude_guard(),
        });
    }
    let mut acc = ComplexNeumaierSum::new();
    for (k, coeff) in approx.coeffs().iter().enumerate() {
        let theta = omega * k as f64 * approx.dt();
        acc += coeff * fractal_kernel(order, Direction::Forward, theta, convention, cfg)?;
    }
    Ok(acc.value() / order.gamma_one_plus())
}

/// Pointwise deviation between a reconstruction and its source.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub max_abs: f64,
    pub rms: f64,
}

impl ResidualReport {
    pub fn between(reconstructed: &[ComplexValue], original: &[ComplexValue]) -> Self {
        let mut max_abs: f64 = 0.0;
        let mut sq = 0.0;
        for (r, o) in reconstructed.iter().zip(original) {
            let d = (r - o).norm();
            max_abs = max_abs.max(d);
            sq += d * d;
        }
        let rms = if original.is_empty() {
            0.0
        } else {
            (sq / original.len() as f64).sqrt()
        };
        Self { max_abs, rms }
    }
}

/// `inverse(forward(signal))` and its residual against the input. No
/// exactness is implied for α < 1.
pub fn roundtrip(
    signal_values: &[ComplexValue],
    dt: f64,
    forward_plan: &TransformPlan,
    inverse_plan: &TransformPlan,
) -> Result<(Vec<ComplexValue>, ResidualReport)> {
    if forward_plan.size() != inverse_plan.size() {
        return Err(Error::LengthMismatch {
            expected: forward_plan.size(),
            found: inverse_plan.size(),
        });
    }
    if forward_plan.order() != inverse_plan.order() {
        return Err(Error::OrderMismatch {
            expected: forward_plan.order().value(),
            found: inverse_plan.order().value(),
        });
    }
    if forward_plan.convention() != inverse_plan.convention() {
        return Err(Error::ConventionMismatch {
            expected: forward_plan.convention(),
            found: inverse_plan.convention(),
        });
    }
    let spectrum = forward(signal_values, dt, forward_plan)?;
    let reconstructed = inverse(&spectrum, inverse_plan)?;
    let report = ResidualReport::between(&reconstructed, signal_values);
    Ok((reconstructed, report))
}
