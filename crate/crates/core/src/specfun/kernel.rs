use num_complex::Complex64;
use rug::Float;

use super::mittag_leffler::{double_pass, mittag_leffler, DoublePass};
use super::precision::{self, round_precision, RayTable, GUARD_BITS};
use super::{ComplexValue, Direction, FractalOrder, KernelConvention, MLConfig};
use crate::error::{Error, Result};

/// Unit complex number `c` such that the kernel argument is `c·θ^α`.
pub fn kernel_unit(order: FractalOrder, direction: Direction, convention: KernelConvention) -> Complex64 {
    // cos(πα/2) and sin(πα/2) via the complementary angle: exact at α = 1.
    let complement = 0.5 * std::f64::consts::PI * (1.0 - order.value());
    let (cos_half, sin_half) = complement.sin_cos();
    match (direction, convention) {
        (Direction::Inverse, _) => Complex64::new(cos_half, sin_half),
        (Direction::Forward, KernelConvention::ConjugatePair) => Complex64::new(cos_half, -sin_half),
        (Direction::Forward, KernelConvention::NegatedPrincipal) => Complex64::new(-cos_half, -sin_half),
    }
}

fn unit_mp(order: FractalOrder, direction: Direction, convention: KernelConvention, prec: u32) -> (Float, Float) {
    let (cos_half, sin_half) = precision::half_pi_alpha_cos_sin(order.value(), prec);
    match (direction, convention) {
        (Direction::Inverse, _) => (cos_half, sin_half),
        (Direction::Forward, KernelConvention::ConjugatePair) => (cos_half, -sin_half),
        (Direction::Forward, KernelConvention::NegatedPrincipal) => (-cos_half, -sin_half),
    }
}

/// Oscillatory kernel `E_α((∓i)^α θ^α)` for a nonnegative phase θ.
///
/// Under [`KernelConvention::ConjugatePair`] the forward kernel is
/// `E_α(e^{-iπα/2}θ^α)` and the inverse `E_α(e^{+iπα/2}θ^α)`; under
/// [`KernelConvention::NegatedPrincipal`] the forward kernel is
/// `E_α(-e^{+iπα/2}θ^α)`. At α = 1 both give `exp(∓iθ)`.
pub fn fractal_kernel(
    order: FractalOrder,
    direction: Direction,
    theta: f64,
    convention: KernelConvention,
    cfg: &MLConfig,
) -> Result<ComplexValue> {
    if !(theta.is_finite() && theta >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "kernel phase must be finite and >= 0, got {theta}"
        )));
    }
    let radius = radius(order, theta);
    if radius > cfg.magnitude_guard() {
        return Err(Error::GuardExceeded {
            magnitude: radius,
            guard: cfg.magnitude_guard(),
        });
    }
    mittag_leffler(order, kernel_unit(order, direction, convention) * radius, cfg)
}

fn radius(order: FractalOrder, theta: f64) -> f64 {
    if order.is_classical() {
        theta
    } else {
        theta.powf(order.value())
    }
}

/// Kernel evaluator for the grid phases θ = 2π·m/n of one transform plan.
///
/// The reciprocal-gamma coefficients along the kernel ray are computed once
/// at a precision sized for the largest radius; every grid entry then costs
/// one pass of real-by-complex products. Entries the table cannot certify
/// fall back to [`mittag_leffler`].
pub(crate) struct GridKernel {
    order: FractalOrder,
    unit: Complex64,
    cfg: MLConfig,
    table: Option<RayTable>,
}

impl GridKernel {
    pub fn new(
        order: FractalOrder,
        direction: Direction,
        convention: KernelConvention,
        cfg: &MLConfig,
        max_radius: f64,
    ) -> Self {
        let unit = kernel_unit(order, direction, convention);
        let table = table_shape(order.value(), max_radius, cfg).map(|(terms, prec)| {
            RayTable::new(order.value(), unit_mp(order, direction, convention, prec), terms, prec)
        });
        Self {
            order,
            unit,
            cfg: *cfg,
            table,
        }
    }

    /// Kernel value at θ = 2π·m/n.
    pub fn eval(&self, m: u64, n: u64) -> Result<Complex64> {
        if m == 0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        let theta = 2.0 * std::f64::consts::PI * (m as f64) / (n as f64);
        let z = self.unit * radius(self.order, theta);
        let precision = match double_pass(self.order.value(), z, &self.cfg)? {
            DoublePass::Accepted(value) => return Ok(value),
            DoublePass::Escalate { precision } => precision,
        };
        if let Some(table) = &self.table {
            let r = precision::ray_radius(m, n, self.order.value(), table.precision());
            if let Some(summed) = table.eval(&r, self.cfg.rel_tol()) {
                let summed = summed?;
                if summed.is_trustworthy() {
                    return Ok(summed.value);
                }
            }
        }
        super::mittag_leffler::extended(self.order.value(), z, &self.cfg, precision)
    }
}

/// Table length and working precision covering radii up to `max_radius`,
/// or `None` when no entry can need multiprecision.
fn table_shape(alpha: f64, max_radius: f64, cfg: &MLConfig) -> Option<(usize, u32)> {
    if max_radius.is_nan() || max_radius <= 0.0 {
        return None;
    }
    let ln_r = max_radius.ln();
    // Stop once terms fall 60 bits below rel_tol (results may be that small).
    let ln_floor = cfg.rel_tol().ln() - 60.0 * std::f64::consts::LN_2;
    let mut ln_total = 0.0_f64;
    let mut prev = 0.0_f64;
    for j in 1..cfg.max_terms() {
        let ln_term = j as f64 * ln_r - super::ln_gamma_pos(1.0 + j as f64 * alpha).ok()?;
        ln_total = ln_total.max(ln_term) + (-(ln_total - ln_term).abs()).exp().ln_1p();
        if ln_term < prev && ln_term < ln_floor {
            let log2_total = ln_total / std::f64::consts::LN_2;
            let prec = round_precision(log2_total + f64::from(GUARD_BITS) + 40.0);
            return Some((j + 1, prec));
        }
        prev = ln_term;
    }
    Some((
        cfg.max_terms(),
        round_precision(f64::from(GUARD_BITS) + ln_total / std::f64::consts::LN_2 + 40.0),
    ))
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;

    fn order(a: f64) -> FractalOrder {
        FractalOrder::new(a).unwrap()
    }

    #[test]
    fn classical_forward_is_exp_minus_i_theta() {
        let cfg = MLConfig::default();
        let v = fractal_kernel(
            order(1.0),
            Direction::Forward,
            PI,
            KernelConvention::ConjugatePair,
            &cfg,
        )
        .unwrap();
        assert!((v - Complex64::new(-1.0, 0.0)).norm() < 1e-14);
        let w = fractal_kernel(
            order(1.0),
            Direction::Forward,
            1.3,
            KernelConvention::NegatedPrincipal,
            &cfg,
        )
        .unwrap();
        assert!((w - Complex64::from_polar(1.0, -1.3)).norm() < 1e-14);
    }

    #[test]
    fn theta_zero_gives_one() {
        let cfg = MLConfig::default();
        for dir in [Direction::Forward, Direction::Inverse] {
            for conv in KernelConvention::ALL {
                let v = fractal_kernel(order(0.7), dir, 0.0, conv, &cfg).unwrap();
                assert_eq!(v, Complex64::new(1.0, 0.0));
            }
        }
    }

    #[test]
    fn units_match_definitions() {
        let a = order(0.6);
        let half = 0.5 * PI * 0.6;
        let fwd = kernel_unit(a, Direction::Forward, KernelConvention::ConjugatePair);
        assert!((fwd - Complex64::from_polar(1.0, -half)).norm() < 1e-15);
        let neg = kernel_unit(a, Direction::Forward, KernelConvention::NegatedPrincipal);
        assert!((neg + Complex64::from_polar(1.0, half)).norm() < 1e-15);
        let inv = kernel_unit(a, Direction::Inverse, KernelConvention::NegatedPrincipal);
        assert!((inv - Complex64::from_polar(1.0, half)).norm() < 1e-15);
        assert_eq!(
            kernel_unit(order(1.0), Direction::Forward, KernelConvention::ConjugatePair).re,
            0.0
        );
    }

    #[test]
    fn rejects_bad_phase_and_guard() {
        let cfg = MLConfig::default();
        let a = order(0.5);
        assert!(fractal_kernel(a, Direction::Forward, -1.0, KernelConvention::ConjugatePair, &cfg).is_err());
        assert!(matches!(
            fractal_kernel(a, Direction::Forward, 1000.0, KernelConvention::ConjugatePair, &cfg),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn grid_kernel_agrees_with_point_kernel() {
        let cfg = MLConfig::transform();
        let a = order(0.8);
        let n = 16u64;
        let max_radius = (2.0 * PI * 225.0 / 16.0_f64).powf(0.8);
        for conv in KernelConvention::ALL {
            for dir in [Direction::Forward, Direction::Inverse] {
                let grid = GridKernel::new(a, dir, conv, &cfg, max_radius);
                for m in [0u64, 1, 7, 64, 150, 225] {
                    let theta = 2.0 * PI * m as f64 / n as f64;
                    let point = fractal_kernel(a, dir, theta, conv, &cfg).unwrap();
                    let g = grid.eval(m, n).unwrap();
                    assert!(
                        (g - point).norm() < 1e-12 * point.norm().max(1.0),
                        "{conv:?} {dir:?} m={m}: {g} vs {point}"
                    );
                }
            }
        }
    }
}
