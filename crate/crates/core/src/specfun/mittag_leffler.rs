use num_complex::Complex64;

use super::gamma::ln_gamma_pos;
use super::precision::{self, round_precision, GUARD_BITS, MAX_PRECISION};
use super::{ComplexValue, FractalOrder, MLConfig};
use crate::error::{Error, Result};
use crate::summation::ComplexNeumaierSum;

/// Estimated relative error below which the double-precision pass is kept.
const ACCEPT_REL: f64 = 1.1e-13;

/// Absolute error of ln Γ as computed by `ln_gamma_pos`.
const LN_GAMMA_ABS_ERR: f64 = 2e-14;

/// One-parameter Mittag-Leffler function `E_α(z) = Σ_j z^j / Γ(1 + jα)`.
///
/// The series is first summed in double precision with compensated
/// accumulation while a running error bound is kept. When that bound
/// exceeds ~1e-13 relative (cancellation on oscillatory or negative
/// arguments), the sum is recomputed in multiprecision arithmetic with a
/// working precision sized from the observed cancellation, and repeated at
/// higher precision until the cancellation is covered.
///
/// Terms are summed until `|term_j| < rel_tol·|partial sum|` on the
/// decreasing side of the term hump.
pub fn mittag_leffler(order: FractalOrder, z: ComplexValue, cfg: &MLConfig) -> Result<ComplexValue> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidInput(format!("non-finite argument {z}")));
    }
    let magnitude = z.norm();
    if magnitude > cfg.magnitude_guard() {
        return Err(Error::GuardExceeded {
            magnitude,
            guard: cfg.magnitude_guard(),
        });
    }
    if magnitude == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    match double_pass(order.value(), z, cfg)? {
        DoublePass::Accepted(value) => Ok(value),
        DoublePass::Escalate { precision } => extended(order.value(), z, cfg, precision),
    }
}

pub(crate) enum DoublePass {
    Accepted(Complex64),
    Escalate { precision: u32 },
}

pub(crate) fn double_pass(alpha: f64, z: Complex64, cfg: &MLConfig) -> Result<DoublePass> {
    let ln_r = z.norm().ln();
    let phase_step = z.arg();
    let ln_tol = cfg.rel_tol().ln();
    let mut acc = ComplexNeumaierSum::new();
    let mut ln_total = f64::NEG_INFINITY;
    let mut err = 0.0;
    let mut representable = true;
    let mut prev = f64::INFINITY;
    let mut necessary_met = false;

    for j in 0..cfg.max_terms() {
        let jf = j as f64;
        let ln_gamma = if j == 0 { 0.0 } else { ln_gamma_pos(1.0 + jf * alpha)? };
        let ln_term = if j == 0 { 0.0 } else { jf * ln_r - ln_gamma };
        ln_total = ln_add(ln_total, ln_term);
        if ln_term > 700.0 {
            representable = false;
        }
        if representable {
            let magnitude = ln_term.exp();
            acc += Complex64::from_polar(magnitude, jf * phase_step);
            let exponent_err =
                f64::EPSILON * (jf * ln_r.abs() + ln_gamma.abs() + jf * phase_step.abs() + 4.0) + LN_GAMMA_ABS_ERR;
            err += magnitude * exponent_err;
        }

        let decreasing = j > 0 && ln_term < prev;
        // |partial| ≤ Σ|term|, so this must hold before the exact rule can.
        if decreasing && ln_term < ln_total + ln_tol {
            necessary_met = true;
        }
        let ln_partial = if representable {
            acc.value().norm().ln()
        } else {
            ln_total
        };
        if decreasing && ln_term < ln_partial + ln_tol {
            let value = acc.value();
            if representable && value.norm() > 0.0 && err <= ACCEPT_REL * value.norm() {
                return Ok(DoublePass::Accepted(value));
            }
            return Ok(DoublePass::Escalate {
                precision: initial_precision(ln_total, value, representable),
            });
        }
        prev = ln_term;
    }
    if necessary_met {
        let value = acc.value();
        Ok(DoublePass::Escalate {
            precision: initial_precision(ln_total, value, representable),
        })
    } else {
        Err(Error::NonConvergence { terms: cfg.max_terms() })
    }
}

fn initial_precision(ln_total: f64, estimate: Complex64, representable: bool) -> u32 {
    let log2_total = ln_total / std::f64::consts::LN_2;
    let norm = estimate.norm();
    let loss = if representable && norm.is_finite() && norm > 0.0 {
        (log2_total - norm.log2()).max(0.0)
    } else {
        log2_total.max(0.0)
    };
    round_precision(loss + f64::from(GUARD_BITS) + 32.0)
}

pub(crate) fn extended(alpha: f64, z: Complex64, cfg: &MLConfig, mut prec: u32) -> Result<Complex64> {
    loop {
        if prec > MAX_PRECISION {
            return Err(Error::PrecisionExhausted { bits: MAX_PRECISION });
        }
        let summed = precision::sum_series(alpha, z, cfg.rel_tol(), cfg.max_terms(), prec)?;
        if summed.is_trustworthy() {
            return Ok(summed.value);
        }
        prec = summed.retry_precision();
    }
}

fn ln_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}
