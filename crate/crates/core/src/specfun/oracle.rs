//! High-precision reference evaluation of the Mittag-Leffler series.
//!
//! Deliberately naive: every term is formed from scratch as
//! `z^j / Γ(1 + jα)` with an integer power, the sum is carried at a fixed
//! precision of the requested digits plus the observed cancellation, and
//! the series is cut only once terms fall below the requested digit count.
//! It shares none of the evaluator's termination, escalation or table
//! logic.

use rug::ops::Pow;
use rug::{Complex, Float};

use super::precision::{log2_abs, log2_add};
use super::{ComplexValue, FractalOrder, MLConfig};
use crate::error::{Error, Result};

const MIN_DIGITS: u32 = 30;
const MAX_ROUNDS: usize = 8;

/// `E_α(z)` to at least `digits` significant decimal digits, rounded to
/// double.
pub fn mittag_leffler_oracle(order: FractalOrder, z: ComplexValue, digits: u32) -> Result<ComplexValue> {
    let sum = oracle_sum(order, z, digits)?;
    Ok(ComplexValue::new(sum.real().to_f64(), sum.imag().to_f64()))
}

/// Decimal strings (real, imaginary) of the oracle value, `digits`
/// significant digits each.
pub fn mittag_leffler_oracle_decimal(order: FractalOrder, z: ComplexValue, digits: u32) -> Result<(String, String)> {
    let sum = oracle_sum(order, z, digits)?;
    let fmt = |x: &Float| x.to_string_radix(10, Some(digits as usize));
    Ok((fmt(sum.real()), fmt(sum.imag())))
}

fn oracle_sum(order: FractalOrder, z: ComplexValue, digits: u32) -> Result<Complex> {
    if digits < MIN_DIGITS {
        return Err(Error::InvalidInput(format!(
            "oracle needs at least {MIN_DIGITS} digits, got {digits}"
        )));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidInput(format!("non-finite argument {z}")));
    }
    let target_bits = (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + 16;
    let max_terms = 10 * MLConfig::default().max_terms();
    let mut prec = target_bits + 64;
    for _ in 0..MAX_ROUNDS {
        let (sum, loss) = sum_at(order.value(), z, prec, target_bits, max_terms)?;
        let needed = target_bits as f64 + loss + 16.0;
        if f64::from(prec) >= needed {
            return Ok(sum);
        }
        prec = needed.ceil() as u32 + 64;
    }
    Err(Error::PrecisionExhausted { bits: prec })
}

fn sum_at(alpha: f64, z: ComplexValue, prec: u32, target_bits: u32, max_terms: usize) -> Result<(Complex, f64)> {
    let z_mp = Complex::with_val(prec, (z.re, z.im));
    let alpha_mp = Float::with_val(prec, alpha);
    let mut sum = Complex::with_val(prec, 0);
    let mut log2_total = f64::NEG_INFINITY;
    let mut prev = f64::INFINITY;
    let cutoff = -(f64::from(target_bits) + 8.0);
    for j in 0..max_terms as u32 {
        let gamma = Float::with_val(prec, Float::with_val(prec, &alpha_mp * j) + 1u32).gamma();
        let power = if j == 0 {
            Complex::with_val(prec, 1)
        } else {
            Complex::with_val(prec, (&z_mp).pow(j))
        };
        let term = power / gamma;
        sum += &term;
        let lt = log2_abs(&term);
        log2_total = log2_add(log2_total, lt);
        if term.real().is_zero() && term.imag().is_zero() && j > 0 {
            return Ok((sum.clone(), log2_total - log2_abs(&sum)));
        }
        if j > 0 && lt < prev && lt < log2_abs(&sum) + cutoff {
            let loss = log2_total - log2_abs(&sum);
            return Ok((sum, if loss.is_finite() { loss } else { f64::from(prec) }));
        }
        prev = lt;
    }
    Err(Error::NonConvergence { terms: max_terms })
}
