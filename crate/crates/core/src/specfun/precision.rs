//! Multiprecision summation of the Mittag-Leffler series.
//!
//! On oscillatory arguments the partial sums overshoot the O(1) result by
//! roughly `E_α(|z|)`, so the working precision must cover
//! `log2(Σ|term|) - log2|sum|` bits of cancellation on top of the target
//! accuracy. Both entry points report that loss so callers can retry at a
//! higher precision.

use num_complex::Complex64;
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float};

use crate::error::{Error, Result};

/// Guard bits kept beyond double precision after cancellation.
pub(crate) const GUARD_BITS: u32 = 53 + 32;

/// Hard ceiling on the working precision.
pub(crate) const MAX_PRECISION: u32 = 1 << 16;

pub(crate) fn round_precision(bits: f64) -> u32 {
    let bits = bits.max(128.0).ceil() as u32;
    bits.div_ceil(64) * 64
}

/// log2 |x| for a multiprecision real, `-inf` for zero.
pub(crate) fn log2_abs_real(x: &Float) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let (mantissa, exp) = x.to_f64_exp();
    mantissa.abs().log2() + f64::from(exp)
}

/// log2 |z| for a multiprecision complex, `-inf` for zero.
pub(crate) fn log2_abs(z: &Complex) -> f64 {
    let lr = log2_abs_real(z.real());
    let li = log2_abs_real(z.imag());
    let (hi, lo) = if lr >= li { (lr, li) } else { (li, lr) };
    if hi == f64::NEG_INFINITY {
        return hi;
    }
    hi + 0.5 * (1.0 + (2.0 * (lo - hi)).exp2()).log2()
}

/// log2(2^a + 2^b).
pub(crate) fn log2_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp2().ln_1p() / std::f64::consts::LN_2
}

/// Outcome of a multiprecision series summation.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Summed {
    pub value: Complex64,
    /// log2 Σ|term_j| − log2 |Σ term_j|: bits lost to cancellation.
    pub loss_bits: f64,
    pub precision: u32,
}

impl Summed {
    pub fn is_trustworthy(&self) -> bool {
        self.loss_bits.is_finite() && self.loss_bits + f64::from(GUARD_BITS) <= f64::from(self.precision)
    }

    /// Precision to retry with when [`Self::is_trustworthy`] is false.
    pub fn retry_precision(&self) -> u32 {
        let loss = if self.loss_bits.is_finite() {
            self.loss_bits
        } else {
            f64::from(self.precision)
        };
        round_precision(loss + f64::from(GUARD_BITS) + 64.0).max(self.precision * 2)
    }
}

/// Rounds a multiprecision sum to double, rejecting overflow.
fn to_complex64(sum: &Complex) -> Result<Complex64> {
    let value = Complex64::new(sum.real().to_f64(), sum.imag().to_f64());
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow("Mittag-Leffler value".into()))
    }
}

/// Σ_j z^j / Γ(1 + jα) at `prec` bits, evaluating each reciprocal gamma on
/// the fly. Terminates with the usual rule: the term is below `rel_tol`
/// times the partial sum and the terms are past their peak.
pub(crate) fn sum_series(alpha: f64, z: Complex64, rel_tol: f64, max_terms: usize, prec: u32) -> Result<Summed> {
    let log2_tol = rel_tol.log2();
    let alpha_mp = Float::with_val(prec, alpha);
    let z_mp = Complex::with_val(prec, (z.re, z.im));
    let mut power = Complex::with_val(prec, 1);
    let mut sum = Complex::with_val(prec, 0);
    let mut log2_total = f64::NEG_INFINITY;
    let mut prev = f64::INFINITY;
    for j in 0..max_terms {
        let arg = Float::with_val(prec, &alpha_mp * j as u32) + 1u32;
        let recip_gamma = arg.gamma().recip();
        let term = Complex::with_val(prec, &power * &recip_gamma);
        sum += &term;
        let lt = log2_abs(&term);
        log2_total = log2_add(log2_total, lt);
        if j > 0 && lt < prev && lt < log2_abs(&sum) + log2_tol {
            return Ok(Summed {
                value: to_complex64(&sum)?,
                loss_bits: log2_total - log2_abs(&sum),
                precision: prec,
            });
        }
        prev = lt;
        power *= &z_mp;
    }
    Err(Error::NonConvergence { terms: max_terms })
}

/// Precomputed coefficients `c^j / Γ(1 + jα)` for arguments `z = c·r` on
/// a fixed ray `c = e^{iφ}`, so each evaluation costs only real-by-complex
/// products. Shared read-only across plan workers.
pub(crate) struct RayTable {
    precision: u32,
    coeffs: Vec<Complex>,
}

impl RayTable {
    /// `unit` is (cos φ, sin φ) produced at `prec` bits by the caller.
    pub fn new(alpha: f64, unit: (Float, Float), terms: usize, prec: u32) -> Self {
        let alpha_mp = Float::with_val(prec, alpha);
        let c = Complex::with_val(prec, unit);
        let mut power = Complex::with_val(prec, 1);
        let mut coeffs = Vec::with_capacity(terms);
        for j in 0..terms {
            let arg = Float::with_val(prec, &alpha_mp * j as u32) + 1u32;
            let recip_gamma = arg.gamma().recip();
            coeffs.push(Complex::with_val(prec, &power * &recip_gamma));
            power *= &c;
        }
        Self {
            precision: prec,
            coeffs,
        }
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Sums the series at radius `r`; `None` when the table is too short
    /// for the termination rule to fire.
    pub fn eval(&self, r: &Float, rel_tol: f64) -> Option<Result<Summed>> {
        let prec = self.precision;
        let log2_tol = rel_tol.log2();
        let mut power = Float::with_val(prec, 1);
        let mut sum = Complex::with_val(prec, 0);
        let mut log2_total = f64::NEG_INFINITY;
        let mut prev = f64::INFINITY;
        for (j, coeff) in self.coeffs.iter().enumerate() {
            let term = Complex::with_val(prec, coeff * &power);
            sum += &term;
            let lt = log2_abs(&term);
            log2_total = log2_add(log2_total, lt);
            if j > 0 && lt < prev && lt < log2_abs(&sum) + log2_tol {
                return Some(to_complex64(&sum).map(|value| Summed {
                    value,
                    loss_bits: log2_total - log2_abs(&sum),
                    precision: prec,
                }));
            }
            prev = lt;
            power *= r;
        }
        None
    }
}

/// (cos πα/2, sin πα/2) at `prec` bits, written through the complementary
/// angle so that α = 1 gives exactly (0, 1).
pub(crate) fn half_pi_alpha_cos_sin(alpha: f64, prec: u32) -> (Float, Float) {
    let complement = Float::with_val(prec, 1) - Float::with_val(prec, alpha);
    let angle = Float::with_val(prec, Constant::Pi) * complement / 2u32;
    let (sin, cos) = angle.sin_cos(Float::new(prec));
    (sin, cos)
}

/// θ^α with θ = 2π·m/n, evaluated entirely at `prec` bits.
pub(crate) fn ray_radius(m: u64, n: u64, alpha: f64, prec: u32) -> Float {
    let theta = Float::with_val(prec, Constant::Pi) * 2u32 * Float::with_val(prec, m) / Float::with_val(prec, n);
    if alpha == 1.0 {
        theta
    } else {
        theta.pow(Float::with_val(prec, alpha))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log2_helpers() {
        let z = Complex::with_val(64, (3.0, 4.0));
        assert!((log2_abs(&z) - 5f64.log2()).abs() < 1e-12);
        assert_eq!(log2_abs(&Complex::with_val(64, 0)), f64::NEG_INFINITY);
        assert!((log2_add(3.0, 3.0) - 4.0).abs() < 1e-12);
        assert_eq!(log2_add(f64::NEG_INFINITY, 2.0), 2.0);
    }

    #[test]
    fn exponential_with_heavy_cancellation() {
        // e^{-40}: partial sums reach ~e^{40}/√(80π), so ~115 bits cancel.
        let s = sum_series(1.0, Complex64::new(-40.0, 0.0), 1e-15, 4000, 256).unwrap();
        assert!(s.is_trustworthy());
        let want = (-40f64).exp();
        assert!(((s.value.re - want) / want).abs() < 1e-14);
        assert!(s.loss_bits > 100.0);
        let coarse = sum_series(1.0, Complex64::new(-40.0, 0.0), 1e-15, 4000, 128).unwrap();
        assert!(!coarse.is_trustworthy());
        assert!(coarse.retry_precision() > 128);
    }

    #[test]
    fn ray_table_matches_direct_series() {
        let alpha = 0.7;
        let prec = 256;
        let (c, s) = half_pi_alpha_cos_sin(alpha, prec);
        let table = RayTable::new(alpha, (c.clone(), -s.clone()), 600, prec);
        let r = Float::with_val(prec, 9.5);
        let via_table = table.eval(&r, 1e-15).unwrap().unwrap();
        let z = Complex64::new(c.to_f64() * 9.5, -s.to_f64() * 9.5);
        let direct = sum_series(alpha, z, 1e-15, 4000, prec).unwrap();
        assert!((via_table.value - direct.value).norm() < 1e-13);
    }

    #[test]
    fn short_table_reports_exhaustion() {
        let prec = 128;
        let table = RayTable::new(0.5, (Float::with_val(prec, 1), Float::with_val(prec, 0)), 5, prec);
        assert!(table.eval(&Float::with_val(prec, 10), 1e-15).is_none());
    }

    #[test]
    fn unit_is_exact_at_alpha_one() {
        let (c, s) = half_pi_alpha_cos_sin(1.0, 128);
        assert!(c.is_zero());
        assert_eq!(s.to_f64(), 1.0);
    }
}
