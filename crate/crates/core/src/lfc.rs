//! Local fractional quadrature and the sampled-signal model behind the
//! discrete transform.
//!
//! A sampled signal `f_0 … f_{N-1}` with spacing Δt becomes the array of
//! coefficients `f̃_k = f_k·(Δt)^α`, extended outside the natural window
//! either by zeros or periodically with period N. The fractal comb itself
//! is never materialized; pairing against a test function reduces to a
//! weighted sum over the coefficients.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{ComplexValue, FractalOrder};
use crate::summation::ComplexNeumaierSum;

/// Strictly increasing partition `t_0 < t_1 < … < t_N` of `[t_0, t_N]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    points: Vec<f64>,
}

impl Partition {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "a partition needs at least 2 points, got {}",
                points.len()
            )));
        }
        if let Some(bad) = points.iter().find(|t| !t.is_finite()) {
            return Err(Error::InvalidInput(format!("partition point {bad} is not finite")));
        }
        if let Some(i) = points.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::InvalidInput(format!(
                "partition is not strictly increasing at index {}: {} then {}",
                i + 1,
                points[i],
                points[i + 1]
            )));
        }
        Ok(Self { points })
    }

    /// `intervals` equal subintervals of `[a, b]`.
    pub fn uniform(a: f64, b: f64, intervals: usize) -> Result<Self> {
        if intervals == 0 {
            return Err(Error::InvalidInput(
                "uniform partition needs at least one interval".into(),
            ));
        }
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidInput(format!("invalid interval [{a}, {b}]")));
        }
        let h = (b - a) / intervals as f64;
        let mut points: Vec<f64> = (0..intervals).map(|j| a + j as f64 * h).collect();
        points.push(b);
        Self::new(points)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// Number of subintervals N.
    pub fn intervals(&self) -> usize {
        self.points.len() - 1
    }

    /// Left endpoints `t_0 … t_{N-1}`.
    pub fn left_nodes(&self) -> &[f64] {
        &self.points[..self.points.len() - 1]
    }

    pub fn widths(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.windows(2).map(|w| w[1] - w[0])
    }
}

/// N complex samples at uniform spacing `dt`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledSignal {
    values: Vec<ComplexValue>,
    dt: f64,
}

impl SampledSignal {
    pub fn new(values: Vec<ComplexValue>, dt: f64) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidInput("a sampled signal needs at least one sample".into()));
        }
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidInput(format!("sample spacing must be > 0, got {dt}")));
        }
        if let Some(i) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::InvalidInput(format!("sample {i} is not finite: {}", values[i])));
        }
        Ok(Self { values, dt })
    }

    pub fn from_real(values: &[f64], dt: f64) -> Result<Self> {
        Self::new(values.iter().map(|&v| ComplexValue::new(v, 0.0)).collect(), dt)
    }

    pub fn values(&self) -> &[ComplexValue] {
        &self.values
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// How the discrete approximation continues outside the natural window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Extension {
    Zero,
    #[default]
    Periodic,
}

/// Coefficients `f̃_k = f_k·(Δt)^α` of a sampled signal.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteApproximation {
    coeffs: Vec<ComplexValue>,
    dt: f64,
    order: FractalOrder,
    extension: Extension,
}

impl DiscreteApproximation {
    pub fn coeffs(&self) -> &[ComplexValue] {
        &self.coeffs
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn order(&self) -> FractalOrder {
        self.order
    }

    pub fn extension(&self) -> Extension {
        self.extension
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Natural window `(-Δt/2, (2N-1)Δt/2)` of length `T = NΔt`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NaturalWindow {
    pub lo: f64,
    pub hi: f64,
    pub period: f64,
}

/// Fixed-partition local fractional integral
/// `(1/Γ(1+α)) Σ_j f(t_j)·(t_{j+1} - t_j)^α`, with `values[j] = f(t_j)` at
/// the left endpoints. No limit over refinements is taken: for α < 1 that
/// limit is 0 or ∞ on ordinary intervals.
pub fn lfi_quadrature(values: &[ComplexValue], partition: &Partition, order: FractalOrder) -> Result<ComplexValue> {
    if values.len() != partition.intervals() {
        return Err(Error::LengthMismatch {
            expected: partition.intervals(),
            found: values.len(),
        });
    }
    let alpha = order.value();
    let mut acc = ComplexNeumaierSum::new();
    for (v, w) in values.iter().zip(partition.widths()) {
        acc += v * w.powf(alpha);
    }
    Ok(acc.value() / order.gamma_one_plus())
}

pub fn build_discrete_approximation(
    signal: &SampledSignal,
    order: FractalOrder,
    extension: Extension,
) -> DiscreteApproximation {
    let scale = signal.dt().powf(order.value());
    let coeffs: Vec<ComplexValue> = signal.values().iter().map(|v| v * scale).collect();
    debug_assert!(coeffs.iter().zip(signal.values()).all(|(c, v)| *c == v * scale));
    DiscreteApproximation {
        coeffs,
        dt: signal.dt(),
        order,
        extension,
    }
}

/// `f̃_k` for any integer k: zero outside `[0, N)` in [`Extension::Zero`]
/// mode, `f̃_{k mod N}` in [`Extension::Periodic`] mode.
pub fn coefficient_at(approx: &DiscreteApproximation, k: i64) -> ComplexValue {
    let n = approx.coeffs.len() as i64;
    match approx.extension {
        Extension::Zero if (0..n).contains(&k) => approx.coeffs[k as usize],
        Extension::Zero => ComplexValue::new(0.0, 0.0),
        Extension::Periodic => approx.coeffs[k.rem_euclid(n) as usize],
    }
}

pub fn natural_window(n: usize, dt: f64) -> Result<NaturalWindow> {
    if n == 0 {
        return Err(Error::InvalidInput("natural window needs N >= 1".into()));
    }
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::InvalidInput(format!("sample spacing must be > 0, got {dt}")));
    }
    Ok(NaturalWindow {
        lo: -0.5 * dt,
        hi: (2 * n - 1) as f64 * dt * 0.5,
        period: n as f64 * dt,
    })
}

/// Pairs the discrete approximation with a test function sampled at the
/// nodes `kΔt`: `(1/Γ(1+α)) Σ_k f̃_k·φ(kΔt)`.
pub fn windowed_pairing(approx: &DiscreteApproximation, phi_at_nodes: &[ComplexValue]) -> Result<ComplexValue> {
    if phi_at_nodes.len() != approx.len() {
        return Err(Error::LengthMismatch {
            expected: approx.len(),
            found: phi_at_nodes.len(),
        });
    }
    let mut acc = ComplexNeumaierSum::new();
    for (c, phi) in approx.coeffs.iter().zip(phi_at_nodes) {
        acc += c * phi;
    }
    Ok(acc.value() / approx.order.gamma_one_plus())
}

#[cfg(test)]
mod tests {
    use approx::assert_relative_eq;

    use super::*;

    fn c(re: f64) -> ComplexValue {
        ComplexValue::new(re, 0.0)
    }

    fn order(a: f64) -> FractalOrder {
        FractalOrder::new(a).unwrap()
    }

    #[test]
    fn quadrature_examples() {
        let p4 = Partition::uniform(0.0, 1.0, 4).unwrap();
        let ones = vec![c(1.0); 4];
        assert_eq!(lfi_quadrature(&ones, &p4, order(1.0)).unwrap(), c(1.0));
        let half = lfi_quadrature(&ones, &p4, order(0.5)).unwrap();
        // 4·0.25^0.5/Γ(1.5) = 2/(√π/2)
        assert_relative_eq!(half.re, 4.0 / std::f64::consts::PI.sqrt(), max_relative = 1e-14);
        assert!((half.re - 2.256_758_3).abs() < 1e-7);

        let p8 = Partition::uniform(0.0, 1.0, 8).unwrap();
        let ramp: Vec<_> = p8.left_nodes().iter().map(|&t| c(t)).collect();
        assert_eq!(lfi_quadrature(&ramp, &p8, order(1.0)).unwrap(), c(0.4375));
    }

    #[test]
    fn quadrature_on_nonuniform_partition() {
        let p = Partition::new(vec![0.0, 0.25, 1.0, 3.0]).unwrap();
        let v = [c(2.0), c(-1.0), c(0.5)];
        let want = (2.0 * 0.25f64.sqrt() - 0.75f64.sqrt() + 0.5 * 2f64.sqrt()) / crate::gamma_pos(1.5).unwrap();
        assert_relative_eq!(
            lfi_quadrature(&v, &p, order(0.5)).unwrap().re,
            want,
            max_relative = 1e-14
        );
    }

    #[test]
    fn quadrature_length_mismatch() {
        let p = Partition::uniform(0.0, 1.0, 4).unwrap();
        assert_eq!(
            lfi_quadrature(&[c(1.0); 3], &p, order(0.5)),
            Err(Error::LengthMismatch { expected: 4, found: 3 })
        );
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![0.0]).is_err());
        assert!(Partition::new(vec![0.0, 1.0, 1.0]).is_err());
        assert!(Partition::new(vec![0.0, f64::NAN]).is_err());
        assert!(Partition::uniform(1.0, 0.0, 4).is_err());
        assert!(Partition::uniform(0.0, 1.0, 0).is_err());
        let p = Partition::uniform(-1.0, 1.0, 3).unwrap();
        assert_eq!(p.intervals(), 3);
        assert_eq!(*p.points().last().unwrap(), 1.0);
    }

    #[test]
    fn signal_validation() {
        assert!(SampledSignal::new(vec![], 1.0).is_err());
        assert!(SampledSignal::new(vec![c(1.0)], 0.0).is_err());
        assert!(SampledSignal::new(vec![ComplexValue::new(f64::INFINITY, 0.0)], 1.0).is_err());
    }

    #[test]
    fn discrete_approximation_examples() {
        let s = SampledSignal::from_real(&[3.0, -2.0, 0.5], 1.0).unwrap();
        let a = build_discrete_approximation(&s, order(0.37), Extension::Periodic);
        assert_eq!(a.coeffs(), s.values());

        let s = SampledSignal::from_real(&[2.0, 4.0], 0.5).unwrap();
        let a = build_discrete_approximation(&s, order(0.5), Extension::Zero);
        assert_relative_eq!(a.coeffs()[0].re, std::f64::consts::SQRT_2, max_relative = 1e-15);
        assert_relative_eq!(a.coeffs()[1].re, 2.0 * std::f64::consts::SQRT_2, max_relative = 1e-15);
        assert_eq!(a.extension(), Extension::Zero);

        let s = SampledSignal::from_real(&[0.0; 3], 0.3).unwrap();
        let a = build_discrete_approximation(&s, order(0.2), Extension::Periodic);
        assert!(a.coeffs().iter().all(|v| *v == c(0.0)));
    }

    #[test]
    fn coefficient_lookup() {
        let s = SampledSignal::from_real(&[1.0, 2.0, 3.0, 4.0], 1.0).unwrap();
        let per = build_discrete_approximation(&s, order(0.5), Extension::Periodic);
        let zero = build_discrete_approximation(&s, order(0.5), Extension::Zero);
        assert_eq!(coefficient_at(&per, 4), c(1.0));
        assert_eq!(coefficient_at(&per, -1), c(4.0));
        assert_eq!(coefficient_at(&per, -9), c(4.0));
        assert_eq!(coefficient_at(&zero, -1), c(0.0));
        assert_eq!(coefficient_at(&zero, 4), c(0.0));
        assert_eq!(coefficient_at(&zero, 2), c(3.0));
    }

    #[test]
    fn natural_window_examples() {
        assert_eq!(
            natural_window(4, 1.0).unwrap(),
            NaturalWindow {
                lo: -0.5,
                hi: 3.5,
                period: 4.0
            }
        );
        assert_eq!(
            natural_window(1, 2.0).unwrap(),
            NaturalWindow {
                lo: -1.0,
                hi: 1.0,
                period: 2.0
            }
        );
        assert_eq!(
            natural_window(8, 0.25).unwrap(),
            NaturalWindow {
                lo: -0.125,
                hi: 1.875,
                period: 2.0
            }
        );
        assert!(natural_window(0, 1.0).is_err());
        assert!(natural_window(3, -1.0).is_err());
    }

    #[test]
    fn pairing_examples() {
        let ones = SampledSignal::from_real(&[1.0; 4], 1.0).unwrap();
        let a = build_discrete_approximation(&ones, order(1.0), Extension::Periodic);
        assert_eq!(windowed_pairing(&a, &[c(1.0); 4]).unwrap(), c(4.0));

        let ones = SampledSignal::from_real(&[1.0; 4], 0.25).unwrap();
        let a = build_discrete_approximation(&ones, order(0.5), Extension::Periodic);
        let quad = lfi_quadrature(&[c(1.0); 4], &Partition::uniform(0.0, 1.0, 4).unwrap(), order(0.5)).unwrap();
        let pair = windowed_pairing(&a, &[c(1.0); 4]).unwrap();
        assert!((pair - quad).norm() < 1e-15);

        let s = SampledSignal::from_real(&[5.0, 6.0, 7.0], 0.5).unwrap();
        let a = build_discrete_approximation(&s, order(0.3), Extension::Zero);
        let delta = [c(0.0), c(1.0), c(0.0)];
        let want = a.coeffs()[1] / order(0.3).gamma_one_plus();
        assert_eq!(windowed_pairing(&a, &delta).unwrap(), want);

        assert!(matches!(
            windowed_pairing(&a, &[c(1.0)]),
            Err(Error::LengthMismatch { .. })
        ));
    }
}
