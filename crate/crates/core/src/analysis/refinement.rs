use std::fmt;
use std::str::FromStr;

use super::report::CheckReport;
use crate::error::{Error, Result};
use crate::lfc::{lfi_quadrature, Partition};
use crate::specfun::{ComplexValue, FractalOrder};

/// Tolerance on the fitted exponent for `f ≡ 1`, which must equal 1 − α.
pub const REFINEMENT_TOLERANCE: f64 = 1e-6;

/// Integrands available to [`refinement_study`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestFunction {
    One,
    Linear,
    Square,
}

impl TestFunction {
    pub fn eval(self, t: f64) -> f64 {
        match self {
            TestFunction::One => 1.0,
            TestFunction::Linear => t,
            TestFunction::Square => t * t,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TestFunction::One => "one",
            TestFunction::Linear => "t",
            TestFunction::Square => "t^2",
        }
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TestFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "one" | "1" => Ok(TestFunction::One),
            "t" => Ok(TestFunction::Linear),
            "t^2" | "t2" => Ok(TestFunction::Square),
            other => Err(Error::InvalidInput(format!("unknown test function {other:?}"))),
        }
    }
}

/// Evaluates the fixed-partition quadrature of `f` on uniform partitions
/// with `levels[i]` intervals and fits the exponent p in `value ∝ N^p`.
///
/// For `f ≡ 1` the sum is exactly `N^{1-α}(b-a)^α/Γ(1+α)`, so the fit must
/// return 1 − α; that case is judged, every other integrand is recorded.
pub fn refinement_study(
    function: TestFunction,
    interval: (f64, f64),
    order: FractalOrder,
    levels: &[usize],
) -> Result<CheckReport> {
    if levels.len() < 2 {
        return Err(Error::InvalidInput("refinement needs at least two levels".into()));
    }
    if levels.windows(2).any(|w| w[1] <= w[0]) || levels[0] == 0 {
        return Err(Error::InvalidInput(format!(
            "levels must be positive and ascending: {levels:?}"
        )));
    }
    let mut values = Vec::with_capacity(levels.len());
    for &n in levels {
        let partition = Partition::uniform(interval.0, interval.1, n)?;
        let samples: Vec<ComplexValue> = partition
            .left_nodes()
            .iter()
            .map(|&t| ComplexValue::new(function.eval(t), 0.0))
            .collect();
        values.push(lfi_quadrature(&samples, &partition, order)?.re);
    }

    let xs: Vec<f64> = levels.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = values.iter().map(|v| v.abs().ln()).collect();
    let exponent = least_squares_slope(&xs, &ys);
    let expected = 1.0 - order.value();
    let deviation = if exponent.is_finite() {
        (exponent - expected).abs()
    } else {
        f64::INFINITY
    };

    let name = format!("refinement[{function}]");
    let report = if function == TestFunction::One {
        CheckReport::judged(name, deviation, REFINEMENT_TOLERANCE)
    } else {
        CheckReport::recorded(name, deviation, REFINEMENT_TOLERANCE)
    };
    Ok(report
        .with_detail("alpha", order.value())
        .with_detail("interval", vec![interval.0, interval.1])
        .with_detail("levels", levels.to_vec())
        .with_detail("values", values)
        .with_detail("exponent", if exponent.is_finite() { exponent } else { f64::NAN }))
}

fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}
