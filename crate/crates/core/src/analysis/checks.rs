use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use super::refinement::{refinement_study, TestFunction};
use super::report::CheckReport;
use crate::dyft::{forward, make_plan, TransformPlan};
use crate::error::{Error, Result};
use crate::lfc::{build_discrete_approximation, coefficient_at, DiscreteApproximation, Extension, SampledSignal};
use crate::rng;
use crate::specfun::{ComplexValue, Direction, FractalOrder, KernelConvention, MLConfig};

pub const LINEARITY_TOLERANCE: f64 = 1e-10;
/// Rounding slack for periodic window sums, relative to Σ|f̃_k|.
pub const PERIODIC_TOLERANCE: f64 = 1e-14;
pub const DFT_TOLERANCE: f64 = 1e-12;

/// max_k |DYFT(a·f1 + b·f2)[k] − a·F1[k] − b·F2[k]|.
pub fn check_linearity(
    f1: &[ComplexValue],
    f2: &[ComplexValue],
    a: ComplexValue,
    b: ComplexValue,
    plan: &TransformPlan,
) -> Result<CheckReport> {
    if f1.len() != f2.len() {
        return Err(Error::LengthMismatch {
            expected: f1.len(),
            found: f2.len(),
        });
    }
    let combined: Vec<ComplexValue> = f1.iter().zip(f2).map(|(x, y)| a * x + b * y).collect();
    let lhs = forward(&combined, 1.0, plan)?;
    let s1 = forward(f1, 1.0, plan)?;
    let s2 = forward(f2, 1.0, plan)?;
    let deviation = lhs
        .coeffs()
        .iter()
        .zip(s1.coeffs().iter().zip(s2.coeffs()))
        .map(|(l, (x, y))| (l - a * x - b * y).norm())
        .fold(0.0, f64::max);
    Ok(CheckReport::judged("linearity", deviation, LINEARITY_TOLERANCE)
        .with_detail("alpha", plan.order().value())
        .with_detail("n", plan.size())
        .with_detail("convention", plan.convention().as_str())
        .with_detail("a", vec![a.re, a.im])
        .with_detail("b", vec![b.re, b.im]))
}

/// Compares Σ_{n=j}^{j+N-1} f̃_n with Σ_{n=0}^{N-1} f̃_n.
pub fn check_periodic_sum(approx: &DiscreteApproximation, j: i64) -> Result<CheckReport> {
    if approx.extension() != Extension::Periodic {
        return Err(Error::ExtensionMode);
    }
    let n = approx.len() as i64;
    let base: ComplexValue = (0..n).map(|i| coefficient_at(approx, i)).sum();
    let shifted: ComplexValue = (j..j + n).map(|i| coefficient_at(approx, i)).sum();
    let scale: f64 = approx.coeffs().iter().map(|c| c.norm()).sum::<f64>().max(1.0);
    Ok(
        CheckReport::judged("periodic-sum", (shifted - base).norm(), PERIODIC_TOLERANCE * scale)
            .with_detail("n", approx.len())
            .with_detail("j", j),
    )
}

/// Compares the α = 1 forward kernel with `exp(-2πi·nk/N)` entrywise.
pub fn check_dft_equivalence(size: usize, cfg: &MLConfig) -> Result<CheckReport> {
    let plan = make_plan(
        size,
        FractalOrder::CLASSICAL,
        Direction::Forward,
        KernelConvention::ConjugatePair,
        cfg,
    )?;
    let mut deviation: f64 = 0.0;
    for n in 0..size {
        for k in 0..size {
            let phase = -2.0 * PI * ((n * k) % size) as f64 / size as f64;
            let want = ComplexValue::from_polar(1.0, phase);
            deviation = deviation.max((plan.entry(n, k) - want).norm());
        }
    }
    Ok(CheckReport::judged("dft-equivalence", deviation, DFT_TOLERANCE).with_detail("n", size))
}

/// Named groups of checks run by `run_suite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Linearity,
    Periodic,
    Dft,
    Refinement,
}

impl Suite {
    pub fn as_str(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Linearity => "linearity",
            Suite::Periodic => "periodic",
            Suite::Dft => "dft",
            Suite::Refinement => "refinement",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "linearity" => Suite::Linearity,
            "periodic" => Suite::Periodic,
            "dft" => Suite::Dft,
            "refinement" => Suite::Refinement,
            other => return Err(Error::InvalidInput(format!("unknown suite {other:?}"))),
        })
    }
}

/// Runs a suite with its built-in grid. Random draws come from `seed`.
pub fn run_suite(suite: Suite, cfg: &MLConfig, seed: u64) -> Result<Vec<CheckReport>> {
    let mut reports = Vec::new();
    if matches!(suite, Suite::All | Suite::Dft) {
        for n in 1..=16 {
            reports.push(check_dft_equivalence(n, cfg)?);
        }
    }
    if matches!(suite, Suite::All | Suite::Linearity) {
        let mut rng = rng::seeded(seed);
        for (alpha, n) in [(1.0, 16), (0.8, 16), (0.5, 8), (0.3, 8)] {
            let order = FractalOrder::new(alpha)?;
            for convention in KernelConvention::ALL {
                let plan = make_plan(n, order, Direction::Forward, convention, cfg)?;
                let f1 = rng::random_signal(&mut rng, n);
                let f2 = rng::random_signal(&mut rng, n);
                let a = rng::random_complex(&mut rng);
                let b = rng::random_complex(&mut rng);
                reports.push(check_linearity(&f1, &f2, a, b, &plan)?.with_detail("seed", seed));
            }
        }
    }
    if matches!(suite, Suite::All | Suite::Periodic) {
        let mut rng = rng::seeded(seed);
        let order = FractalOrder::new(0.5)?;
        for n in [1usize, 4, 7, 16] {
            let signal = SampledSignal::new(rng::random_signal(&mut rng, n), 0.5)?;
            let approx = build_discrete_approximation(&signal, order, Extension::Periodic);
            let span = 3 * n as i64;
            let worst = (-span..=span)
                .map(|j| check_periodic_sum(&approx, j))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .max_by(|x, y| x.max_deviation.total_cmp(&y.max_deviation))
                .expect("non-empty shift range");
            reports.push(
                worst
                    .with_detail("j_range", vec![-span, span])
                    .with_detail("seed", seed),
            );
        }
    }
    if matches!(suite, Suite::All | Suite::Refinement) {
        for alpha in [0.3, 0.5, 0.8, 1.0] {
            let order = FractalOrder::new(alpha)?;
            reports.push(refinement_study(TestFunction::One, (0.0, 1.0), order, &[4, 8, 16, 32])?);
        }
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> ComplexValue {
        ComplexValue::new(re, im)
    }

    #[test]
    fn linearity_examples() {
        let cfg = MLConfig::transform();
        let plan = make_plan(
            8,
            FractalOrder::new(0.5).unwrap(),
            Direction::Forward,
            KernelConvention::ConjugatePair,
            &cfg,
        )
        .unwrap();
        let mut rng = rng::seeded(3);
        let f1 = rng::random_signal(&mut rng, 8);
        let f2 = rng::random_signal(&mut rng, 8);

        let r = check_linearity(&f1, &f2, c(1.0, 0.0), c(0.0, 0.0), &plan).unwrap();
        assert!(r.max_deviation < 1e-15 && r.passed == Some(true));

        let neg: Vec<_> = f1.iter().map(|v| -v).collect();
        let r = check_linearity(&f1, &neg, c(1.0, 0.0), c(1.0, 0.0), &plan).unwrap();
        assert!(r.max_deviation <= 1e-12);

        let r = check_linearity(&f1, &f2, c(2.0, 1.0), c(-3.0, 0.0), &plan).unwrap();
        assert!(r.max_deviation <= 1e-10 && r.passed == Some(true));

        assert!(check_linearity(&f1, &f2[..7], c(1.0, 0.0), c(1.0, 0.0), &plan).is_err());
    }

    #[test]
    fn periodic_sum_examples() {
        let order = FractalOrder::new(0.5).unwrap();
        let s = SampledSignal::from_real(&[1.0, 2.0, 3.0, 4.0], 1.0).unwrap();
        let approx = build_discrete_approximation(&s, order, Extension::Periodic);
        for j in [2, 0, -4] {
            let r = check_periodic_sum(&approx, j).unwrap();
            assert_eq!(r.max_deviation, 0.0, "j = {j}");
            assert_eq!(r.passed, Some(true));
        }
        let zero = build_discrete_approximation(&s, order, Extension::Zero);
        assert_eq!(check_periodic_sum(&zero, 1), Err(Error::ExtensionMode));
    }

    #[test]
    fn dft_equivalence_examples() {
        let cfg = MLConfig::default();
        for n in [1, 4, 16] {
            let r = check_dft_equivalence(n, &cfg).unwrap();
            assert_eq!(r.passed, Some(true), "{r:?}");
        }
    }

    #[test]
    fn suite_names() {
        for s in [
            Suite::All,
            Suite::Linearity,
            Suite::Periodic,
            Suite::Dft,
            Suite::Refinement,
        ] {
            assert_eq!(s.as_str().parse::<Suite>().unwrap(), s);
        }
        assert!("everything".parse::<Suite>().is_err());
    }
}
