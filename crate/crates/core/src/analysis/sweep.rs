use std::fmt;
use std::str::FromStr;

use super::report::{SweepRow, SweepTable};
use crate::dyft::{make_plan, roundtrip, TransformPlan};
use crate::error::{Error, Result};
use crate::rng;
use crate::specfun::{ComplexValue, Direction, FractalOrder, KernelConvention, MLConfig};

/// Round-trip residual bound for α = 1, where the transform is the DFT.
pub const CLASSICAL_ROUNDTRIP_TOLERANCE: f64 = 1e-9;

/// Test signals used by [`residual_sweep`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SignalFamily {
    Constant,
    Impulse,
    Random,
}

impl SignalFamily {
    pub const ALL: [SignalFamily; 3] = [Self::Constant, Self::Impulse, Self::Random];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Constant => "constant",
            Self::Impulse => "impulse",
            Self::Random => "random",
        }
    }

    /// The family's N-point signal. Random signals depend only on `seed`
    /// and N.
    pub fn signal(self, n: usize, seed: u64) -> Vec<ComplexValue> {
        match self {
            Self::Constant => vec![ComplexValue::new(1.0, 0.0); n],
            Self::Impulse => {
                let mut v = vec![ComplexValue::new(0.0, 0.0); n];
                v[0] = ComplexValue::new(1.0, 0.0);
                v
            }
            Self::Random => rng::random_signal(&mut rng::seeded(seed), n),
        }
    }
}

impl fmt::Display for SignalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SignalFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "constant" => Ok(Self::Constant),
            "impulse" => Ok(Self::Impulse),
            "random" | "random-seeded" => Ok(Self::Random),
            other => Err(Error::InvalidInput(format!("unknown signal family {other:?}"))),
        }
    }
}

/// Round-trip residuals over every (α, N, family, convention). A
/// combination that cannot be planned produces a row carrying the error
/// instead of aborting the sweep. Rows are sorted by (α, N, family,
/// convention).
pub fn residual_sweep(
    alphas: &[f64],
    sizes: &[usize],
    families: &[SignalFamily],
    conventions: &[KernelConvention],
    seed: u64,
    cfg: &MLConfig,
) -> Result<SweepTable> {
    let mut alphas = alphas.to_vec();
    alphas.sort_by(f64::total_cmp);
    alphas.dedup();
    let mut sizes = sizes.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    let mut families = families.to_vec();
    families.sort();
    families.dedup();

    let mut rows = Vec::new();
    for &alpha in &alphas {
        let order = FractalOrder::new(alpha)?;
        for &n in &sizes {
            for &family in &families {
                for &convention in conventions {
                    let mut row = SweepRow {
                        alpha,
                        n,
                        signal_family: family.as_str().to_owned(),
                        convention,
                        roundtrip_max_abs: None,
                        roundtrip_rms: None,
                        error: None,
                    };
                    match plans(n, order, convention, cfg) {
                        Ok((fwd, inv)) => {
                            let signal = family.signal(n, seed);
                            let (_, report) = roundtrip(&signal, 1.0, &fwd, &inv)?;
                            row.roundtrip_max_abs = Some(report.max_abs);
                            row.roundtrip_rms = Some(report.rms);
                        }
                        Err(e) => row.error = Some(e.to_string()),
                    }
                    rows.push(row);
                }
            }
        }
    }
    Ok(SweepTable { seed, rows })
}

fn plans(
    n: usize,
    order: FractalOrder,
    convention: KernelConvention,
    cfg: &MLConfig,
) -> Result<(TransformPlan, TransformPlan)> {
    Ok((
        make_plan(n, order, Direction::Forward, convention, cfg)?,
        make_plan(n, order, Direction::Inverse, convention, cfg)?,
    ))
}
