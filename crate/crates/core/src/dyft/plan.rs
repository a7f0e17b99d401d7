use std::collections::BTreeSet;
use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::kernel::GridKernel;
use crate::specfun::{ComplexValue, Direction, FractalOrder, KernelConvention, MLConfig};

/// Largest transform sizes admitted per band of fractal order.
///
/// Kernel cost and the cancellation in each Mittag-Leffler sum grow like
/// `e^{2π(N-1)²/N}`, so smaller orders, whose series are longer for the
/// same phase, get smaller caps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Envelope {
    /// Cap for α ≥ 0.8.
    pub high: usize,
    /// Cap for 0.5 ≤ α < 0.8.
    pub mid: usize,
    /// Cap for α < 0.5.
    pub low: usize,
}

impl Envelope {
    pub const DESK: Envelope = Envelope {
        high: 64,
        mid: 32,
        low: 16,
    };

    pub fn max_size(&self, order: FractalOrder) -> usize {
        let alpha = order.value();
        if alpha >= 0.8 {
            self.high
        } else if alpha >= 0.5 {
            self.mid
        } else {
            self.low
        }
    }

    pub fn check(&self, size: usize, order: FractalOrder) -> Result<()> {
        let max_size = self.max_size(order);
        if size > max_size {
            return Err(Error::EnvelopeExceeded {
                size,
                alpha: order.value(),
                max_size,
            });
        }
        Ok(())
    }
}

impl Default for Envelope {
    fn default() -> Self {
        Self::DESK
    }
}

/// Precomputed N×N kernel table for one (N, α, direction, convention).
///
/// `kernel[n][k] = fractal_kernel(α, direction, 2π·nk/N)`. Immutable once
/// built and safe to share across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformPlan {
    size: usize,
    order: FractalOrder,
    direction: Direction,
    convention: KernelConvention,
    kernel: Vec<ComplexValue>,
}

impl TransformPlan {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn order(&self) -> FractalOrder {
        self.order
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn convention(&self) -> KernelConvention {
        self.convention
    }

    #[inline]
    pub fn entry(&self, n: usize, k: usize) -> ComplexValue {
        self.kernel[n * self.size + k]
    }

    pub fn row(&self, n: usize) -> &[ComplexValue] {
        &self.kernel[n * self.size..(n + 1) * self.size]
    }

    /// Row-major kernel table.
    pub fn kernel(&self) -> &[ComplexValue] {
        &self.kernel
    }
}

/// Builds a plan inside the default desk-scale [`Envelope`].
pub fn make_plan(
    size: usize,
    order: FractalOrder,
    direction: Direction,
    convention: KernelConvention,
    cfg: &MLConfig,
) -> Result<TransformPlan> {
    make_plan_within(size, order, direction, convention, cfg, &Envelope::DESK)
}

pub fn make_plan_within(
    size: usize,
    order: FractalOrder,
    direction: Direction,
    convention: KernelConvention,
    cfg: &MLConfig,
    envelope: &Envelope,
) -> Result<TransformPlan> {
    if size == 0 {
        return Err(Error::InvalidInput("transform size must be >= 1".into()));
    }
    envelope.check(size, order)?;

    // θ depends on n·k only. At α = 1 the kernel is exp(∓iθ), so the
    // product is reduced modulo N in exact integer arithmetic first.
    let n64 = size as u64;
    let phase_index = |n: usize, k: usize| -> u64 {
        let m = n as u64 * k as u64;
        if order.is_classical() {
            m % n64
        } else {
            m
        }
    };

    let mut worst = (0usize, 0usize, 0u64);
    let mut distinct = BTreeSet::new();
    for n in 0..size {
        for k in n..size {
            let m = phase_index(n, k);
            if m > worst.2 {
                worst = (n, k, m);
            }
            distinct.insert(m);
        }
    }
    let radius = |m: u64| {
        let theta = 2.0 * PI * m as f64 / size as f64;
        if order.is_classical() {
            theta
        } else {
            theta.powf(order.value())
        }
    };
    let max_radius = radius(worst.2);
    if max_radius > cfg.magnitude_guard() {
        return Err(Error::PlanGuardExceeded {
            n: worst.0,
            k: worst.1,
            magnitude: max_radius,
            guard: cfg.magnitude_guard(),
        });
    }

    let grid = GridKernel::new(order, direction, convention, cfg, max_radius);
    let distinct: Vec<u64> = distinct.into_iter().collect();
    let values: Vec<ComplexValue> = distinct.par_iter().map(|&m| grid.eval(m, n64)).collect::<Result<_>>()?;

    let mut kernel = vec![ComplexValue::new(0.0, 0.0); size * size];
    for n in 0..size {
        for k in 0..size {
            let m = phase_index(n, k);
            // `distinct` is sorted, so the lookup is a binary search.
            let idx = distinct.binary_search(&m).expect("every phase index was tabulated");
            kernel[n * size + k] = values[idx];
        }
    }

    Ok(TransformPlan {
        size,
        order,
        direction,
        convention,
        kernel,
    })
}
