//! Recomputes round-trip residuals with kernels taken from the
//! multiprecision oracle instead of the production evaluator.
//!
//! Run with `cargo run --release -p dyft-core --example golden_residuals`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use rug::Float;

use dyft_core::analysis::SignalFamily;
use dyft_core::{mittag_leffler_oracle, FractalOrder, KernelConvention};

const DIGITS: u32 = 50;

fn kernel(alpha: f64, n: usize, unit: Complex64) -> Vec<Complex64> {
    let order = FractalOrder::new(alpha).unwrap();
    let mut products: Vec<usize> = (0..n).flat_map(|a| (0..n).map(move |b| a * b)).collect();
    products.sort_unstable();
    products.dedup();
    let values: Vec<Complex64> = products
        .par_iter()
        .map(|&m| {
            let r = (2.0 * PI * m as f64 / n as f64).powf(alpha);
            mittag_leffler_oracle(order, unit * r, DIGITS).unwrap()
        })
        .collect();
    (0..n * n)
        .map(|i| values[products.binary_search(&((i / n) * (i % n))).unwrap()])
        .collect()
}

fn main() {
    let seed = dyft_core::rng::DEFAULT_SEED;
    for alpha in [0.3, 0.5, 0.8] {
        let half = PI * alpha / 2.0;
        let gamma = Float::with_val(128, 1.0 + alpha).gamma().to_f64();
        for n in [4usize, 8, 16] {
            let prefactor = 1.0 / (gamma * (n as f64).powf(alpha));
            let inv = kernel(alpha, n, Complex64::new(half.cos(), half.sin()));
            for convention in KernelConvention::ALL {
                let unit = match convention {
                    KernelConvention::ConjugatePair => Complex64::new(half.cos(), -half.sin()),
                    KernelConvention::NegatedPrincipal => Complex64::new(-half.cos(), -half.sin()),
                };
                let fwd = kernel(alpha, n, unit);
                for family in SignalFamily::ALL {
                    let f = family.signal(n, seed);
                    let spec: Vec<Complex64> = (0..n)
                        .map(|k| (0..n).map(|j| f[j] * fwd[j * n + k]).sum::<Complex64>() * prefactor)
                        .collect();
                    let back: Vec<Complex64> = (0..n).map(|j| (0..n).map(|k| spec[k] * inv[j * n + k]).sum()).collect();
                    let diffs: Vec<f64> = back.iter().zip(&f).map(|(x, y)| (x - y).norm()).collect();
                    let max_abs = diffs.iter().cloned().fold(0.0, f64::max);
                    let rms = (diffs.iter().map(|d| d * d).sum::<f64>() / n as f64).sqrt();
                    println!("    ({alpha:?}, {n}, \"{family}\", \"{convention}\", {max_abs:.10e}, {rms:.10e}),");
                }
            }
        }
    }
}
