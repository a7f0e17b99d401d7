use std::f64::consts::PI;

use num_complex::Complex64;

use dyft_core::analysis::{residual_sweep, SignalFamily};
use dyft_core::rng::{random_signal, seeded, DEFAULT_SEED};
use dyft_core::{
    approximate_spectrum, build_discrete_approximation, forward, make_plan, roundtrip, Direction, Error, Extension,
    FractalOrder, KernelConvention, MLConfig, SampledSignal, TransformPlan,
};

fn plans(n: usize, alpha: f64, convention: KernelConvention) -> (TransformPlan, TransformPlan) {
    let cfg = MLConfig::transform();
    let order = FractalOrder::new(alpha).unwrap();
    (
        make_plan(n, order, Direction::Forward, convention, &cfg).unwrap(),
        make_plan(n, order, Direction::Inverse, convention, &cfg).unwrap(),
    )
}

fn naive_dft(f: &[Complex64]) -> Vec<Complex64> {
    let n = f.len();
    (0..n)
        .map(|k| {
            f.iter()
                .enumerate()
                .map(|(j, v)| v * Complex64::from_polar(1.0, -2.0 * PI * ((j * k) % n) as f64 / n as f64))
                .sum::<Complex64>()
                / n as f64
        })
        .collect()
}

#[test]
fn classical_forward_is_the_normalized_dft() {
    let mut rng = seeded(5);
    for n in 2..=16 {
        let (fwd, _) = plans(n, 1.0, KernelConvention::ConjugatePair);
        for (j, k) in (0..n).flat_map(|j| (0..n).map(move |k| (j, k))) {
            let want = Complex64::from_polar(1.0, -2.0 * PI * ((j * k) % n) as f64 / n as f64);
            assert!((fwd.entry(j, k) - want).norm() <= 1e-12);
        }
        for _ in 0..10 {
            let f = random_signal(&mut rng, n);
            let got = forward(&f, 1.0, &fwd).unwrap();
            for (a, b) in got.coeffs().iter().zip(naive_dft(&f)) {
                assert!((a - b).norm() <= 1e-10);
            }
        }
    }
}

#[test]
fn classical_roundtrip_is_the_identity_up_to_64() {
    let mut rng = seeded(6);
    for n in [1, 2, 3, 7, 16, 31, 32, 64] {
        for convention in KernelConvention::ALL {
            let (fwd, inv) = plans(n, 1.0, convention);
            let f = random_signal(&mut rng, n);
            let (_, r) = roundtrip(&f, 0.25, &fwd, &inv).unwrap();
            assert!(r.max_abs <= 1e-9, "N = {n}: {}", r.max_abs);
        }
    }
}

#[test]
fn spectrum_matches_rescaled_transform() {
    let cfg = MLConfig::transform();
    let mut rng = seeded(7);
    for alpha in [0.3, 0.5, 0.8, 1.0] {
        for n in [4, 8, 16] {
            for convention in KernelConvention::ALL {
                let (fwd, _) = plans(n, alpha, convention);
                let dt = 0.37;
                let f = random_signal(&mut rng, n);
                let spec = forward(&f, dt, &fwd).unwrap();
                let approx = build_discrete_approximation(
                    &SampledSignal::new(f, dt).unwrap(),
                    FractalOrder::new(alpha).unwrap(),
                    Extension::Periodic,
                );
                let t_alpha = (n as f64 * dt).powf(alpha);
                for k in 0..n {
                    let got = approximate_spectrum(&approx, k as f64 * spec.domega(), convention, &cfg).unwrap();
                    let want = spec.coeffs()[k] * t_alpha;
                    assert!(
                        (got - want).norm() <= 1e-10 * want.norm(),
                        "α = {alpha}, N = {n}, k = {k}: {got} vs {want}"
                    );
                }
            }
        }
    }
}

#[test]
fn half_order_impulse_residual_is_frozen() {
    // Oracle-route value; the n = 0 output equals 2/Γ(3/2) − 1 = 4/√π − 1.
    let (fwd, inv) = plans(4, 0.5, KernelConvention::ConjugatePair);
    let f = SignalFamily::Impulse.signal(4, DEFAULT_SEED);
    let (_, r) = roundtrip(&f, 1.0, &fwd, &inv).unwrap();
    assert!((r.max_abs - 1.256_758_334_2).abs() <= 1e-6 * 1.256_758_334_2);
    assert!((r.max_abs - (4.0 / PI.sqrt() - 1.0)).abs() <= 1e-12);
    assert!((r.rms - 1.027_818_774_1).abs() <= 1e-6 * 1.027_818_774_1);
}

#[test]
fn fractional_inversion_is_not_exact() {
    let table = residual_sweep(
        &[0.3, 0.5, 0.8],
        &[4, 8, 16],
        &SignalFamily::ALL,
        &KernelConvention::ALL,
        DEFAULT_SEED,
        &MLConfig::transform(),
    )
    .unwrap();
    assert_eq!(table.rows.len(), 54);
    for row in &table.rows {
        assert!(row.roundtrip_max_abs.unwrap() > 0.1, "{row:?}");
    }
}

#[test]
fn plan_limits_are_reported() {
    let cfg = MLConfig::transform();
    let order = FractalOrder::new(0.3).unwrap();
    let err = make_plan(64, order, Direction::Forward, KernelConvention::ConjugatePair, &cfg).unwrap_err();
    assert!(matches!(err, Error::EnvelopeExceeded { .. }) && err.is_limit());
    let err = make_plan(
        16,
        FractalOrder::new(0.8).unwrap(),
        Direction::Forward,
        KernelConvention::ConjugatePair,
        &MLConfig::default(),
    )
    .unwrap_err();
    assert!(matches!(err, Error::PlanGuardExceeded { .. }));
}

#[test]
fn plans_are_deterministic_across_pools() {
    let build = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| plans(16, 0.5, KernelConvention::NegatedPrincipal).0.kernel().to_vec())
    };
    assert_eq!(build(1), build(4));
}
