use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context};
use serde::Serialize;

use crate::cli::{
    CheckArgs, Cli, Command, Common, ForwardArgs, InverseArgs, MlfArgs, QuadArgs, RoundtripArgs, SweepArgs,
};
use crate::config::RunConfig;
use crate::signal_io::{self, SignalMeta, SpectrumMeta};
use dyft_core::analysis::{residual_sweep, run_suite, SuiteReport, CLASSICAL_ROUNDTRIP_TOLERANCE};
use dyft_core::specfun::mittag_leffler_oracle_decimal;
use dyft_core::{
    forward, inverse, lfi_quadrature, make_plan, mittag_leffler, mittag_leffler_oracle, roundtrip, ComplexValue,
    Direction, FractalOrder, MLConfig, Partition, Spectrum,
};

pub enum Outcome {
    Ok,
    CheckFailed(String),
}

/// 3 for envelope, guard and other numerical limits, 2 for everything else.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    let limit = err
        .chain()
        .filter_map(|e| e.downcast_ref::<dyft_core::Error>())
        .any(dyft_core::Error::is_limit);
    if limit {
        3
    } else {
        2
    }
}

pub fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Forward(a) => cmd_forward(a),
        Command::Inverse(a) => cmd_inverse(a),
        Command::Roundtrip(a) => cmd_roundtrip(a),
        Command::Mlf(a) => cmd_mlf(a),
        Command::Quad(a) => cmd_quad(a),
        Command::Check(a) => cmd_check(a),
        Command::Sweep(a) => cmd_sweep(a),
    }
}

fn settings(common: &Common, sidecar: RunConfig, alpha: Option<f64>) -> anyhow::Result<RunConfig> {
    let file = match &common.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let cfg = file.merged(sidecar).merged(common.flags(alpha));
    cfg.install_threads()?;
    Ok(cfg)
}

fn sidecar_alpha(alpha: Option<f64>) -> RunConfig {
    RunConfig {
        alpha,
        ..Default::default()
    }
}

fn spacing(dt: f64) -> anyhow::Result<f64> {
    if !(dt.is_finite() && dt > 0.0) {
        bail!("--dt must be finite and > 0, got {dt}");
    }
    Ok(dt)
}

fn check_length(meta_n: usize, found: usize, path: &Path) -> anyhow::Result<()> {
    if meta_n != found {
        bail!(
            "{}: sidecar says n = {meta_n} but the file holds {found} rows",
            path.display()
        );
    }
    Ok(())
}

fn cmd_forward(args: ForwardArgs) -> anyhow::Result<Outcome> {
    let values = signal_io::read_values(&args.input)?;
    let meta: Option<SignalMeta> = signal_io::read_optional_meta(&args.input)?;
    if let Some(m) = &meta {
        check_length(m.n, values.len(), &args.input)?;
    }
    let cfg = settings(
        &args.common,
        sidecar_alpha(meta.as_ref().and_then(|m| m.alpha)),
        args.alpha,
    )?;
    let dt = spacing(args.dt.or(meta.map(|m| m.dt)).unwrap_or(1.0))?;
    let order = cfg.order()?;
    let convention = cfg.convention();
    let plan = make_plan(
        values.len(),
        order,
        Direction::Forward,
        convention,
        &cfg.ml_config(MLConfig::transform())?,
    )?;
    let spectrum = forward(&values, dt, &plan)?;

    signal_io::write_values(&args.out, spectrum.coeffs())?;
    signal_io::write_json(
        &signal_io::sidecar_path(&args.out),
        &SpectrumMeta {
            n: spectrum.size(),
            domega: spectrum.domega(),
            alpha: order.value(),
            convention,
            dt,
        },
    )?;
    Ok(Outcome::Ok)
}

fn cmd_inverse(args: InverseArgs) -> anyhow::Result<Outcome> {
    let coeffs = signal_io::read_values(&args.input)?;
    let meta: SpectrumMeta = signal_io::read_meta(&args.input)?;
    check_length(meta.n, coeffs.len(), &args.input)?;
    let cfg = settings(&args.common, RunConfig::default(), None)?;
    if cfg.convention.is_some_and(|c| c != meta.convention) {
        bail!("--convention disagrees with the spectrum sidecar ({})", meta.convention);
    }
    let order = FractalOrder::new(meta.alpha)?;
    let dt = spacing(meta.dt)?;
    let plan = make_plan(
        coeffs.len(),
        order,
        Direction::Inverse,
        meta.convention,
        &cfg.ml_config(MLConfig::transform())?,
    )?;
    let signal = inverse(&Spectrum::new(coeffs, order, meta.convention, dt)?, &plan)?;

    signal_io::write_values(&args.out, &signal)?;
    signal_io::write_json(
        &signal_io::sidecar_path(&args.out),
        &SignalMeta {
            n: signal.len(),
            dt,
            alpha: Some(order.value()),
        },
    )?;
    Ok(Outcome::Ok)
}

#[derive(Debug, Serialize)]
struct RoundtripReport {
    alpha: f64,
    n: usize,
    dt: f64,
    convention: dyft_core::KernelConvention,
    max_abs: f64,
    rms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    signal_family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
}

fn cmd_roundtrip(args: RoundtripArgs) -> anyhow::Result<Outcome> {
    let (values, meta) = match (&args.input, args.generate) {
        (Some(path), _) => {
            let values = signal_io::read_values(path)?;
            let meta: Option<SignalMeta> = signal_io::read_optional_meta(path)?;
            if let Some(m) = &meta {
                check_length(m.n, values.len(), path)?;
            }
            (values, meta)
        }
        (None, Some(family)) => {
            let n = args.n.context("--generate needs --n")?;
            if n == 0 {
                bail!("--n must be positive");
            }
            (family.signal(n, args.seed), None)
        }
        (None, None) => bail!("give an input file or --generate"),
    };
    let cfg = settings(
        &args.common,
        sidecar_alpha(meta.as_ref().and_then(|m| m.alpha)),
        args.alpha,
    )?;
    let dt = spacing(args.dt.or(meta.map(|m| m.dt)).unwrap_or(1.0))?;
    let order = cfg.order()?;
    let convention = cfg.convention();
    let ml = cfg.ml_config(MLConfig::transform())?;
    let fwd = make_plan(values.len(), order, Direction::Forward, convention, &ml)?;
    let inv = make_plan(values.len(), order, Direction::Inverse, convention, &ml)?;
    let (_, residual) = roundtrip(&values, dt, &fwd, &inv)?;

    let report = RoundtripReport {
        alpha: order.value(),
        n: values.len(),
        dt,
        convention,
        max_abs: residual.max_abs,
        rms: residual.rms,
        signal_family: args.generate.map(|f| f.as_str().to_owned()),
        seed: args.generate.map(|_| args.seed),
    };
    match &args.report {
        Some(path) => signal_io::write_json(path, &report)?,
        None => println!("{}", serde_json::to_string_pretty(&report)?),
    }
    if order.is_classical() && residual.max_abs > CLASSICAL_ROUNDTRIP_TOLERANCE {
        return Ok(Outcome::CheckFailed(format!(
            "classical round trip residual {:e} exceeds {CLASSICAL_ROUNDTRIP_TOLERANCE:e}",
            residual.max_abs
        )));
    }
    Ok(Outcome::Ok)
}

fn cmd_mlf(args: MlfArgs) -> anyhow::Result<Outcome> {
    let cfg = settings(&args.common, RunConfig::default(), args.alpha)?;
    let order = cfg.order()?;
    let z = ComplexValue::new(args.re, args.im);
    let value = mittag_leffler(order, z, &cfg.ml_config(MLConfig::default())?)?;
    println!("value   {:.14e} {:.14e}", value.re, value.im);
    if let Some(digits) = args.oracle_digits {
        let (re, im) = mittag_leffler_oracle_decimal(order, z, digits)?;
        let reference = mittag_leffler_oracle(order, z, digits)?;
        let gap = if reference.norm() > 0.0 {
            (value - reference).norm() / reference.norm()
        } else {
            (value - reference).norm()
        };
        println!("oracle  {re} {im}");
        println!("rel_gap {gap:.3e}");
    }
    Ok(Outcome::Ok)
}

fn partition(spec: &str, intervals: usize) -> anyhow::Result<Partition> {
    if let Some(bounds) = spec.strip_prefix("uniform:") {
        let (a, b) = bounds
            .split_once(',')
            .with_context(|| format!("expected uniform:a,b, got {spec:?}"))?;
        let a: f64 = a
            .trim()
            .parse()
            .with_context(|| format!("bad lower bound in {spec:?}"))?;
        let b: f64 = b
            .trim()
            .parse()
            .with_context(|| format!("bad upper bound in {spec:?}"))?;
        return Ok(Partition::uniform(a, b, intervals)?);
    }
    let text = std::fs::read_to_string(spec).with_context(|| format!("reading partition file {spec}"))?;
    let points = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .with_context(|| format!("{spec}: bad partition point {s:?}"))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(Partition::new(points)?)
}

fn cmd_quad(args: QuadArgs) -> anyhow::Result<Outcome> {
    let values = signal_io::read_values(&args.input)?;
    let cfg = settings(&args.common, RunConfig::default(), args.alpha)?;
    let order = cfg.order()?;
    let partition = partition(&args.partition, values.len())?;
    let value = lfi_quadrature(&values, &partition, order)?;
    println!("{:.14e} {:.14e}", value.re, value.im);
    Ok(Outcome::Ok)
}

fn cmd_check(args: CheckArgs) -> anyhow::Result<Outcome> {
    let cfg = settings(&args.common, RunConfig::default(), None)?;
    let reports = run_suite(args.suite, &cfg.ml_config(MLConfig::transform())?, args.seed)?;
    let suite = SuiteReport::new(args.suite.as_str(), reports);
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for r in &suite.reports {
        let verdict = match r.passed {
            Some(true) => "PASS",
            Some(false) => "FAIL",
            None => "INFO",
        };
        writeln!(
            out,
            "{verdict} {:<22} deviation {:.3e} tolerance {:.1e}",
            r.name, r.max_deviation, r.tolerance
        )?;
    }
    if let Some(path) = &args.json {
        signal_io::write_json(path, &suite)?;
    }
    if suite.passed {
        return Ok(Outcome::Ok);
    }
    let failed: Vec<_> = suite.failures().map(|r| r.name.as_str()).collect();
    Ok(Outcome::CheckFailed(failed.join(", ")))
}

fn cmd_sweep(args: SweepArgs) -> anyhow::Result<Outcome> {
    let cfg = settings(&args.common, RunConfig::default(), None)?;
    let table = residual_sweep(
        &args.alphas,
        &args.ns,
        &args.families,
        &args.conventions,
        args.seed,
        &cfg.ml_config(MLConfig::transform())?,
    )?;
    let sink: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?),
        None => Box::new(std::io::stdout().lock()),
    };
    let mut writer = csv::Writer::from_writer(sink);
    for row in &table.rows {
        writer.serialize(row)?;
    }
    writer.flush()?;

    let broken: Vec<String> = table
        .rows
        .iter()
        .filter(|r| r.alpha == 1.0)
        .filter(|r| r.roundtrip_max_abs.is_some_and(|m| m > CLASSICAL_ROUNDTRIP_TOLERANCE))
        .map(|r| format!("N = {} {} {}", r.n, r.signal_family, r.convention))
        .collect();
    if broken.is_empty() {
        Ok(Outcome::Ok)
    } else {
        Ok(Outcome::CheckFailed(format!(
            "classical round trip exceeded tolerance for {}",
            broken.join("; ")
        )))
    }
}
