//! `index,re,im` CSV files and their JSON sidecars.

use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};

use dyft_core::{ComplexValue, KernelConvention};

pub const HEADER: [&str; 3] = ["index", "re", "im"];

/// Sidecar of a time-domain signal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignalMeta {
    pub n: usize,
    pub dt: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
}

/// Sidecar of a spectrum written by `forward`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumMeta {
    pub n: usize,
    pub domega: f64,
    pub alpha: f64,
    pub convention: KernelConvention,
    pub dt: f64,
}

pub fn sidecar_path(csv: &Path) -> PathBuf {
    csv.with_extension("json")
}

pub fn read_values(path: &Path) -> anyhow::Result<Vec<ComplexValue>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(file);
    let headers = reader
        .headers()
        .with_context(|| format!("reading header of {}", path.display()))?;
    if headers.iter().ne(HEADER) {
        bail!(
            "{}: expected header `index,re,im`, found `{}`",
            path.display(),
            headers.iter().collect::<Vec<_>>().join(",")
        );
    }
    let mut values = Vec::new();
    for (row, record) in reader.deserialize::<(i64, f64, f64)>().enumerate() {
        let (index, re, im) = record.with_context(|| format!("{}: malformed row {}", path.display(), row + 1))?;
        if index != row as i64 {
            bail!(
                "{}: row {} has index {index}, expected {row} (indices must be 0..N-1, ascending, without gaps or duplicates)",
                path.display(),
                row + 1
            );
        }
        if !(re.is_finite() && im.is_finite()) {
            bail!("{}: non-finite value at index {index}", path.display());
        }
        values.push(ComplexValue::new(re, im));
    }
    if values.is_empty() {
        bail!("{}: no samples", path.display());
    }
    Ok(values)
}

pub fn write_values(path: &Path, values: &[ComplexValue]) -> anyhow::Result<()> {
    let mut writer = csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
    writer.write_record(HEADER)?;
    for (i, v) in values.iter().enumerate() {
        writer.write_record([i.to_string(), format!("{:.16e}", v.re), format!("{:.16e}", v.im)])?;
    }
    writer.flush()?;
    Ok(())
}

pub fn read_meta<T: for<'de> Deserialize<'de>>(csv: &Path) -> anyhow::Result<T> {
    let path = sidecar_path(csv);
    let text = std::fs::read_to_string(&path).with_context(|| format!("reading sidecar {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing sidecar {}", path.display()))
}

pub fn read_optional_meta<T: for<'de> Deserialize<'de>>(csv: &Path) -> anyhow::Result<Option<T>> {
    if sidecar_path(csv).exists() {
        read_meta(csv).map(Some)
    } else {
        Ok(None)
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> anyhow::Result<()> {
    let mut file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    serde_json::to_writer_pretty(&mut file, value)?;
    writeln!(file)?;
    Ok(())
}
