use std::fmt;
use std::path::Path;
use std::str::FromStr;

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};

use dyft_core::{FractalOrder, KernelConvention, MLConfig};

/// Worker-thread setting: a fixed count or rayon's default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Threads {
    #[default]
    Auto,
    Count(usize),
}

impl FromStr for Threads {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "auto" {
            return Ok(Threads::Auto);
        }
        match s.parse::<usize>() {
            Ok(0) | Err(_) => Err(format!("threads must be a positive integer or \"auto\", got {s:?}")),
            Ok(n) => Ok(Threads::Count(n)),
        }
    }
}

impl fmt::Display for Threads {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threads::Auto => f.write_str("auto"),
            Threads::Count(n) => write!(f, "{n}"),
        }
    }
}

impl Serialize for Threads {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Threads::Auto => s.serialize_str("auto"),
            Threads::Count(n) => s.serialize_u64(*n as u64),
        }
    }
}

impl<'de> Deserialize<'de> for Threads {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Count(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Count(0) => Err(serde::de::Error::custom("threads must be positive")),
            Raw::Count(n) => Ok(Threads::Count(n as usize)),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Contents of a `--config` file. Every field is optional; explicit flags
/// win over values read here.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub alpha: Option<f64>,
    pub convention: Option<KernelConvention>,
    pub rel_tol: Option<f64>,
    pub max_terms: Option<usize>,
    pub magnitude_guard: Option<f64>,
    pub threads: Option<Threads>,
}

impl RunConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        let cfg: RunConfig =
            serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))?;
        if let Some(alpha) = cfg.alpha {
            FractalOrder::new(alpha).with_context(|| format!("config {}", path.display()))?;
        }
        Ok(cfg)
    }

    /// Layers `over` on top of `self`.
    pub fn merged(self, over: RunConfig) -> RunConfig {
        RunConfig {
            alpha: over.alpha.or(self.alpha),
            convention: over.convention.or(self.convention),
            rel_tol: over.rel_tol.or(self.rel_tol),
            max_terms: over.max_terms.or(self.max_terms),
            magnitude_guard: over.magnitude_guard.or(self.magnitude_guard),
            threads: over.threads.or(self.threads),
        }
    }

    pub fn order(&self) -> anyhow::Result<FractalOrder> {
        match self.alpha {
            Some(a) => Ok(FractalOrder::new(a)?),
            None => bail!("--alpha is required (flag, sidecar or config)"),
        }
    }

    pub fn convention(&self) -> KernelConvention {
        self.convention.unwrap_or_default()
    }

    /// Series settings on top of `base`, which supplies the default guard.
    pub fn ml_config(&self, base: MLConfig) -> anyhow::Result<MLConfig> {
        Ok(MLConfig::new(
            self.rel_tol.unwrap_or(base.rel_tol()),
            self.max_terms.unwrap_or(base.max_terms()),
            self.magnitude_guard.unwrap_or(base.magnitude_guard()),
        )?)
    }

    pub fn install_threads(&self) -> anyhow::Result<()> {
        if let Some(Threads::Count(n)) = self.threads {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .context("configuring worker threads")?;
        }
        Ok(())
    }
}
