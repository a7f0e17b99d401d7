use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::specfun::KernelConvention;

/// Outcome of one check. `passed` is `None` when the check only records a
/// measurement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: Option<bool>,
    pub max_deviation: f64,
    pub tolerance: f64,
    #[serde(default)]
    pub details: BTreeMap<String, Value>,
}

impl CheckReport {
    pub fn judged(name: impl Into<String>, max_deviation: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            passed: Some(max_deviation <= tolerance),
            max_deviation,
            tolerance,
            details: BTreeMap::new(),
        }
    }

    pub fn recorded(name: impl Into<String>, max_deviation: f64, tolerance: f64) -> Self {
        Self {
            passed: None,
            ..Self::judged(name, max_deviation, tolerance)
        }
    }

    pub fn with_detail(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.details.insert(key.to_owned(), value.into());
        self
    }

    pub fn failed(&self) -> bool {
        self.passed == Some(false)
    }
}

/// Reports of a check suite plus the overall verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub reports: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, reports: Vec<CheckReport>) -> Self {
        let passed = !reports.iter().any(CheckReport::failed);
        Self {
            suite: suite.into(),
            passed,
            reports,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckReport> {
        self.reports.iter().filter(|r| r.failed())
    }
}

/// One round-trip measurement. Residuals are `None` when the combination
/// could not be evaluated; `error` then says why.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub alpha: f64,
    pub n: usize,
    pub signal_family: String,
    pub convention: KernelConvention,
    pub roundtrip_max_abs: Option<f64>,
    pub roundtrip_rms: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub seed: u64,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn row(&self, alpha: f64, n: usize, family: &str, convention: KernelConvention) -> Option<&SweepRow> {
        self.rows
            .iter()
            .find(|r| r.alpha == alpha && r.n == n && r.signal_family == family && r.convention == convention)
    }
}
