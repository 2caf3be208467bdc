//! On-disk policy artifacts.
//!
//! A policy file is a single JSON document: format version, the solver
//! route with its convergence metadata, the model parameters, the policy
//! itself (tagged by kind), and optionally the converged value table.
//! Writing is byte-stable under a read-write cycle, so artifacts diff
//! cleanly and tests can pin them. Reading distinguishes unparseable
//! input (a usage problem, exit 2) from parseable but inconsistent
//! content (a corrupt artifact, exit 1).

use std::fmt;
use std::fs;
use std::path::Path;

use aos_core::params::ModelParams;
use aos_core::policy::Policy;
use aos_core::solver::ValueTable;
use aos_core::space::StateSpace;
use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Version written to and required of every artifact.
pub const FORMAT_VERSION: u32 = 1;

/// Solver route, as selected on the command line and recorded in files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Discounted value iteration with full minimizations.
    Plain,
    /// Discounted value iteration with threshold-seeded scans; same
    /// fixed point as `plain`, fewer comparisons.
    Structured,
    /// Damped relative value iteration for the long-run average cost.
    Relative,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Plain => "plain",
            Method::Structured => "structured",
            Method::Relative => "relative",
        })
    }
}

/// One solved policy with enough metadata to reproduce and check it.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolicyFile {
    pub version: u32,
    pub method: Method,
    pub params: ModelParams,
    /// Backups performed by the producing solve.
    pub iterations: usize,
    /// Final sup-norm residual (discounted routes) or span (relative).
    pub residual: f64,
    /// Long-run average cost; relative solves only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gain: Option<f64>,
    pub policy: Policy,
    /// Converged values; written under `solve --with-values` and needed
    /// for the full `verify` suite.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<ValueTable>,
}

impl PolicyFile {
    /// Canonical serialization; a read-write cycle reproduces it byte
    /// for byte.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self)
            .expect("policy files hold only plain finite data");
        text.push('\n');
        text
    }

    pub fn save(&self, path: &Path) -> Result<(), CliError> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(|e| {
                CliError::Failure(format!("cannot create {}: {e}", dir.display()))
            })?;
        }
        fs::write(path, self.to_json())
            .map_err(|e| CliError::Failure(format!("cannot write {}: {e}", path.display())))
    }

    /// Reads and validates an artifact. Unreadable or unparseable input
    /// is a usage error; well-formed JSON with inconsistent content is
    /// a corrupt artifact.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        let file: PolicyFile = serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        file.validate()
            .map_err(|e| CliError::Failure(format!("{}: {e}", path.display())))?;
        Ok(file)
    }

    /// Content consistency: supported version, valid parameters, and
    /// agreement between the header and every embedded table.
    pub fn validate(&self) -> Result<(), String> {
        if self.version != FORMAT_VERSION {
            return Err(format!(
                "format version {} not supported (this build reads {FORMAT_VERSION})",
                self.version
            ));
        }
        self.params
            .validate()
            .map_err(|e| format!("invalid parameters: {e}"))?;
        if !self.residual.is_finite() || self.residual < 0.0 {
            return Err("residual must be finite and nonnegative".into());
        }
        if let Some(gain) = self.gain {
            if !gain.is_finite() || gain < 0.0 {
                return Err("gain must be finite and nonnegative".into());
            }
        }
        let (b, d_max) = (self.params.b, self.params.d_max);
        match &self.policy {
            Policy::Threshold(table) => {
                if table.params != self.params {
                    return Err("threshold table was solved for different parameters".into());
                }
                let expected: usize = (1..b).map(|l| (d_max - (b - l) + 1) as usize).sum();
                let mut seen = 0usize;
                for (d, l, tau) in table.entries() {
                    if tau > b {
                        return Err(format!("tau(d={d}, l={l}) = {tau} exceeds b = {b}"));
                    }
                    seen += 1;
                }
                if seen != expected {
                    return Err(format!(
                        "threshold grid has {seen} entries, expected {expected}"
                    ));
                }
                for l in 1..b {
                    for d in (b - l)..=d_max {
                        if table.tau(d, l).is_none() {
                            return Err(format!(
                                "threshold grid does not cover block (d={d}, l={l})"
                            ));
                        }
                    }
                }
            }
            Policy::AoiBaseline(table) => {
                if table.params != self.params {
                    return Err("baseline table was solved for different parameters".into());
                }
                if !table.gain.is_finite() || table.gain < 0.0 {
                    return Err("baseline gain must be finite and nonnegative".into());
                }
                for l in 0..b {
                    let min_age = if l == 0 {
                        u64::from(b)
                    } else {
                        2 * u64::from(b) - u64::from(l)
                    };
                    let covered = u32::try_from(min_age)
                        .ok()
                        .and_then(|age| table.switches(age, l))
                        .is_some()
                        && table.switches(table.delta_max, l).is_some();
                    if !covered {
                        return Err(format!("baseline table does not cover level {l}"));
                    }
                }
            }
            Policy::AlwaysSkip | Policy::AlwaysSwitch => {}
        }
        if let Some(values) = &self.values {
            if values.params != self.params {
                return Err("value table was solved for different parameters".into());
            }
            let expected = StateSpace::new(self.params).len();
            if values.values.len() != expected {
                return Err(format!(
                    "value table has {} entries, expected {expected}",
                    values.values.len()
                ));
            }
            if values.values.iter().any(|v| !v.is_finite()) {
                return Err("value table contains non-finite entries".into());
            }
        }
        Ok(())
    }
}
