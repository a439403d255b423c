//! Batch configuration files.
//!
//! ```json
//! {
//!   "output_dir": "certs",
//!   "jobs": [
//!     { "command": "frobenius", "n": 3, "p": 5 },
//!     { "command": "tight", "n": 3, "p": 7, "e": [1, 2], "degree_bound": 40 }
//!   ]
//! }
//! ```
//!
//! `output_dir` is resolved against the directory holding the config file.
//! Job fields are validated per job so that one bad job is rejected without
//! rejecting the file.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use fclosure_core::closure_certifier::{CertifyOptions, DEFAULT_DEGREE_BOUND};

use crate::commands::Job;
use crate::CliError;

#[derive(Clone, Debug, Deserialize)]
pub struct BatchConfig {
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default)]
    pub jobs: Vec<JobSpec>,
}

fn default_output_dir() -> PathBuf {
    PathBuf::from(".")
}

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum Exponents {
    One(u32),
    Many(Vec<u32>),
}

impl Exponents {
    fn to_vec(&self) -> Vec<u32> {
        match self {
            Exponents::One(e) => vec![*e],
            Exponents::Many(es) => es.clone(),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct JobSpec {
    pub command: String,
    pub n: Option<u64>,
    pub p: Option<u64>,
    pub e: Option<Exponents>,
    pub degree_bound: Option<u32>,
    /// For `oracle` jobs: test the tight-closure exponent instead of the
    /// Frobenius one.
    #[serde(default)]
    pub tight: bool,
}

impl JobSpec {
    pub fn to_job(&self) -> Result<Job, CliError> {
        let need = |v: Option<u64>, name: &str| v.ok_or_else(|| CliError::Format(format!("job is missing {name:?}")));
        let exponents = self.e.as_ref().map(Exponents::to_vec).unwrap_or_default();
        let options = CertifyOptions {
            exponents: exponents.clone(),
            degree_bound: self.degree_bound.unwrap_or(DEFAULT_DEGREE_BOUND),
        };
        Ok(match self.command.as_str() {
            "tight" => Job::Tight { n: need(self.n, "n")?, p: need(self.p, "p")?, options },
            "frobenius" => Job::Frobenius { n: need(self.n, "n")?, p: need(self.p, "p")?, options },
            "fpure" => Job::FPure { n: need(self.n, "n")?, p: need(self.p, "p")? },
            "det" => Job::Det { n: self.n, p: self.p, exponents },
            "oracle" => {
                let e = match exponents.as_slice() {
                    [] => 1,
                    [e] => *e,
                    _ => return Err(CliError::Format("oracle jobs take a single e".into())),
                };
                Job::Oracle { n: need(self.n, "n")?, p: need(self.p, "p")?, e, tight: self.tight }
            }
            other => return Err(CliError::Format(format!("unknown command {other:?}"))),
        })
    }
}

/// Reads a config and resolves its output directory.
pub fn load(path: &Path) -> Result<BatchConfig, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut config: BatchConfig =
        serde_json::from_str(&text).map_err(|e| CliError::Format(format!("{}: {e}", path.display())))?;
    if config.output_dir.is_relative() {
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        config.output_dir = base.join(&config.output_dir);
    }
    Ok(config)
}
