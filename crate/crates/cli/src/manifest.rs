//! JSON run manifests: everything needed to replay a sweep bit for bit.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use qldpc::bp::Scaling;
use qldpc::osd::{OsdStrategy, DEFAULT_LAMBDA};
use qldpc::sim::{DecoderConfig, RunOptions};

use crate::error::CliError;

/// A code family with its parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CodeSpec {
    /// Product of the open repetition code of length `n`.
    Surface { n: usize },
    /// Product of the ring code of length `n`.
    Toric { n: usize },
    /// Product of a random `(col_weight, row_weight)` code of length `n`.
    RandomHgp {
        n: usize,
        col_weight: usize,
        row_weight: usize,
        seed: u64,
    },
    /// Product of a parent augmented with chain segments of length `g`.
    /// Without `parent` the all-ones 2 × 3 parent is used.
    SemiTopological {
        g: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        parent: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DecoderKind {
    #[serde(rename = "bp")]
    Bp,
    #[serde(rename = "bp-osd0")]
    BpOsd0,
    #[serde(rename = "bp-osd-cs")]
    BpOsdCs,
    #[serde(rename = "bp-osd-e")]
    BpOsdE,
}

impl DecoderKind {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        serde_json::from_value(serde_json::Value::String(s.to_string())).map_err(|_| {
            CliError::Usage(format!(
                "unknown decoder '{s}' (expected bp, bp-osd0, bp-osd-cs or bp-osd-e)"
            ))
        })
    }
}

fn default_lambda() -> usize {
    DEFAULT_LAMBDA
}

fn default_true() -> bool {
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecoderSpec {
    pub kind: DecoderKind,
    #[serde(default = "default_lambda")]
    pub lambda: usize,
    #[serde(default)]
    pub max_iter: Option<usize>,
    #[serde(default = "default_true")]
    pub scaling: bool,
}

impl DecoderSpec {
    pub fn new(kind: DecoderKind) -> Self {
        Self {
            kind,
            lambda: DEFAULT_LAMBDA,
            max_iter: None,
            scaling: true,
        }
    }

    pub fn to_config(&self) -> DecoderConfig {
        let lambda = self.lambda;
        let osd = match self.kind {
            DecoderKind::Bp => None,
            DecoderKind::BpOsd0 => Some(OsdStrategy::Osd0),
            DecoderKind::BpOsdCs => Some(OsdStrategy::CombinationSweep { lambda }),
            DecoderKind::BpOsdE => Some(OsdStrategy::Exhaustive { lambda }),
        };
        DecoderConfig {
            osd,
            max_iterations: self.max_iter,
            scaling: if self.scaling {
                Scaling::IterationScaled
            } else {
                Scaling::None
            },
        }
    }
}

fn default_workers() -> usize {
    1
}

fn default_out_dir() -> PathBuf {
    PathBuf::from(".")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunManifest {
    pub command: String,
    pub codes: Vec<CodeSpec>,
    pub decoders: Vec<DecoderSpec>,
    pub p_grid: Vec<f64>,
    pub trials: u64,
    /// Stop a point early after this many failures (checked every `batch_size` trials).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_failures: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub batch_size: Option<u64>,
    pub seed: u64,
    /// Does not affect results.
    #[serde(default = "default_workers")]
    pub workers: usize,
    /// Output directory, relative to the manifest file.
    #[serde(default = "default_out_dir")]
    pub out_dir: PathBuf,
}

pub const RESULTS_FILE: &str = "results.csv";
pub const MANIFEST_FILE: &str = "manifest.json";
pub const THRESHOLD_FILE: &str = "threshold.txt";

impl RunManifest {
    pub fn validate(&self) -> Result<(), CliError> {
        let fail = |m: &str| Err(CliError::Manifest(m.to_string()));
        if self.command != "sweep" {
            return fail("command must be \"sweep\"");
        }
        if self.codes.is_empty() {
            return fail("at least one code is required");
        }
        if self.decoders.is_empty() {
            return fail("at least one decoder is required");
        }
        if self.p_grid.is_empty() || self.p_grid.windows(2).any(|w| w[0] >= w[1]) {
            return fail("p_grid must be non-empty and strictly increasing");
        }
        if self.p_grid.iter().any(|p| !(0.0..=0.5).contains(p)) {
            return fail("p_grid values must lie in [0, 0.5]");
        }
        if self.trials == 0 || self.workers == 0 || self.target_failures == Some(0) || self.batch_size == Some(0) {
            return fail("trials, workers, target_failures and batch_size must be at least 1");
        }
        Ok(())
    }

    pub fn run_options(&self) -> RunOptions {
        let base = match self.target_failures {
            Some(f) => RunOptions::target_failures(f, self.trials, self.seed),
            None => RunOptions::trials(self.trials, self.seed),
        };
        let base = base.with_workers(self.workers);
        match self.batch_size {
            Some(b) => base.with_batch_size(b),
            None => base,
        }
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let manifest: RunManifest =
            serde_json::from_str(&text).map_err(|e| CliError::Manifest(format!("{}: {e}", path.display())))?;
        manifest.validate()?;
        Ok(manifest)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serialises");
        s.push('\n');
        s
    }
}
