//! Experiment configuration: a JSON document whose fields can each be
//! overridden on the command line. Precedence is flag > file > default.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use roller_core::group::{Preset, PresetSpec};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

pub const DEFAULT_STEPS: usize = 10_000;
pub const DEFAULT_PATHS: usize = 1000;
pub const DEFAULT_MONITOR_RADIUS: usize = 4;
pub const DEFAULT_RADIUS: usize = 8;
pub const DEFAULT_LENGTH: usize = 8;
pub const DEFAULT_MAX_CHAIN: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Dot,
}

/// A preset given either as shorthand (`f2xf2`, `raag:graph.json`) or inline.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PresetField {
    Shorthand(String),
    Spec(PresetSpec),
}

/// Every field is optional so that a file may set any subset of them.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<PresetField>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pocset: Option<PathBuf>,
    /// Step distribution as `word → weight`; uniform on generators when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<BTreeMap<String, f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub paths: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monitor_radius: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_chain: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<ExperimentConfig, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("invalid config {}: {e}", path.display())))
    }

    /// Fields set in `other` replace those in `self`.
    pub fn overridden_by(self, other: ExperimentConfig) -> ExperimentConfig {
        ExperimentConfig {
            preset: other.preset.or(self.preset),
            pocset: other.pocset.or(self.pocset),
            mu: other.mu.or(self.mu),
            steps: other.steps.or(self.steps),
            paths: other.paths.or(self.paths),
            seed: other.seed.or(self.seed),
            monitor_radius: other.monitor_radius.or(self.monitor_radius),
            radius: other.radius.or(self.radius),
            window: other.window.or(self.window),
            length: other.length.or(self.length),
            max_chain: other.max_chain.or(self.max_chain),
            out: other.out.or(self.out),
            format: other.format.or(self.format),
        }
    }

    pub fn preset(&self) -> Result<(Preset, PresetSpec), CliError> {
        let spec = match &self.preset {
            None => return Err(CliError::Input("no preset given (use --preset or the config file)".into())),
            Some(PresetField::Shorthand(s)) => PresetSpec::parse_shorthand(s),
            Some(PresetField::Spec(spec)) => Ok(spec.clone()),
        }
        .map_err(|e| CliError::Input(e.to_string()))?;
        let preset = Preset::from_spec(&spec).map_err(|e| CliError::Input(e.to_string()))?;
        Ok((preset, spec))
    }

    pub fn steps(&self) -> usize {
        self.steps.unwrap_or(DEFAULT_STEPS)
    }

    pub fn paths(&self) -> usize {
        self.paths.unwrap_or(DEFAULT_PATHS)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn monitor_radius(&self) -> usize {
        self.monitor_radius.unwrap_or(DEFAULT_MONITOR_RADIUS)
    }

    pub fn radius(&self) -> usize {
        self.radius.unwrap_or(DEFAULT_RADIUS)
    }

    pub fn window(&self) -> usize {
        self.window.unwrap_or_else(|| roller_core::walk::default_window(self.steps()))
    }

    pub fn length(&self) -> usize {
        self.length.unwrap_or(DEFAULT_LENGTH)
    }

    pub fn max_chain(&self) -> usize {
        self.max_chain.unwrap_or(DEFAULT_MAX_CHAIN)
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or(Format::Json)
    }

    /// The configuration with every default written out and the preset
    /// expanded, as stored next to the outputs. Feeding it back through
    /// `--config` reproduces the run.
    pub fn effective(&self, command: Command) -> Result<ExperimentConfig, CliError> {
        let mut c = ExperimentConfig {
            out: self.out.clone(),
            format: Some(self.format()),
            pocset: self.pocset.clone(),
            ..Default::default()
        };
        match command {
            Command::Cubulate | Command::Inspect => {
                c.seed = Some(self.seed());
                if self.preset.is_some() {
                    c.preset = Some(PresetField::Spec(self.preset()?.1));
                    c.radius = Some(self.radius());
                }
            }
            Command::Pingpong => {
                c.preset = Some(PresetField::Spec(self.preset()?.1));
                c.radius = Some(self.radius());
                c.length = Some(self.length());
            }
            Command::Walk | Command::Certify => {
                c.preset = Some(PresetField::Spec(self.preset()?.1));
                c.mu = self.mu.clone();
                c.steps = Some(self.steps());
                c.paths = Some(self.paths());
                c.seed = Some(self.seed());
                c.monitor_radius = Some(self.monitor_radius());
                c.radius = Some(self.radius());
                c.window = Some(self.window());
                c.max_chain = Some(self.max_chain());
            }
        }
        Ok(c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Cubulate,
    Walk,
    Certify,
    Pingpong,
    Inspect,
}

/// SHA-256 over the command, the effective config without output
/// settings, and the contents of any input file it names.
pub fn config_hash(command: Command, effective: &ExperimentConfig, input: Option<&str>) -> String {
    let mut hashed = effective.clone();
    hashed.out = None;
    hashed.format = None;
    hashed.pocset = None;
    let mut h = Sha256::new();
    h.update(serde_json::to_string(&command).expect("serializable"));
    h.update(b"\n");
    h.update(serde_json::to_string(&hashed).expect("serializable"));
    if let Some(text) = input {
        h.update(b"\n");
        h.update(text.as_bytes());
    }
    hex::encode(h.finalize())
}
