mod cubulate;
mod inspect;
mod pingpong;
mod walk;

pub use cubulate::cubulate;
pub use inspect::inspect;
pub use pingpong::pingpong;
pub use walk::walk;

use roller_core::group::{GroupError, HalfSpace, Preset};
use roller_core::pocset::{PocsetSpec, ValidationReport};
use roller_core::{validate_pocset, Pocset};

use crate::config::{config_hash, Command, ExperimentConfig};
use crate::output::Run;
use crate::CliError;

/// `a@b.c:+` is the `Plus` side of the `a`-wall through the edge at `b.c`.
pub fn half_label(p: &Preset, h: &HalfSpace) -> String {
    let r = p.factor(h.wall.factor);
    format!(
        "{}@{}:{}",
        r.names()[h.wall.generator],
        r.format(&h.wall.coset),
        h.sign.as_char()
    )
}

pub fn group_error(e: GroupError) -> CliError {
    match e {
        GroupError::TooLarge { .. } => CliError::Exhausted(e.to_string()),
        other => CliError::Input(other.to_string()),
    }
}

/// Reads and validates the pocset named in the config; returns its text for hashing.
pub fn load_pocset(cfg: &ExperimentConfig) -> Result<(Pocset, ValidationReport, String), CliError> {
    let path = cfg
        .pocset
        .as_ref()
        .ok_or_else(|| CliError::Input("no pocset given (use --pocset or the config file)".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let spec =
        PocsetSpec::from_json(&text).map_err(|e| CliError::Input(format!("invalid pocset {}: {e}", path.display())))?;
    let (p, report) = validate_pocset(&spec).map_err(|e| CliError::Input(e.to_string()))?;
    Ok((p, report, text))
}

pub fn start(command: Command, cfg: &ExperimentConfig, input: Option<&str>) -> Result<Run, CliError> {
    let config = cfg.effective(command)?;
    let hash = config_hash(command, &config, input);
    Ok(Run { command, config, hash })
}
