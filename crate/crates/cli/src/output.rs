//! Artifacts: every file carries the tool version and the config hash.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Command, ExperimentConfig, Format};
use crate::CliError;

pub const TOOL: &str = "roller";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub struct Artifact {
    pub name: String,
    pub format: Format,
    pub body: String,
}

pub struct Run {
    pub command: Command,
    pub config: ExperimentConfig,
    pub hash: String,
}

impl Run {
    fn stamp(&self) -> String {
        format!("{TOOL} {VERSION} config {}", self.hash)
    }

    /// A JSON artifact: `body` must serialize to an object, which is
    /// prefixed with the provenance fields.
    pub fn json(&self, name: &str, body: &impl Serialize) -> Artifact {
        let mut doc = json!({
            "tool": TOOL,
            "version": VERSION,
            "config_hash": self.hash,
            "command": self.command,
        });
        match serde_json::to_value(body).expect("serializable") {
            Value::Object(fields) => doc.as_object_mut().unwrap().extend(fields),
            other => {
                doc["body"] = other;
            }
        }
        Artifact {
            name: name.to_string(),
            format: Format::Json,
            body: serde_json::to_string_pretty(&doc).expect("serializable") + "\n",
        }
    }

    pub fn csv<R: Serialize>(&self, name: &str, rows: &[R], header: &[String]) -> Artifact {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
        w.write_record(header).expect("in-memory write");
        for r in rows {
            w.serialize(r).expect("in-memory write");
        }
        let body = String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8");
        Artifact {
            name: name.to_string(),
            format: Format::Csv,
            body: format!("# {}\n{body}", self.stamp()),
        }
    }

    pub fn dot(&self, name: &str, body: &str) -> Artifact {
        Artifact {
            name: name.to_string(),
            format: Format::Dot,
            body: format!("// {}\n{body}", self.stamp()),
        }
    }

    /// The effective config, written next to the outputs for replay.
    pub fn config_artifact(&self) -> Artifact {
        let mut c = self.config.clone();
        c.out = None;
        Artifact {
            name: "config.json".into(),
            format: Format::Json,
            body: serde_json::to_string_pretty(&c).expect("serializable") + "\n",
        }
    }

    /// With `--out`, writes every artifact into that directory. Otherwise
    /// prints the first artifact in the requested format to stdout.
    pub fn emit(&self, mut artifacts: Vec<Artifact>) -> Result<(), CliError> {
        match &self.config.out {
            Some(dir) => {
                artifacts.push(self.config_artifact());
                fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
                for a in &artifacts {
                    let path = dir.join(&a.name);
                    fs::write(&path, &a.body).map_err(|e| io_error(&path, e))?;
                }
                Ok(())
            }
            None => {
                let format = self.config.format.unwrap_or(Format::Json);
                let a = artifacts.iter().find(|a| a.format == format).ok_or_else(|| {
                    CliError::Input(format!("{:?} output is not available for this command", format).to_lowercase())
                })?;
                std::io::stdout()
                    .write_all(a.body.as_bytes())
                    .map_err(|e| CliError::Failed(e.to_string()))
            }
        }
    }
}

fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError::Input(format!("cannot write {}: {e}", path.display()))
}
