//! Experiment configuration: TOML files merged under command-line flags.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::args::Command;

/// The fully merged configuration of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(flatten)]
    pub command: Command,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub emit: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
}

/// Options read from a config file, before command-line overrides.
#[derive(Debug, Clone, Default)]
pub struct ConfigFile {
    pub fields: Map<String, Value>,
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

/// Position of the first line assigning `key`, for errors raised after parsing.
fn key_position(text: &str, key: &str) -> Option<(usize, usize)> {
    text.lines().enumerate().find_map(|(i, l)| {
        let trimmed = l.trim_start();
        let rest = trimmed.strip_prefix(key)?;
        rest.trim_start()
            .starts_with('=')
            .then(|| (i + 1, l.len() - trimmed.len() + 1))
    })
}

impl ConfigFile {
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let table: toml::Table = text.parse().map_err(|e: toml::de::Error| {
            let (line, col) = e.span().map_or((1, 1), |s| line_col(text, s.start));
            anyhow!("{origin}:{line}:{col}: parse error: {}", e.message())
        })?;
        let value = serde_json::to_value(table).context("config values must be plain data")?;
        let Value::Object(fields) = value else {
            bail!("{origin}: config must be a table");
        };
        let cfg = ConfigFile { fields };
        // Surface unknown keys and type errors with their line.
        if cfg.fields.contains_key("command") {
            if let Err(e) = cfg.merge(None) {
                let msg = e.to_string();
                let pos = msg
                    .split('`')
                    .nth(1)
                    .and_then(|key| key_position(text, key))
                    .unwrap_or((1, 1));
                bail!("{origin}:{}:{}: {msg}", pos.0, pos.1);
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config file {}", path.display()))?;
        Self::parse(&text, &path.display().to_string())
    }

    /// Overlays the non-empty options of `cli` (if any) onto the file values.
    pub fn merge(&self, cli: Option<&ExperimentConfig>) -> Result<ExperimentConfig> {
        let mut fields = self.fields.clone();
        if let Some(cli) = cli {
            let Value::Object(over) = serde_json::to_value(cli)? else {
                unreachable!("configs serialise to objects");
            };
            if let (Some(a), Some(b)) = (fields.get("command"), over.get("command")) {
                if a != b {
                    bail!("config file describes command {a} but {b} was requested");
                }
            }
            for (k, v) in over {
                if !v.is_null() {
                    fields.insert(k, v);
                }
            }
        }
        if !fields.contains_key("command") {
            bail!("no command given: the config file needs a `command` key");
        }
        fields.retain(|_, v| !v.is_null());
        serde_json::from_value(Value::Object(fields)).map_err(|e| anyhow!("invalid configuration: {e}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::args::{SumfreeAction, SumfreeArgs};

    #[test]
    fn cli_overrides_file() {
        let file = ConfigFile::parse("command = \"sumfree\"\naction = \"census\"\nn = 20\nworkers = 2\n", "t").unwrap();
        let cli = ExperimentConfig {
            command: Command::Sumfree(SumfreeArgs {
                n: Some(12),
                ..Default::default()
            }),
            emit: None,
            workers: None,
        };
        let merged = file.merge(Some(&cli)).unwrap();
        assert_eq!(merged.workers, Some(2));
        let Command::Sumfree(a) = merged.command else { panic!() };
        assert_eq!((a.action, a.n), (Some(SumfreeAction::Census), Some(12)));
    }

    #[test]
    fn errors_carry_positions() {
        let e = ConfigFile::parse("command = \"sumfree\"\nn = = 3\n", "c.toml").unwrap_err();
        assert!(e.to_string().starts_with("c.toml:2:"), "{e}");
        let e = ConfigFile::parse("command = \"sumfree\"\n\nbogus = 3\n", "c.toml").unwrap_err();
        assert!(e.to_string().starts_with("c.toml:3:1:"), "{e}");
        let file = ConfigFile::parse("command = \"homog\"\n", "c.toml").unwrap();
        let cli = ExperimentConfig {
            command: Command::Sumfree(SumfreeArgs::default()),
            emit: None,
            workers: None,
        };
        assert!(file.merge(Some(&cli)).is_err());
    }
}
