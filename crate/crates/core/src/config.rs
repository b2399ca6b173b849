use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

/// Budgets and I/O settings shared by the command-line tool and the
/// acceptance runner. Read from JSON; every field is optional.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Largest chord count evaluated through the representation oracle.
    pub max_chords_oracle: usize,
    /// Largest graph handled by the searches over vertex orderings.
    pub max_vertices: usize,
    /// Line-delimited JSON file of normal forms, loaded before and saved after a run.
    pub cache_path: Option<PathBuf>,
    pub output: OutputFormat,
}

impl Default for Config {
    fn default() -> Self {
        Config { max_chords_oracle: 5, max_vertices: 8, cache_path: None, output: OutputFormat::Json }
    }
}

impl Config {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let cfg: Config = serde_json::from_str(text).map_err(|e| Error::Parse(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
        Config::from_json_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_chords_oracle == 0 || self.max_vertices == 0 {
            return Err(Error::InvalidInput("budgets must be positive".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_config_keeps_defaults() {
        let cfg = Config::from_json_str(r#"{"max_vertices": 6, "output": "text"}"#).unwrap();
        assert_eq!(cfg.max_vertices, 6);
        assert_eq!(cfg.max_chords_oracle, 5);
        assert_eq!(cfg.output, OutputFormat::Text);
    }

    #[test]
    fn rejects_bad_config() {
        assert!(Config::from_json_str(r#"{"max_vertices": 0}"#).is_err());
        assert!(Config::from_json_str(r#"{"colour": "red"}"#).is_err());
        assert!(Config::from_json_str("[").is_err());
    }
}
