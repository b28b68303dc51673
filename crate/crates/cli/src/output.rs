//! CSV files and the run manifest.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const MANIFEST_NAME: &str = "manifest.json";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    /// Every input, defaults resolved, keyed by flag name.
    pub parameters: BTreeMap<String, String>,
    pub versions: String,
    pub outputs: Vec<String>,
    pub timestamp: String,
}

impl RunManifest {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("--replay: cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("--replay: {} is not a run manifest: {e}", path.display())))
    }

    /// Flags that rebuild this run.
    pub fn to_args(&self) -> Vec<String> {
        let mut args = vec![self.command.clone()];
        for (key, value) in &self.parameters {
            match value.as_str() {
                "true" => args.push(format!("--{key}")),
                "false" => {}
                _ => {
                    args.push(format!("--{key}"));
                    args.push(value.clone());
                }
            }
        }
        args
    }
}

/// Output directory that records what it writes.
pub struct OutputDir {
    root: PathBuf,
    written: Vec<String>,
}

impl OutputDir {
    pub fn create(root: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(root).map_err(|e| CliError::io(format!("creating {}", root.display()), e))?;
        Ok(Self {
            root: root.to_path_buf(),
            written: Vec::new(),
        })
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.root.join(name)
    }

    pub fn write_csv<R, I>(&mut self, name: &str, header: &[&str], rows: I) -> Result<(), CliError>
    where
        I: IntoIterator<Item = R>,
        R: IntoIterator,
        R::Item: AsRef<[u8]>,
    {
        let path = self.path(name);
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_path(&path)?;
        writer.write_record(header)?;
        for row in rows {
            writer.write_record(row)?;
        }
        writer.flush().map_err(|e| CliError::io(format!("writing {}", path.display()), e))?;
        self.written.push(name.to_string());
        Ok(())
    }

    pub fn write_text(&mut self, name: &str, text: &str) -> Result<(), CliError> {
        let path = self.path(name);
        fs::write(&path, text).map_err(|e| CliError::io(format!("writing {}", path.display()), e))?;
        self.written.push(name.to_string());
        Ok(())
    }

    pub fn finish(self, command: &str, parameters: BTreeMap<String, String>) -> Result<RunManifest, CliError> {
        let manifest = RunManifest {
            command: command.to_string(),
            parameters,
            versions: format!("spinorize {}", env!("CARGO_PKG_VERSION")),
            outputs: self.written,
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        };
        let mut text = serde_json::to_string_pretty(&manifest)?;
        text.push('\n');
        let path = self.root.join(MANIFEST_NAME);
        fs::write(&path, text).map_err(|e| CliError::io(format!("writing {}", path.display()), e))?;
        Ok(manifest)
    }
}
