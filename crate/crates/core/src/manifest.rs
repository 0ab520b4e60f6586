use std::path::Path;

use chrono::{DateTime, SecondsFormat, Utc};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    /// Path relative to the output directory.
    pub path: String,
    pub bytes: u64,
    pub sha256: String,
}

impl FileDigest {
    pub fn of(dir: &Path, name: &str) -> Result<Self> {
        let path = dir.join(name);
        let data = std::fs::read(&path).map_err(|e| Error::io(&path, e))?;
        Ok(Self {
            path: name.to_string(),
            bytes: data.len() as u64,
            sha256: hex::encode(Sha256::digest(&data)),
        })
    }
}

/// Provenance record written next to every run's outputs. Timestamps live
/// only here so the data files stay byte-identical across reruns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub tool_version: String,
    pub subcommand: String,
    pub config_sha256: String,
    pub seed: u64,
    pub started_at: String,
    pub finished_at: String,
    pub files: Vec<FileDigest>,
}

impl RunManifest {
    pub fn new(subcommand: &str, config_sha256: String, seed: u64, started: DateTime<Utc>) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME").to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            subcommand: subcommand.to_string(),
            config_sha256,
            seed,
            started_at: started.to_rfc3339_opts(SecondsFormat::Millis, true),
            finished_at: String::new(),
            files: Vec::new(),
        }
    }

    /// Hashes the named files in `dir` and stamps the finish time.
    pub fn finish(&mut self, dir: &Path, names: &[String]) -> Result<()> {
        self.files = names.iter().map(|n| FileDigest::of(dir, n)).collect::<Result<_>>()?;
        self.finished_at = Utc::now().to_rfc3339_opts(SecondsFormat::Millis, true);
        Ok(())
    }

    /// True when every listed file still matches its recorded digest.
    pub fn verify(&self, dir: &Path) -> Result<bool> {
        for f in &self.files {
            if FileDigest::of(dir, &f.path)? != *f {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
