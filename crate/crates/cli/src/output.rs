use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Serialize;

pub const OUT_DIR_ENV: &str = "REALITYSIM_OUT_DIR";
const DEFAULT_OUT_DIR: &str = "realitysim-out";

/// `--out-dir`, else `$REALITYSIM_OUT_DIR`, else `./realitysim-out`; created if missing.
pub fn out_dir(flag: Option<&Path>) -> anyhow::Result<PathBuf> {
    let dir = match flag {
        Some(p) => p.to_path_buf(),
        None => std::env::var_os(OUT_DIR_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR)),
    };
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    Ok(dir)
}

pub fn write_text(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_text(path, &text)
}

/// Everything needed to rerun a command: its arguments, the resolved
/// configuration, the seed and the tool version. The timestamp is informational.
#[derive(Debug, Serialize)]
pub struct RunManifest<C: Serialize> {
    pub command: String,
    pub argv: Vec<String>,
    pub config: C,
    pub seed: Option<u64>,
    pub version: &'static str,
    pub timestamp: String,
}

impl<C: Serialize> RunManifest<C> {
    pub fn new(command: &str, argv: &[String], config: C, seed: Option<u64>) -> Self {
        Self {
            command: command.to_string(),
            argv: argv.to_vec(),
            config,
            seed,
            version: env!("CARGO_PKG_VERSION"),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }

    pub fn write(&self, dir: &Path) -> anyhow::Result<()> {
        write_json(&dir.join("manifest.json"), self)
    }
}
