//! Flat `key = value` run-configuration files mirroring the command-line
//! flags. Flags always win over file values; unknown keys are rejected so
//! typos fail loudly instead of silently falling back to defaults.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

/// Keys accepted in a configuration file: the flag names without `--`.
/// Every subcommand shares one schema; keys a subcommand does not use are
/// ignored, so one file can drive several commands.
const KNOWN_KEYS: &[&str] = &[
    "alpha-re",
    "alpha-im",
    "gain",
    "gain-start",
    "gain-stop",
    "gain-steps",
    "gain-log",
    "dim",
    "tail-tol",
    "out",
];

/// Parsed configuration file: a flat string map checked against the known
/// key set. Values are validated lazily, by the subcommand that uses them.
#[derive(Debug, Default)]
pub struct FileConfig {
    values: BTreeMap<String, String>,
}

impl FileConfig {
    /// Parse `path`. Each non-empty line is `key = value`; blank lines and
    /// lines starting with `#` are skipped.
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config file {}: {e}", path.display()))?;
        let mut values = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(format!(
                    "config line {}: expected `key = value`, got `{raw}`",
                    idx + 1
                ));
            };
            let key = key.trim();
            let value = value.trim();
            if !KNOWN_KEYS.contains(&key) {
                return Err(format!("config line {}: unknown key `{key}`", idx + 1));
            }
            if values.insert(key.to_string(), value.to_string()).is_some() {
                return Err(format!("config line {}: duplicate key `{key}`", idx + 1));
            }
        }
        Ok(Self { values })
    }

    pub fn f64(&self, key: &str) -> Result<Option<f64>, String> {
        self.parsed(key, "a real number")
    }

    pub fn usize(&self, key: &str) -> Result<Option<usize>, String> {
        self.parsed(key, "a nonnegative integer")
    }

    pub fn bool(&self, key: &str) -> Result<Option<bool>, String> {
        self.parsed(key, "true or false")
    }

    pub fn path(&self, key: &str) -> Option<PathBuf> {
        self.values.get(key).map(PathBuf::from)
    }

    fn parsed<T: std::str::FromStr>(&self, key: &str, wanted: &str) -> Result<Option<T>, String> {
        match self.values.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse::<T>()
                .map(Some)
                .map_err(|_| format!("config key `{key}`: expected {wanted}, got `{v}`")),
        }
    }
}
