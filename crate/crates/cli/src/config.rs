//! Run configuration shared by all commands, and its validation.

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

pub const CACHE_DIR_ENV: &str = "TREE_ASYMPTOTICS_CACHE_DIR";
pub const MIN_DIGITS: u32 = 30;
pub const MIN_TERMS: usize = 50;
/// Largest size accepted by `error-table` and `estimate`.
pub const MAX_EXACT_SIZE: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(format!("unknown format '{other}' (expected json or csv)")),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct ConfigError(pub String);

/// Global settings; command-specific values live in the command arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub digits: u32,
    /// Truncation order `N` of `zeta`.
    pub terms: usize,
    pub format: OutputFormat,
    pub cache_dir: PathBuf,
    pub offline: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            digits: MIN_DIGITS,
            terms: 200,
            format: OutputFormat::Json,
            cache_dir: default_cache_dir(None, None),
            offline: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.digits < MIN_DIGITS {
            return Err(ConfigError(format!("--digits must be at least {MIN_DIGITS}, got {}", self.digits)));
        }
        if self.terms < MIN_TERMS {
            return Err(ConfigError(format!("--terms must be at least {MIN_TERMS}, got {}", self.terms)));
        }
        Ok(())
    }

    /// `N >= 2 K` for a Puiseux order `K`.
    pub fn check_order(&self, order: usize) -> Result<(), ConfigError> {
        if order == 0 {
            return Err(ConfigError("--order must be at least 1".into()));
        }
        if self.terms < 2 * order {
            return Err(ConfigError(format!(
                "--terms {} is too small for order {order} (need at least {})",
                self.terms,
                2 * order
            )));
        }
        Ok(())
    }

    pub fn check_sizes(&self, sizes: &[usize]) -> Result<(), ConfigError> {
        if sizes.is_empty() {
            return Err(ConfigError("no sizes given".into()));
        }
        if let Some(&bad) = sizes.iter().find(|&&s| s == 0 || s > MAX_EXACT_SIZE) {
            return Err(ConfigError(format!("size {bad} is outside 1..={MAX_EXACT_SIZE}")));
        }
        Ok(())
    }
}

/// Cache directory when no flag is given: the environment override, then
/// `$XDG_CACHE_HOME/tree-asymptotics`, then `$HOME/.cache/tree-asymptotics`.
pub fn default_cache_dir(env_override: Option<OsString>, home: Option<OsString>) -> PathBuf {
    if let Some(dir) = env_override.filter(|d| !d.is_empty()) {
        return PathBuf::from(dir);
    }
    if let Some(xdg) = std::env::var_os("XDG_CACHE_HOME").filter(|d| !d.is_empty()) {
        return PathBuf::from(xdg).join("tree-asymptotics");
    }
    match home.or_else(|| std::env::var_os("HOME")) {
        Some(h) => PathBuf::from(h).join(".cache").join("tree-asymptotics"),
        None => PathBuf::from(".tree-asymptotics-cache"),
    }
}

/// Flag, then environment, then default.
pub fn resolve_cache_dir(flag: Option<PathBuf>, env_override: Option<OsString>) -> PathBuf {
    flag.unwrap_or_else(|| default_cache_dir(env_override, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_flag_env_default() {
        let flag = Some(PathBuf::from("/from/flag"));
        let env = Some(OsString::from("/from/env"));
        assert_eq!(resolve_cache_dir(flag, env.clone()), PathBuf::from("/from/flag"));
        assert_eq!(resolve_cache_dir(None, env), PathBuf::from("/from/env"));
        let fallback = resolve_cache_dir(None, None);
        assert!(fallback.ends_with("tree-asymptotics") || fallback.ends_with(".tree-asymptotics-cache"));
    }

    #[test]
    fn empty_env_is_ignored() {
        let dir = default_cache_dir(Some(OsString::new()), Some(OsString::from("/home/x")));
        assert_ne!(dir, PathBuf::from(""));
    }

    #[test]
    fn validation() {
        let ok = RunConfig::default();
        assert!(ok.validate().is_ok());
        assert!(RunConfig { digits: 20, ..ok.clone() }.validate().is_err());
        assert!(RunConfig { terms: 10, ..ok.clone() }.validate().is_err());
        assert!(ok.check_order(18).is_ok());
        assert!(RunConfig { terms: 60, ..ok.clone() }.check_order(40).is_err());
        assert!(ok.check_sizes(&[10, 500]).is_ok());
        assert!(ok.check_sizes(&[0]).is_err());
        assert!(ok.check_sizes(&[MAX_EXACT_SIZE + 1]).is_err());
    }

    #[test]
    fn formats() {
        assert_eq!("CSV".parse::<OutputFormat>().unwrap(), OutputFormat::Csv);
        assert!("xml".parse::<OutputFormat>().is_err());
    }
}
