//! Layered parameter resolution and the two-class error model.
//!
//! Parameters flow as flat string maps: preset defaults first, then the
//! config file (or a previously emitted manifest), then command-line
//! flags, later layers overriding earlier ones. Every value a command
//! actually reads is recorded, defaults included, so the emitted manifest
//! contains the complete resolved parameter set and re-running from it
//! reproduces the run exactly.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt;

/// Failures split by exit code: bad invocations exit 2, failures during
/// computation or output exit 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Run(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Run(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Run(msg) => f.write_str(msg),
        }
    }
}

impl From<biphoton::Error> for CliError {
    fn from(e: biphoton::Error) -> Self {
        CliError::Run(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Run(e.to_string())
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub type CliResult<T> = Result<T, CliError>;

/// Maps a parameter-validation failure to a usage error; use at call
/// sites that validate configuration before any computation starts.
pub fn config_error(e: biphoton::Error) -> CliError {
    CliError::Usage(e.to_string())
}

/// Merged view over the parameter layers with typed accessors. Accessors
/// record the string form of every value they resolve (source text when
/// present, rendered default otherwise).
#[derive(Debug)]
pub struct ScenarioConfig {
    values: BTreeMap<String, String>,
    used: RefCell<BTreeMap<String, String>>,
}

impl ScenarioConfig {
    /// Later layers override earlier ones.
    pub fn from_layers(layers: Vec<BTreeMap<String, String>>) -> Self {
        let mut values = BTreeMap::new();
        for layer in layers {
            values.extend(layer);
        }
        Self {
            values,
            used: RefCell::new(BTreeMap::new()),
        }
    }

    fn resolve(&self, key: &str, default: String) -> String {
        let text = self.values.get(key).cloned().unwrap_or(default);
        self.used.borrow_mut().insert(key.to_string(), text.clone());
        text
    }

    /// Records a value directly (for parameters decided outside the map,
    /// like a preset name).
    pub fn note(&self, key: &str, value: impl Into<String>) {
        self.used.borrow_mut().insert(key.to_string(), value.into());
    }

    pub fn str_or(&self, key: &str, default: &str) -> String {
        self.resolve(key, default.to_string())
    }

    pub fn f64_or(&self, key: &str, default: f64) -> CliResult<f64> {
        let text = self.resolve(key, format_f64(default));
        text.parse::<f64>()
            .map_err(|_| usage(format!("parameter '{key}': '{text}' is not a number")))
    }

    pub fn usize_or(&self, key: &str, default: usize) -> CliResult<usize> {
        let text = self.resolve(key, default.to_string());
        text.parse::<usize>()
            .map_err(|_| usage(format!("parameter '{key}': '{text}' is not a count")))
    }

    pub fn u64_or(&self, key: &str, default: u64) -> CliResult<u64> {
        let text = self.resolve(key, default.to_string());
        text.parse::<u64>()
            .map_err(|_| usage(format!("parameter '{key}': '{text}' is not an integer")))
    }

    /// Comma-separated float list.
    pub fn f64_list_or(&self, key: &str, default: &[f64]) -> CliResult<Vec<f64>> {
        let fallback = default
            .iter()
            .map(|&v| format_f64(v))
            .collect::<Vec<_>>()
            .join(",");
        let text = self.resolve(key, fallback);
        text.split(',')
            .map(|field| {
                field
                    .trim()
                    .parse::<f64>()
                    .map_err(|_| usage(format!("parameter '{key}': '{field}' is not a number")))
            })
            .collect()
    }

    /// Comma-separated `a:b` pair list.
    pub fn pair_list_or(&self, key: &str, default: &[(f64, f64)]) -> CliResult<Vec<(f64, f64)>> {
        let fallback = default
            .iter()
            .map(|&(a, b)| format!("{}:{}", format_f64(a), format_f64(b)))
            .collect::<Vec<_>>()
            .join(",");
        let text = self.resolve(key, fallback);
        text.split(',')
            .map(|field| {
                let bad = || usage(format!("parameter '{key}': '{field}' is not 'a:b'"));
                let (a, b) = field.trim().split_once(':').ok_or_else(bad)?;
                Ok((
                    a.trim().parse::<f64>().map_err(|_| bad())?,
                    b.trim().parse::<f64>().map_err(|_| bad())?,
                ))
            })
            .collect()
    }

    /// Everything resolved so far, for the manifest.
    pub fn used_parameters(&self) -> BTreeMap<String, String> {
        self.used.borrow().clone()
    }
}

/// Shortest representation that parses back to the same f64.
fn format_f64(v: f64) -> String {
    format!("{v}")
}
