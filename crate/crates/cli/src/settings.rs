//! Flat `key = value` run settings: config file first, flags on top.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{CliError, Result};

/// Every key a config file or flag may set.
pub const KEYS: &[&str] = &[
    "model",
    "spin",
    "coupling",
    "seed",
    "seed-file",
    "inner",
    "energy",
    "window",
    "max-n",
    "breakdown-tol",
    "t-max",
    "points",
    "fit-start",
    "fit-end",
    "t-fit-start",
    "t-fit-end",
    "emin",
    "emax",
    "cmin",
    "cmax",
    "degree-cap",
    "output",
    "format",
    "gnuplot",
    // sweep only
    "command",
    "spins",
    "couplings",
    "energies",
    "out-dir",
];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    values: BTreeMap<String, String>,
}

impl Settings {
    pub fn parse(text: &str) -> Result<Self> {
        let mut s = Settings::default();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Config(format!("line {}: expected `key = value`, got `{line}`", k + 1)));
            };
            s.set(key.trim(), value.trim())?;
        }
        Ok(s)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path.display(), e))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        if !KEYS.contains(&key) {
            return Err(CliError::Config(format!("unknown key `{key}`")));
        }
        self.values.insert(key.to_string(), value.to_string());
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn remove(&mut self, key: &str) -> Option<String> {
        self.values.remove(key)
    }

    /// `other` wins on conflicts.
    pub fn overlay(&mut self, other: &Settings) {
        for (k, v) in &other.values {
            self.values.insert(k.clone(), v.clone());
        }
    }
}

/// Typed access to settings that records every resolved value, defaults
/// included, so the echo is enough to repeat the run.
pub struct Resolver<'a> {
    settings: &'a Settings,
    used: RefCell<Vec<(String, String)>>,
}

impl<'a> Resolver<'a> {
    pub fn new(settings: &'a Settings) -> Self {
        Self {
            settings,
            used: RefCell::new(Vec::new()),
        }
    }

    fn record(&self, key: &str, value: String) {
        let mut used = self.used.borrow_mut();
        if let Some(slot) = used.iter_mut().find(|(k, _)| k == key) {
            slot.1 = value;
        } else {
            used.push((key.to_string(), value));
        }
    }

    pub fn string(&self, key: &str, default: &str) -> String {
        let v = self.settings.get(key).unwrap_or(default).to_string();
        self.record(key, v.clone());
        v
    }

    pub fn optional_string(&self, key: &str) -> Option<String> {
        let v = self.settings.get(key)?.to_string();
        self.record(key, v.clone());
        Some(v)
    }

    fn parsed<T: std::str::FromStr + ToString>(&self, key: &str, default: Option<T>) -> Result<T> {
        let value = match self.settings.get(key) {
            Some(raw) => raw
                .parse::<T>()
                .map_err(|_| CliError::Config(format!("`{key}` has invalid value `{raw}`")))?,
            None => default.ok_or_else(|| CliError::Config(format!("`{key}` is required")))?,
        };
        self.record(key, value.to_string());
        Ok(value)
    }

    pub fn f64(&self, key: &str, default: Option<f64>) -> Result<f64> {
        let v: f64 = self.parsed(key, default)?;
        if !v.is_finite() {
            return Err(CliError::Config(format!("`{key}` must be finite")));
        }
        Ok(v)
    }

    pub fn usize(&self, key: &str, default: Option<usize>) -> Result<usize> {
        self.parsed(key, default)
    }

    pub fn f64_list(&self, key: &str) -> Result<Option<Vec<f64>>> {
        let Some(raw) = self.settings.get(key) else {
            return Ok(None);
        };
        let list = raw
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| CliError::Config(format!("`{key}` has invalid entry `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.record(key, raw.to_string());
        Ok(Some(list))
    }

    pub fn echo(&self) -> Vec<(String, String)> {
        self.used.borrow().clone()
    }
}
