//! Defaults read from a plain `key = value` file.
//!
//! Recognized keys: `max_len`, `exp_bound`, `max_a_len`, `workers`. Lines
//! starting with `#` and blank lines are ignored.

use std::fs;
use std::path::Path;
use std::thread;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    /// Search budget `L` for `distance`.
    pub max_len: usize,
    /// Switches `distance` to the exponent-bounded search.
    pub exp_bound: Option<u32>,
    pub max_a_len: usize,
    pub workers: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_len: 10,
            exp_bound: None,
            max_a_len: 4,
            workers: thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut cfg = Config::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key = value", i + 1))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |e: std::num::ParseIntError| format!("line {}: {key}: {e}", i + 1);
            match key {
                "max_len" => cfg.max_len = value.parse().map_err(bad)?,
                "exp_bound" => cfg.exp_bound = Some(value.parse().map_err(bad)?),
                "max_a_len" => cfg.max_a_len = value.parse().map_err(bad)?,
                "workers" => cfg.workers = value.parse().map_err(bad)?,
                _ => return Err(format!("line {}: unknown key {key:?}", i + 1)),
            }
        }
        if cfg.workers == 0 {
            return Err("workers must be positive".into());
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::parse(&text)
    }
}
