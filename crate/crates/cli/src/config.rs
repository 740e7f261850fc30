//! Optional `key=value` defaults file. Keys are long flag names without the
//! leading dashes; `#` starts a comment.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use anyhow::{anyhow, Context, Result};

const KEYS: &[&str] = &[
    "decimal",
    "rho-max",
    "threads",
    "orientations",
    "node-budget",
    "time-budget",
    "no-cover-pruning",
    "no-angle-pruning",
    "qmax",
    "denmax",
    "amax",
];

#[derive(Debug, Default)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Config::parse(&text).with_context(|| format!("in {}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Config> {
        let mut values = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("line {}: expected key=value", i + 1))?;
            let k = k.trim();
            if !KEYS.contains(&k) {
                return Err(anyhow!("line {}: unknown key `{}`", i + 1, k));
            }
            values.insert(k.to_string(), v.trim().to_string());
        }
        Ok(Config { values })
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        self.values
            .get(key)
            .map(|v| v.parse::<T>().map_err(|e| anyhow!("config {}={}: {}", key, v, e)))
            .transpose()
    }

    pub fn flag(&self, key: &str) -> Result<bool> {
        Ok(self.get::<bool>(key)?.unwrap_or(false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_rejects() {
        let c = Config::parse("threads = 2\n# comment\ndecimal=true\n").unwrap();
        assert_eq!(c.get::<usize>("threads").unwrap(), Some(2));
        assert!(c.flag("decimal").unwrap());
        assert!(!c.flag("no-cover-pruning").unwrap());
        assert!(Config::parse("bogus=1").is_err());
        assert!(Config::parse("threads").is_err());
        assert!(Config::parse("threads=x").unwrap().get::<usize>("threads").is_err());
    }
}
