//! Flat `key=value` config files and environment overrides.
//!
//! Precedence, highest first: command-line flag, environment variable
//! (`TPCN_CAP`, `TPCN_OUT_DIR`), config file, built-in default.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};

pub const ENV_CAP: &str = "TPCN_CAP";
pub const ENV_OUT_DIR: &str = "TPCN_OUT_DIR";

pub const KNOWN_KEYS: &[&str] = &[
    "number",
    "a",
    "poly",
    "length",
    "format",
    "out",
    "out_dir",
    "cap",
    "seed",
    "m",
    "metric",
    "positions",
    "seq",
    "map",
    "base",
    "experiment",
    "file",
    "packed_length",
];

#[derive(Debug, Default, Clone)]
pub struct Settings {
    values: BTreeMap<String, String>,
}

impl Settings {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let mut values = BTreeMap::new();
        if let Some(p) = path {
            let text = std::fs::read_to_string(p)
                .with_context(|| format!("reading config file {}", p.display()))?;
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let Some((k, v)) = line.split_once('=') else {
                    bail!("{}:{}: expected key=value", p.display(), lineno + 1);
                };
                let k = k.trim().replace('-', "_");
                if !KNOWN_KEYS.contains(&k.as_str()) {
                    bail!("{}:{}: unknown key {k:?}", p.display(), lineno + 1);
                }
                values.insert(k, v.trim().to_string());
            }
        }
        if let Ok(v) = std::env::var(ENV_CAP) {
            values.insert("cap".into(), v);
        }
        if let Ok(v) = std::env::var(ENV_OUT_DIR) {
            values.insert("out_dir".into(), v);
        }
        Ok(Settings { values })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// Flag value if given, else the configured one.
    pub fn pick(&self, flag: Option<String>, key: &str) -> Option<String> {
        flag.or_else(|| self.get(key).map(str::to_string))
    }

    pub fn pick_u64(&self, flag: Option<String>, key: &str) -> Result<Option<u64>> {
        self.pick(flag, key)
            .map(|s| parse_count(&s).with_context(|| format!("invalid value for {key}")))
            .transpose()
    }
}

/// Parses `12345`, `1_000_000` or `1e7` as a non-negative integer.
pub fn parse_count(s: &str) -> Result<u64> {
    let t = s.trim().replace('_', "");
    if let Ok(v) = t.parse::<u64>() {
        return Ok(v);
    }
    if let Some((mant, exp)) = t.split_once(['e', 'E']) {
        let exp: u32 = exp
            .parse()
            .with_context(|| format!("bad exponent in {s:?}"))?;
        let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
        if exp as usize >= frac.len() {
            let digits = format!("{int}{frac}{}", "0".repeat(exp as usize - frac.len()));
            if let Ok(v) = digits.parse::<u64>() {
                return Ok(v);
            }
        }
    }
    bail!("expected a non-negative integer such as 1000000 or 1e6, got {s:?}")
}
