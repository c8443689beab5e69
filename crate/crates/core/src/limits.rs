//! Search budgets.
//!
//! Every unbounded search in the library (prime scans, prime-power
//! enumeration, brute-force group computations) is guarded by a cap taken
//! from [`Limits`]. Defaults can be overridden from `key=value` config text
//! or the `SB_*` environment variables.

use std::collections::HashMap;

use crate::error::{Error, Result};

pub const ENV_PRIME_SCAN_CAP: &str = "SB_PRIME_SCAN_CAP";
pub const ENV_GROUP_SIZE_CAP: &str = "SB_GROUP_SIZE_CAP";
pub const ENV_PP_VALUE_CAP: &str = "SB_PP_VALUE_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Bound on linear prime scans: the largest prime examined by the
    /// Zsigmondy minimum search, and the number of terms examined by
    /// arithmetic-progression and Kerr scans.
    pub prime_scan_cap: u64,
    /// Largest group handled by conjugacy-class and subgroup closure.
    pub group_size_cap: usize,
    /// Largest prime-power value visited by the k(p)/l(p) searches.
    pub prime_power_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            prime_scan_cap: 10_000_000,
            group_size_cap: 50_000,
            prime_power_cap: 1_000_000_000,
        }
    }
}

impl Limits {
    /// Applies `key=value` lines. Keys are the environment variable names
    /// or their lowercase short forms (`prime_scan_cap`, ...). Blank lines
    /// and `#` comments are ignored.
    pub fn apply_config(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::domain(format!("config line {}: expected key=value", lineno + 1))
            })?;
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    /// Applies overrides from an environment snapshot.
    pub fn apply_env(&mut self, env: &HashMap<String, String>) -> Result<()> {
        for key in [ENV_PRIME_SCAN_CAP, ENV_GROUP_SIZE_CAP, ENV_PP_VALUE_CAP] {
            if let Some(value) = env.get(key) {
                self.set(key, value)?;
            }
        }
        Ok(())
    }

    /// Defaults, then the config text (if any), then the process environment.
    pub fn load(config: Option<&str>) -> Result<Self> {
        let mut limits = Limits::default();
        if let Some(text) = config {
            limits.apply_config(text)?;
        }
        let env: HashMap<String, String> = std::env::vars().collect();
        limits.apply_env(&env)?;
        Ok(limits)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let parsed: u64 = value
            .replace('_', "")
            .parse()
            .map_err(|_| Error::domain(format!("{key}: not a non-negative integer: {value:?}")))?;
        if parsed == 0 {
            return Err(Error::domain(format!("{key}: cap must be positive")));
        }
        match key {
            ENV_PRIME_SCAN_CAP | "prime_scan_cap" => self.prime_scan_cap = parsed,
            ENV_GROUP_SIZE_CAP | "group_size_cap" => {
                self.group_size_cap = usize::try_from(parsed)
                    .map_err(|_| Error::domain(format!("{key}: value too large")))?
            }
            ENV_PP_VALUE_CAP | "prime_power_cap" => self.prime_power_cap = parsed,
            other => return Err(Error::domain(format!("unknown config key {other:?}"))),
        }
        Ok(())
    }
}
