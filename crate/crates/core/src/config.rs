//! Run configuration shared by the library entry points and the CLI.

use serde::{Deserialize, Serialize};

/// Prefix for environment overrides of the caps, e.g. `SUPERSAT_PERM_CAP=7`.
pub const ENV_PREFIX: &str = "SUPERSAT_";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Largest n for explicit S_n enumeration.
    pub perm_cap: u32,
    /// Largest n for set families (one machine word per set).
    pub set_cap: u32,
    /// Largest n for the 2^n subset-sum transform.
    pub zeta_cap: u32,
    /// Largest C(n,k) for full family enumeration with s >= 3.
    pub family_cap: u128,
    /// Largest C(n,ℓ) for the nearest-star-union scan when ℓ > 3.
    pub nearest_cap: u128,
    /// Wall-clock budget for exhaustive searches; None means unlimited.
    pub budget_secs: Option<u64>,
    pub workers: Option<usize>,
    pub format: Format,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            perm_cap: crate::permfam::PERM_CAP_DEFAULT,
            set_cap: 64,
            zeta_cap: crate::setfam::ZETA_CAP_DEFAULT,
            family_cap: crate::structcount::FAMILY_CAP_DEFAULT,
            nearest_cap: crate::setfam::NEAREST_CAP_DEFAULT,
            budget_secs: None,
            workers: None,
            format: Format::Plain,
            seed: 20240601,
        }
    }
}

impl RunConfig {
    /// Applies `SUPERSAT_PERM_CAP`, `SUPERSAT_SET_CAP`, `SUPERSAT_ZETA_CAP`,
    /// `SUPERSAT_FAMILY_CAP` and `SUPERSAT_NEAREST_CAP` when set.
    pub fn apply_env(&mut self) -> Result<(), String> {
        fn read<T: std::str::FromStr>(key: &str) -> Result<Option<T>, String> {
            match std::env::var(format!("{ENV_PREFIX}{key}")) {
                Ok(v) => v.trim().parse().map(Some).map_err(|_| format!("{ENV_PREFIX}{key}: bad value {v:?}")),
                Err(_) => Ok(None),
            }
        }
        if let Some(v) = read("PERM_CAP")? {
            self.perm_cap = v;
        }
        if let Some(v) = read("SET_CAP")? {
            self.set_cap = v;
        }
        if let Some(v) = read("ZETA_CAP")? {
            self.zeta_cap = v;
        }
        if let Some(v) = read("FAMILY_CAP")? {
            self.family_cap = v;
        }
        if let Some(v) = read("NEAREST_CAP")? {
            self.nearest_cap = v;
        }
        self.validate()
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.perm_cap == 0 || self.set_cap == 0 || self.zeta_cap == 0 || self.family_cap == 0 {
            return Err("caps must be positive".into());
        }
        if self.set_cap > 64 {
            return Err("set_cap cannot exceed 64".into());
        }
        if self.workers == Some(0) {
            return Err("workers must be positive".into());
        }
        Ok(())
    }

    pub fn deadline(&self) -> Option<std::time::Instant> {
        self.budget_secs.map(|s| std::time::Instant::now() + std::time::Duration::from_secs(s))
    }
}
