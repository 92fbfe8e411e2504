//! TOML configuration. Every key is optional; command-line flags override it.
//!
//! ```toml
//! [guards]
//! max_n_unrestricted = 11   # S_n with no patterns
//! max_n_restricted = 14     # S_n(Π) with Π nonempty
//! max_n_qsym = 8            # quasisymmetric sums
//! max_order = 40            # series truncation order
//!
//! [series]
//! order = 12
//!
//! [runtime]
//! threads = 0               # 0 lets rayon choose
//! precision = "exact"       # the only accepted value
//! ```

use std::path::Path;

use bdes_core::perm::Guards;
use serde::Deserialize;

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub guards: Guards,
    pub series: SeriesConfig,
    pub runtime: RuntimeConfig,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SeriesConfig {
    pub order: usize,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig { order: bdes_core::genfun::DEFAULT_ORDER }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RuntimeConfig {
    pub threads: usize,
    pub precision: String,
}

impl Default for RuntimeConfig {
    fn default() -> Self {
        RuntimeConfig {
            threads: 0,
            precision: "exact".into(),
        }
    }
}

impl Config {
    pub fn load(path: &Path) -> Result<Config, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let cfg: Config = toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.runtime.precision != "exact" {
            return Err(format!(
                "precision {:?} rejected: all arithmetic is exact",
                self.runtime.precision
            ));
        }
        let g = &self.guards;
        let limits = [
            ("max_n_unrestricted", g.max_n_unrestricted),
            ("max_n_restricted", g.max_n_restricted),
            ("max_n_qsym", g.max_n_qsym),
            ("max_order", g.max_order),
        ];
        if let Some((k, _)) = limits.iter().find(|(_, v)| *v == 0) {
            return Err(format!("guard {k} must be positive"));
        }
        Ok(())
    }
}
