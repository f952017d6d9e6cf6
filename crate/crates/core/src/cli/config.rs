//! Run configuration: defaults, file loading, flag overrides.
//!
//! The configuration file is flat `key = value` text.  Blank lines and
//! lines starting with `#` or `;` are ignored, as are `[section]` headers,
//! so the files survive common INI editors.  Keys mirror the field names
//! below; unknown keys are rejected rather than ignored, so a typo cannot
//! silently run with defaults.  Command-line flags override file values;
//! environment variables are never consulted — a run is reproducible from
//! the command line and the file alone.

use super::parse::parse_rational;
use crate::poly::{rat, Rational};
use num::Zero;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Jet order for the series computations; `None` means the per-input
    /// default of twice the degree plus four.
    pub jet_order: Option<u32>,
    /// Dyadic exponent of the smallest frequency in decay fits.
    pub lambda_min: u32,
    /// Dyadic exponent of the largest frequency.
    pub lambda_max: u32,
    /// Directions per axis in the worst-case scan over `[-4, 4]^2`.
    pub s_grid_resolution: u32,
    /// Panel cap per oscillatory integral.
    pub panel_budget: u64,
    /// Acceptance band around predicted decay exponents.
    pub tolerance_gamma: f64,
    /// Constant bounding the exterior region in the root-jet
    /// decomposition.
    pub region_epsilon: Rational,
    /// Constant bounding the horn region.
    pub region_cap: Rational,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            jet_order: None,
            lambda_min: 6,
            lambda_max: 12,
            s_grid_resolution: 41,
            panel_budget: 1_000_000,
            tolerance_gamma: 0.06,
            region_epsilon: rat(1, 10),
            region_cap: rat(10, 1),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("config line {line}: {message}")]
    Invalid { line: usize, message: String },
    #[error("config: {0}")]
    Inconsistent(String),
}

impl RunConfig {
    /// Applies `key = value` lines on top of the current values.
    pub fn apply_file(&mut self, text: &str) -> Result<(), ConfigError> {
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let t = raw.trim();
            if t.is_empty()
                || t.starts_with('#')
                || t.starts_with(';')
                || (t.starts_with('[') && t.ends_with(']'))
            {
                continue;
            }
            let (key, value) = t
                .split_once('=')
                .ok_or_else(|| ConfigError::Invalid {
                    line,
                    message: format!("expected `key = value`, got `{t}`"),
                })?;
            self.set(key.trim(), value.trim())
                .map_err(|message| ConfigError::Invalid { line, message })?;
        }
        self.validate()
    }

    /// Reads and applies a configuration file.
    pub fn apply_path(&mut self, path: &std::path::Path) -> Result<(), ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        self.apply_file(&text)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        fn int<T: std::str::FromStr>(value: &str) -> Result<T, String> {
            value
                .parse()
                .map_err(|_| format!("`{value}` is not a valid integer"))
        }
        match key {
            "jet_order" => self.jet_order = Some(int(value)?),
            "lambda_min" => self.lambda_min = int(value)?,
            "lambda_max" => self.lambda_max = int(value)?,
            "s_grid_resolution" => self.s_grid_resolution = int(value)?,
            "panel_budget" => self.panel_budget = int(value)?,
            "tolerance_gamma" => {
                self.tolerance_gamma = value
                    .parse()
                    .map_err(|_| format!("`{value}` is not a valid number"))?;
            }
            "region_epsilon" => {
                self.region_epsilon =
                    parse_rational(value).map_err(|e| e.to_string())?;
            }
            "region_cap" => {
                self.region_cap = parse_rational(value).map_err(|e| e.to_string())?;
            }
            _ => return Err(format!("unknown key `{key}`")),
        }
        Ok(())
    }

    /// Cross-field invariants.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let fail = |m: &str| Err(ConfigError::Inconsistent(m.into()));
        if self.lambda_min >= self.lambda_max {
            return fail("lambda_min must be strictly below lambda_max");
        }
        if self.s_grid_resolution == 0 {
            return fail("s_grid_resolution must be positive");
        }
        if self.panel_budget == 0 {
            return fail("panel_budget must be positive");
        }
        if !(self.tolerance_gamma > 0.0) {
            return fail("tolerance_gamma must be positive");
        }
        if self.region_epsilon <= Rational::zero() || self.region_cap <= Rational::zero() {
            return fail("region constants must be positive");
        }
        if self.jet_order == Some(0) {
            return fail("jet_order must be positive");
        }
        Ok(())
    }
}
