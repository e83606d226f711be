//! Environment configuration shared by the service and the CLI.

use std::path::PathBuf;

use thiserror::Error;

pub const STORE_DIR: &str = "RHYTHM_STORE_DIR";
pub const ASR_URL: &str = "RHYTHM_ASR_URL";
pub const STRESS_ADAPTER_URL: &str = "RHYTHM_STRESS_ADAPTER_URL";
pub const TAU: &str = "RHYTHM_TAU";
pub const FUZZY: &str = "RHYTHM_FUZZY";
pub const BIND: &str = "RHYTHM_BIND";

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("{key}={value:?}: {reason}")]
    Invalid {
        key: &'static str,
        value: String,
        reason: &'static str,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub store_dir: PathBuf,
    pub asr_url: Option<String>,
    pub stress_adapter_url: Option<String>,
    pub tau: f64,
    pub fuzzy: f64,
    pub bind: String,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            store_dir: PathBuf::from("rhythm-store"),
            asr_url: None,
            stress_adapter_url: None,
            tau: 18.0,
            fuzzy: 0.62,
            bind: "127.0.0.1:8080".to_string(),
        }
    }
}

impl Config {
    pub fn from_env() -> Result<Self, ConfigError> {
        Self::from_lookup(|k| std::env::var(k).ok())
    }

    pub fn from_lookup(lookup: impl Fn(&str) -> Option<String>) -> Result<Self, ConfigError> {
        let get = |k: &str| lookup(k).map(|v| v.trim().to_string()).filter(|v| !v.is_empty());
        let mut cfg = Config::default();
        if let Some(dir) = get(STORE_DIR) {
            cfg.store_dir = PathBuf::from(dir);
        }
        cfg.asr_url = get(ASR_URL);
        cfg.stress_adapter_url = get(STRESS_ADAPTER_URL);
        if let Some(v) = get(TAU) {
            cfg.tau = parse_positive(TAU, &v)?;
        }
        if let Some(v) = get(FUZZY) {
            let f = parse_positive(FUZZY, &v)?;
            if f > 1.0 {
                return Err(ConfigError::Invalid {
                    key: FUZZY,
                    value: v,
                    reason: "must not exceed 1",
                });
            }
            cfg.fuzzy = f;
        }
        if let Some(v) = get(BIND) {
            cfg.bind = v;
        }
        Ok(cfg)
    }
}

fn parse_positive(key: &'static str, value: &str) -> Result<f64, ConfigError> {
    match value.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(ConfigError::Invalid {
            key,
            value: value.to_string(),
            reason: "expected a positive number",
        }),
    }
}
