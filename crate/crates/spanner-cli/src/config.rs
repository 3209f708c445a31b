//! Experiment configuration: a key=value config file merged with command
//! line overrides (flags win).

use spanner_core::instance::{Model, Params};
use std::path::{Path, PathBuf};

#[derive(Clone, Debug)]
pub enum Mode {
    Build,
    Verify,
    Lonely,
    Sweep,
    Rgg,
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "build" => Ok(Mode::Build),
            "verify" => Ok(Mode::Verify),
            "lonely" => Ok(Mode::Lonely),
            "sweep" => Ok(Mode::Sweep),
            "rgg" => Ok(Mode::Rgg),
            other => Err(format!(
                "unknown mode `{other}` (expected build|verify|lonely|sweep|rgg)"
            )),
        }
    }
}

/// Everything a run needs, after config-file and flag merging.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub n: usize,
    pub p: f64,
    pub epsilon: f64,
    pub theta: f64,
    pub m_const: f64,
    pub k_const: f64,
    pub seed: u64,
    /// Number of consecutive seeds to run, starting at `seed`.
    pub seeds: usize,
    /// Geometric-graph radius (rgg mode).
    pub radius: Option<f64>,
    pub out: PathBuf,
    /// Sweep grids; empty outside sweep mode.
    pub grid_n: Vec<usize>,
    pub grid_p: Vec<f64>,
    pub grid_epsilon: Vec<f64>,
    /// Monte Carlo samples for the lonely expectation oracle (lonely mode).
    pub integral_samples: Option<usize>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            n: 400,
            p: 0.3,
            epsilon: 0.25,
            theta: 0.5,
            m_const: 2.0,
            k_const: 20.0,
            seed: 0,
            seeds: 1,
            radius: None,
            out: PathBuf::from("."),
            grid_n: Vec::new(),
            grid_p: Vec::new(),
            grid_epsilon: Vec::new(),
            integral_samples: None,
        }
    }
}

impl ExperimentConfig {
    pub fn params(&self, model: Model, seed: u64) -> Params {
        Params {
            n: self.n,
            p: self.p,
            epsilon: self.epsilon,
            theta: self.theta,
            m_const: self.m_const,
            k_const: self.k_const,
            seed,
            model,
        }
    }

    pub fn validate(&self, mode: &Mode) -> Result<(), String> {
        if self.seeds < 1 {
            return Err("seeds: must be >= 1".into());
        }
        if let Mode::Sweep = mode {
            if self.grid_n.is_empty() && self.grid_p.is_empty() && self.grid_epsilon.is_empty() {
                return Err("grid: sweep mode needs at least one of grid_n/grid_p/grid_epsilon".into());
            }
        }
        if let Mode::Rgg = mode {
            if self.radius.is_none() {
                return Err("radius: rgg mode requires a radius".into());
            }
        }
        Ok(())
    }

    /// Apply one `key=value` assignment from the config file.
    fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, String> {
            value.parse().map_err(|_| format!("{key}: invalid value `{value}`"))
        }
        fn list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>, String> {
            value.split(',').map(|v| num(key, v.trim())).collect()
        }
        match key {
            "n" => self.n = num(key, value)?,
            "p" => self.p = num(key, value)?,
            "epsilon" => self.epsilon = num(key, value)?,
            "theta" => self.theta = num(key, value)?,
            "M" => self.m_const = num(key, value)?,
            "K" => self.k_const = num(key, value)?,
            "seed" => self.seed = num(key, value)?,
            "seeds" => self.seeds = num(key, value)?,
            "radius" => self.radius = Some(num(key, value)?),
            "out" => self.out = PathBuf::from(value),
            "grid_n" => self.grid_n = list(key, value)?,
            "grid_p" => self.grid_p = list(key, value)?,
            "grid_epsilon" => self.grid_epsilon = list(key, value)?,
            "integral_samples" => self.integral_samples = Some(num(key, value)?),
            other => return Err(format!("unknown config key `{other}`")),
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        let mut cfg = ExperimentConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| ConfigError::Usage(format!(
                    "{}:{}: expected `key = value`",
                    path.display(),
                    idx + 1
                )))?;
            cfg.set(key.trim(), value.trim())
                .map_err(|msg| ConfigError::Usage(format!("{}:{}: {msg}", path.display(), idx + 1)))?;
        }
        Ok(cfg)
    }
}

#[derive(Debug)]
pub enum ConfigError {
    Usage(String),
    Io { path: String, source: std::io::Error },
}
