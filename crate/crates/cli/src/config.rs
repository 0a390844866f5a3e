//! Run configuration shared by flags and the optional `reproduce` config file.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use signkernel::{Example, SeesawOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Report,
    Csv,
}

/// Keys accepted in a config file. Every key is optional; flags given on the
/// command line take precedence.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<String>,
    pub kernel: Option<String>,
    pub n: Option<usize>,
    pub d: Option<usize>,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
    pub max_iter: Option<usize>,
    pub restarts: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Option<OutputFormat>,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).context("invalid config")?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in {}", path.display()))
    }

    pub fn validate(&self) -> Result<()> {
        for (key, v) in [
            ("n", self.n),
            ("d", self.d),
            ("max_iter", self.max_iter),
            ("restarts", self.restarts),
        ] {
            if v == Some(0) {
                bail!("{key} must be positive");
            }
        }
        if let Some(tol) = self.tol {
            if !(tol > 0.0) || !tol.is_finite() {
                bail!("tol must be a positive finite number, got {tol}");
            }
        }
        if let Some(kernel) = &self.kernel {
            if kernel.trim().is_empty() {
                bail!("kernel must name an example or a matrix path");
            }
        }
        Ok(())
    }
}

/// Parses `1`, `2`, `half-plane` or `circle-band`.
pub fn parse_example(s: &str) -> Result<Example, String> {
    match s.to_ascii_lowercase().replace('_', "-").as_str() {
        "1" | "half-plane" => Ok(Example::HalfPlane),
        "2" | "circle-band" => Ok(Example::CircleBand),
        _ => Err(format!("unknown example '{s}' (expected 1, 2, half-plane or circle-band)")),
    }
}

/// Settings for the `reproduce` suite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Grid size for the see-saw criteria.
    pub n: usize,
    pub restarts: usize,
    pub seesaw: SeesawOptions,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 2024,
            n: 256,
            restarts: 8,
            seesaw: SeesawOptions::default(),
        }
    }
}

impl SuiteConfig {
    /// Fills unset fields from `cfg`. Keys that only make sense for single
    /// commands are rejected.
    pub fn from_run_config(cfg: &RunConfig) -> Result<Self> {
        if let Some(cmd) = &cfg.command {
            if cmd != "reproduce" {
                bail!("config command '{cmd}' cannot be run by reproduce");
            }
        }
        if cfg.kernel.is_some() || cfg.d.is_some() || cfg.format.is_some() {
            bail!("kernel, d and format are fixed by the reproduce suite");
        }
        let mut s = Self::default();
        if let Some(v) = cfg.seed {
            s.seed = v;
        }
        if let Some(v) = cfg.n {
            s.n = v;
        }
        if let Some(v) = cfg.restarts {
            s.restarts = v;
        }
        if let Some(v) = cfg.tol {
            s.seesaw.tol = v;
        }
        if let Some(v) = cfg.max_iter {
            s.seesaw.max_iter = v;
        }
        Ok(s)
    }
}
