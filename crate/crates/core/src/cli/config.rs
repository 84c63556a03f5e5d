//! TOML run configuration.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::classify::AnalysisParams;
use crate::shadow::ERROR_RADIUS;
use crate::space::{DissipativeSystem, InvalidConfig, SystemSpec};
use crate::young::{YoungFunction, YoungSpec};

use super::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ShadowParams {
    pub delta: f64,
    pub length: usize,
    pub seeds: Vec<u64>,
}

impl Default for ShadowParams {
    fn default() -> Self {
        ShadowParams { delta: 1e-3, length: 50, seeds: (0..20).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputParams {
    /// Report file; relative paths resolve against `--out`.
    pub json: PathBuf,
    /// Directory for CSV exports; relative paths resolve against `--out`.
    pub csv: PathBuf,
}

impl Default for OutputParams {
    fn default() -> Self {
        OutputParams { json: PathBuf::from("report.json"), csv: PathBuf::from("csv") }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub young: YoungSpec,
    pub system: SystemSpec,
    #[serde(default)]
    pub analysis: AnalysisParams,
    #[serde(default)]
    pub shadow: ShadowParams,
    #[serde(default)]
    pub output: OutputParams,
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig =
            toml::from_str(text).map_err(|e| CliError::Config(InvalidConfig::new("<toml>", e.to_string())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// Build the Young function and the system, checking every cross-field
    /// invariant of the run.
    pub fn build(&self) -> Result<(YoungFunction, DissipativeSystem), CliError> {
        let phi = YoungFunction::from_spec(&self.young)
            .map_err(|e| CliError::Config(InvalidConfig::new("young", e.to_string())))?;
        let sys = DissipativeSystem::new(self.system.clone()).map_err(CliError::Config)?;
        Ok((phi, sys))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |field: &str, msg: String| Err(CliError::Config(InvalidConfig::new(field, msg)));
        let a = &self.analysis;
        if a.n_max < 8 {
            return bad("analysis.n_max", format!("must be at least 8, got {}", a.n_max));
        }
        if !(a.tol > 0.0 && a.tol < 1.0) {
            return bad("analysis.tol", format!("must lie in (0, 1), got {}", a.tol));
        }
        if a.subset_cap == 0 {
            return bad("analysis.subset_cap", "must be positive".into());
        }
        if a.window > self.system.window {
            return bad("analysis.window", format!("{} exceeds system.window = {}", a.window, self.system.window));
        }
        if self.system.atoms > 64 {
            return bad("system.atoms", format!("at most 64 atoms are supported, got {}", self.system.atoms));
        }
        let s = &self.shadow;
        if !(s.delta >= 0.0 && s.delta.is_finite()) {
            return bad("shadow.delta", format!("must be finite and >= 0, got {}", s.delta));
        }
        if s.length == 0 {
            return bad("shadow.length", "must be positive".into());
        }
        if s.seeds.is_empty() {
            return bad("shadow.seeds", "needs at least one seed".into());
        }
        let needed = s.length as i64 + ERROR_RADIUS + 1;
        if needed > self.system.window as i64 {
            return bad("system.window", format!("must be at least shadow.length + {} = {needed}", ERROR_RADIUS + 1));
        }
        self.build().map(|_| ())
    }
}
