//! Run configuration: baked-in defaults, then a JSON file, then flags.

use std::path::Path;

use serde::{Deserialize, Serialize};
use zeta_interp::analysis::{AMP_TOL, DEFAULT_Y0, DEFAULT_Y_MAX};
use zeta_interp::EvalConfig;

use crate::error::{usage, CliError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalysisConfig {
    /// Excluded core radius and first sampling abscissa.
    pub y0: f64,
    pub y_max: f64,
    /// Amplitude threshold of the zero probe, on the scale of `Φ`.
    pub amp_tol: f64,
    /// Exponent of the window norm used by the zero probe.
    pub p: f64,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self { y0: DEFAULT_Y0, y_max: DEFAULT_Y_MAX, amp_tol: AMP_TOL, p: 1.0 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CliConfig {
    pub eval: EvalConfig,
    pub analysis: AnalysisConfig,
}

impl CliConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
        serde_json::from_str(&text).map_err(|source| CliError::BadJson { path: path.into(), source })
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.eval.validate()?;
        let a = &self.analysis;
        if !(a.y0 > 0.0 && a.y_max > a.y0 && a.y_max.is_finite()) {
            return Err(usage(format!("need 0 < y0 < y_max, got y0 = {}, y_max = {}", a.y0, a.y_max)));
        }
        if !(a.amp_tol > 0.0) {
            return Err(usage(format!("amp_tol must be positive, got {}", a.amp_tol)));
        }
        if !(a.p > 0.5 && a.p.is_finite()) {
            return Err(usage(format!("p must exceed 1/2, got {}", a.p)));
        }
        Ok(())
    }
}
