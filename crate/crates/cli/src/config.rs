//! Run configuration files.
//!
//! A config is a JSON object holding the scenario (array size, shifts,
//! spacing, rates) and optional command parameters. Unknown keys are
//! rejected. Command-line flags override the matching keys.

use std::path::{Path, PathBuf};

use braggscat_core::analysis::comb_config;
use braggscat_core::numerics::linspace;
use braggscat_core::ArrayConfig;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ShiftPattern {
    /// Shifts `(0, δ, 2δ, …)`.
    EqualDifference { delta: f64 },
    /// A single atom (default the first) shifted by `δ`.
    Single {
        delta: f64,
        #[serde(default)]
        atom: usize,
    },
}

/// Either explicit values or an evenly spaced range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridSpec {
    Values(Vec<f64>),
    Range(GridRange),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridRange {
    pub lo: f64,
    pub hi: f64,
    pub npts: usize,
}

impl GridSpec {
    pub fn values(&self, field: &str) -> CliResult<Vec<f64>> {
        let values = match self {
            GridSpec::Values(v) => v.clone(),
            GridSpec::Range(r) => {
                if r.npts < 2 || !(r.lo < r.hi) {
                    return Err(CliError::validation(field, format!("{field} range needs lo < hi and npts >= 2")));
                }
                linspace(r.lo, r.hi, r.npts)
            }
        };
        if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
            return Err(CliError::validation(field, format!("{field} must hold finite values")));
        }
        Ok(values)
    }
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default)]
    pub omega0: f64,
    #[serde(default = "one")]
    pub gamma: f64,
    #[serde(default)]
    pub gamma_f: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shifts: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift_pattern: Option<ShiftPattern>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spacing: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positions: Option<Vec<f64>>,

    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub span: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    /// Two-atom shift for `extrema`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gf_grid: Option<GridSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_grid: Option<GridSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d1_grid: Option<GridSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d2_grid: Option<GridSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift_atoms: Option<[usize; 2]>,
}

pub fn parse_config(path: &Path) -> CliResult<RunConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_config_str(&text, path)
}

pub fn parse_config_str(text: &str, path: &Path) -> CliResult<RunConfig> {
    let config: RunConfig = serde_json::from_str(text).map_err(|e| {
        let (line, column) = (e.line(), e.column());
        match e.classify() {
            serde_json::error::Category::Data => CliError::Validation {
                field: field_of(&e.to_string()),
                message: format!("{e}"),
            },
            _ => CliError::Parse { path: path.to_path_buf(), line, column, message: e.to_string() },
        }
    })?;
    config.validate()?;
    Ok(config)
}

/// Best-effort field name from a serde data error.
fn field_of(message: &str) -> String {
    message
        .split('`')
        .nth(1)
        .map(str::to_string)
        .unwrap_or_else(|| "config".to_string())
}

impl RunConfig {
    pub fn validate(&self) -> CliResult<()> {
        if self.shifts.is_some() && self.shift_pattern.is_some() {
            return Err(CliError::validation("shift_pattern", "give either shifts or shift_pattern, not both"));
        }
        if self.spacing.is_some() && self.positions.is_some() {
            return Err(CliError::validation("spacing", "give either spacing or positions, not both"));
        }
        if let Some(n) = self.n {
            if n == 0 {
                return Err(CliError::validation("n", "n must be >= 1"));
            }
        }
        if let Some(spacing) = self.spacing {
            if !(spacing.is_finite() && spacing > 0.0) {
                return Err(CliError::validation("spacing", "spacing must be > 0"));
            }
        }
        if let Some([lo, hi]) = self.span {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(CliError::validation("span", "span needs finite lo < hi"));
            }
        }
        if let Some(grid) = self.grid {
            if grid < 2 {
                return Err(CliError::validation("grid", "grid must be >= 2"));
            }
        }
        if let Some(t) = self.threshold {
            if !t.is_finite() {
                return Err(CliError::validation("threshold", "threshold must be finite"));
            }
        }
        if self.has_scenario() {
            self.array_config()?;
        } else if !(self.gamma.is_finite() && self.gamma > 0.0) {
            return Err(CliError::validation("gamma", "gamma must be > 0"));
        }
        Ok(())
    }

    fn has_scenario(&self) -> bool {
        self.n.is_some() || self.shifts.is_some() || self.positions.is_some()
    }

    pub fn n(&self) -> CliResult<usize> {
        let n = self
            .n
            .or_else(|| self.shifts.as_ref().map(Vec::len))
            .or_else(|| self.positions.as_ref().map(Vec::len))
            .ok_or_else(|| CliError::validation("n", "n is required"))?;
        if n == 0 {
            return Err(CliError::validation("n", "n must be >= 1"));
        }
        Ok(n)
    }

    fn shifts(&self, n: usize) -> CliResult<Vec<f64>> {
        match (&self.shifts, &self.shift_pattern) {
            (Some(shifts), _) => {
                if shifts.len() != n {
                    return Err(CliError::validation(
                        "shifts",
                        format!("shifts has length {} but n = {n}", shifts.len()),
                    ));
                }
                Ok(shifts.clone())
            }
            (None, Some(ShiftPattern::EqualDifference { delta })) => Ok(comb_config(n, *delta)
                .map_err(core_validation)?
                .shifts()
                .to_vec()),
            (None, Some(ShiftPattern::Single { delta, atom })) => {
                if *atom >= n {
                    return Err(CliError::validation("shift_pattern", format!("atom {atom} out of range for n = {n}")));
                }
                let mut shifts = vec![0.0; n];
                shifts[*atom] = *delta;
                Ok(shifts)
            }
            (None, None) => Ok(vec![0.0; n]),
        }
    }

    /// The physical scenario with all defaults applied.
    pub fn array_config(&self) -> CliResult<ArrayConfig> {
        let n = self.n()?;
        let shifts = self.shifts(n)?;
        let positions = match (&self.positions, self.spacing) {
            (Some(p), _) => {
                if p.len() != n {
                    return Err(CliError::validation(
                        "positions",
                        format!("positions has length {} but n = {n}", p.len()),
                    ));
                }
                p.clone()
            }
            (None, spacing) => {
                let d = spacing.unwrap_or(braggscat_core::model::BRAGG_SPACING);
                (0..n).map(|j| j as f64 * d).collect()
            }
        };
        ArrayConfig::new(self.omega0, self.gamma, self.gamma_f, shifts, positions).map_err(core_validation)
    }
}

/// Rewrites a core input error as a field-level validation error.
pub fn core_validation(err: braggscat_core::Error) -> CliError {
    match err {
        braggscat_core::Error::InvalidConfig { field, message } => {
            CliError::validation(field, format!("{field} {message}"))
        }
        braggscat_core::Error::InvalidArgument { name, message } => {
            CliError::validation(name, format!("{name} {message}"))
        }
        other => CliError::Core(other),
    }
}
