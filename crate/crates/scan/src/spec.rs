//! Declarative sweep descriptions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use twinfock::closed_form::{r_for_energy, DEFAULT_DERIVATIVE_STEP, DEFAULT_PHI_INTERVAL};
use twinfock::fock::DEFAULT_TAIL_TOL;
use twinfock::numerics::linspace;
use twinfock::Scenario;

use crate::error::{usage, ScanError};

/// Parameter varied along a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepVariable {
    #[serde(rename = "r")]
    R,
    #[serde(rename = "phi")]
    Phi,
    #[serde(rename = "T1")]
    T1,
    #[serde(rename = "T2")]
    T2,
    #[serde(rename = "eta")]
    Eta,
    #[serde(rename = "n")]
    N,
}

impl SweepVariable {
    pub const ALL: [SweepVariable; 6] = [Self::R, Self::Phi, Self::T1, Self::T2, Self::Eta, Self::N];

    pub fn name(self) -> &'static str {
        match self {
            Self::R => "r",
            Self::Phi => "phi",
            Self::T1 => "T1",
            Self::T2 => "T2",
            Self::Eta => "eta",
            Self::N => "n",
        }
    }
}

impl fmt::Display for SweepVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepVariable {
    type Err = ScanError;

    fn from_str(s: &str) -> Result<Self, ScanError> {
        Self::ALL
            .into_iter()
            .find(|v| v.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| ScanError::Usage(format!("unknown sweep variable '{s}' (expected r, phi, T1, T2, eta or n)")))
    }
}

/// Which quantity family a sweep evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanScenario {
    Ideal,
    External,
    Internal,
    Qfi,
}

impl ScanScenario {
    pub fn name(self) -> &'static str {
        match self {
            Self::Ideal => "ideal",
            Self::External => "external",
            Self::Internal => "internal",
            Self::Qfi => "qfi",
        }
    }

    pub fn default_columns(self) -> Vec<Column> {
        use Column::*;
        match self {
            Self::Qfi => vec![Nbar, Qfi, Qcrb, Sql, Hl, GammaOpt],
            _ => vec![Nbar, Parity, Sensitivity, Sql, Hl],
        }
    }
}

impl FromStr for ScanScenario {
    type Err = ScanError;

    fn from_str(s: &str) -> Result<Self, ScanError> {
        match s.to_ascii_lowercase().as_str() {
            "ideal" => Ok(Self::Ideal),
            "external" => Ok(Self::External),
            "internal" => Ok(Self::Internal),
            "qfi" => Ok(Self::Qfi),
            _ => usage(format!("unknown scenario '{s}' (expected ideal, external, internal or qfi)")),
        }
    }
}

/// Output columns. The sweep value and the error message are always present.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Column {
    N,
    R,
    Phi,
    Transmissivity,
    Eta,
    Nbar,
    Parity,
    OracleParity,
    Sensitivity,
    SensitivityOpt,
    PhiOpt,
    Qfi,
    Qcrb,
    Sql,
    Hl,
    GammaOpt,
}

impl Column {
    pub const ALL: [Column; 16] = [
        Self::N,
        Self::R,
        Self::Phi,
        Self::Transmissivity,
        Self::Eta,
        Self::Nbar,
        Self::Parity,
        Self::OracleParity,
        Self::Sensitivity,
        Self::SensitivityOpt,
        Self::PhiOpt,
        Self::Qfi,
        Self::Qcrb,
        Self::Sql,
        Self::Hl,
        Self::GammaOpt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::N => "n",
            Self::R => "r",
            Self::Phi => "phi",
            Self::Transmissivity => "transmissivity",
            Self::Eta => "eta",
            Self::Nbar => "nbar",
            Self::Parity => "parity",
            Self::OracleParity => "oracle_parity",
            Self::Sensitivity => "sensitivity",
            Self::SensitivityOpt => "sensitivity_opt",
            Self::PhiOpt => "phi_opt",
            Self::Qfi => "qfi",
            Self::Qcrb => "qcrb",
            Self::Sql => "sql",
            Self::Hl => "hl",
            Self::GammaOpt => "gamma_opt",
        }
    }
}

impl FromStr for Column {
    type Err = ScanError;

    fn from_str(s: &str) -> Result<Self, ScanError> {
        Self::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| {
            let names: Vec<_> = Self::ALL.iter().map(|c| c.name()).collect();
            ScanError::Usage(format!("unknown column '{s}' (expected one of {})", names.join(", ")))
        })
    }
}

/// Parses a comma-separated column list.
pub fn parse_columns(s: &str) -> Result<Vec<Column>, ScanError> {
    s.split(',').map(str::trim).filter(|p| !p.is_empty()).map(str::parse).collect()
}

/// Sweep points: an inclusive linear grid or an explicit list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepRange {
    Linear { lo: f64, hi: f64, count: usize },
    List { values: Vec<f64> },
}

impl SweepRange {
    pub fn points(&self) -> Vec<f64> {
        match self {
            Self::Linear { lo, hi, count } => linspace(*lo, *hi, *count),
            Self::List { values } => values.clone(),
        }
    }

    fn validate(&self) -> Result<(), ScanError> {
        let pts = self.points();
        if pts.is_empty() {
            return usage("sweep range is empty");
        }
        if pts.iter().any(|v| !v.is_finite()) {
            return usage("sweep range contains non-finite values");
        }
        Ok(())
    }
}

impl FromStr for SweepRange {
    type Err = ScanError;

    /// `lo:hi:count`, `lo:hi` (count 2), or a comma-separated list.
    fn from_str(s: &str) -> Result<Self, ScanError> {
        let num = |p: &str| -> Result<f64, ScanError> {
            p.trim().parse::<f64>().map_err(|_| ScanError::Usage(format!("'{p}' is not a number in range '{s}'")))
        };
        if s.contains(':') {
            let parts: Vec<&str> = s.split(':').collect();
            let count = match parts.len() {
                2 => 2,
                3 => parts[2]
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| ScanError::Usage(format!("point count '{}' is not an integer", parts[2])))?,
                _ => return usage(format!("range '{s}' must look like lo:hi:count")),
            };
            Ok(Self::Linear { lo: num(parts[0])?, hi: num(parts[1])?, count })
        } else {
            Ok(Self::List { values: s.split(',').map(num).collect::<Result<_, _>>()? })
        }
    }
}

/// Parameters held fixed along a sweep. Unset entries take the defaults
/// listed in [`FixedParams::resolved`].
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FixedParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
}

impl FixedParams {
    fn has(&self, v: SweepVariable) -> bool {
        match v {
            SweepVariable::R => self.r.is_some(),
            SweepVariable::Phi => self.phi.is_some(),
            SweepVariable::T1 => self.t1.is_some(),
            SweepVariable::T2 => self.t2.is_some(),
            SweepVariable::Eta => self.eta.is_some(),
            SweepVariable::N => self.n.is_some(),
        }
    }

    /// Point values with defaults `n = 0, r = 0.7, phi = 0.05, T1 = T2 = eta = 1`.
    pub fn resolved(&self) -> PointParams {
        PointParams {
            n: self.n.unwrap_or(0),
            r: self.r.unwrap_or(0.7),
            phi: self.phi.unwrap_or(0.05),
            t1: self.t1.unwrap_or(1.0),
            t2: self.t2.unwrap_or(1.0),
            eta: self.eta.unwrap_or(1.0),
        }
    }
}

/// Fully specified parameters of a single sweep point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PointParams {
    pub n: u32,
    pub r: f64,
    pub phi: f64,
    pub t1: f64,
    pub t2: f64,
    pub eta: f64,
}

/// Numerical knobs that affect results.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NumericConfig {
    pub tail_tol: f64,
    pub deriv_step: f64,
    pub phi_interval: (f64, f64),
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig {
            tail_tol: DEFAULT_TAIL_TOL,
            deriv_step: DEFAULT_DERIVATIVE_STEP,
            phi_interval: DEFAULT_PHI_INTERVAL,
        }
    }
}

/// A complete sweep description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanSpec {
    pub sweep_variable: SweepVariable,
    pub range: SweepRange,
    #[serde(default)]
    pub fixed: FixedParams,
    pub scenario: ScanScenario,
    /// Total mean photon number; when set, `r` is derived at every point.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub energy_mode: Option<f64>,
    pub outputs: Vec<Column>,
    #[serde(default)]
    pub numeric: NumericConfig,
}

impl ScanSpec {
    pub fn new(sweep_variable: SweepVariable, range: SweepRange, scenario: ScanScenario) -> Self {
        ScanSpec {
            sweep_variable,
            range,
            fixed: FixedParams::default(),
            scenario,
            energy_mode: None,
            outputs: scenario.default_columns(),
            numeric: NumericConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<(), ScanError> {
        self.range.validate()?;
        let v = self.sweep_variable;
        if self.fixed.has(v) {
            return usage(format!("'{v}' is swept and must not also be fixed"));
        }
        if self.energy_mode.is_some() && (v == SweepVariable::R || self.fixed.r.is_some()) {
            return usage("energy mode derives r from the mean photon number; do not sweep or fix r");
        }
        match (v, self.scenario) {
            (SweepVariable::T1, s) if s != ScanScenario::External => {
                return usage("sweeping T1 requires the external scenario")
            }
            (SweepVariable::T2, s) if s != ScanScenario::Internal => {
                return usage("sweeping T2 requires the internal scenario")
            }
            _ => {}
        }
        if v == SweepVariable::N && self.range.points().iter().any(|x| x.fract() != 0.0 || *x < 0.0) {
            return usage("n must be swept over non-negative integers");
        }
        if let Some(nbar) = self.energy_mode {
            if !(nbar > 0.0 && nbar.is_finite()) {
                return usage(format!("mean photon number must be positive, got {nbar}"));
            }
        }
        let NumericConfig { tail_tol, deriv_step, phi_interval: (lo, hi) } = self.numeric;
        if !(tail_tol > 0.0 && tail_tol < 1.0) {
            return usage(format!("tail tolerance must lie in (0, 1), got {tail_tol}"));
        }
        if !(deriv_step > 0.0 && deriv_step.is_finite()) {
            return usage(format!("derivative step must be positive, got {deriv_step}"));
        }
        if !(lo < hi && lo.is_finite() && hi.is_finite()) {
            return usage(format!("phase search window ({lo}, {hi}) is invalid"));
        }
        if self.outputs.is_empty() {
            return usage("no output columns requested");
        }
        Ok(())
    }

    /// Parameters of each sweep point, in order. In energy mode `r` is
    /// derived per point; infeasible points keep `r = NaN` and fail later.
    pub fn points(&self) -> Vec<PointParams> {
        let base = self.fixed.resolved();
        self.range
            .points()
            .into_iter()
            .map(|x| {
                let mut p = base;
                match self.sweep_variable {
                    SweepVariable::R => p.r = x,
                    SweepVariable::Phi => p.phi = x,
                    SweepVariable::T1 => p.t1 = x,
                    SweepVariable::T2 => p.t2 = x,
                    SweepVariable::Eta => p.eta = x,
                    SweepVariable::N => p.n = x as u32,
                }
                if let Some(nbar) = self.energy_mode {
                    p.r = r_for_energy(nbar, p.n).unwrap_or(f64::NAN);
                }
                p
            })
            .collect()
    }

    /// The loss model used for parity columns.
    pub fn interferometer_scenario(&self, p: &PointParams) -> Scenario {
        match self.scenario {
            ScanScenario::Ideal | ScanScenario::Qfi => Scenario::Ideal,
            ScanScenario::External => Scenario::External { t1: p.t1 },
            ScanScenario::Internal => Scenario::Internal { t2: p.t2 },
        }
    }
}
