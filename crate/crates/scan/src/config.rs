//! Settings shared by every subcommand, from flags and an optional config
//! file. Config keys are the long flag names (`tail-tol = 1e-14`); a flag
//! given on the command line wins over the file.

use std::path::{Path, PathBuf};

use clap::Args;
use serde::Deserialize;

use crate::error::{io_error, ScanError};
use crate::spec::{parse_columns, Column, NumericConfig, ScanScenario, SweepRange, SweepVariable};
use crate::table::Format;

/// Environment variable naming the default output directory of `figure`.
pub const OUT_DIR_ENV: &str = "TWINFOCK_OUT_DIR";

#[derive(Debug, Clone, Default, PartialEq, Args, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct Settings {
    /// Excitation number of the twin-Fock seed |n,n>.
    #[arg(long, global = true)]
    pub n: Option<u32>,
    /// Squeezing parameter.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub r: Option<f64>,
    /// Phase shift, in the shifted convention used by the closed forms.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub phi: Option<f64>,
    /// Transmissivity of the loss after the second beam splitter.
    #[arg(long, global = true)]
    pub t1: Option<f64>,
    /// Transmissivity of the loss inside the interferometer.
    #[arg(long, global = true)]
    pub t2: Option<f64>,
    /// Transmissivity of arm b for the QFI bound.
    #[arg(long, global = true)]
    pub eta: Option<f64>,
    /// Fix the total mean photon number; r is then derived per point.
    #[arg(long, global = true)]
    pub nbar: Option<f64>,
    /// ideal, external, internal or qfi.
    #[arg(long, global = true)]
    pub scenario: Option<String>,
    /// Variable to sweep: r, phi, T1, T2, eta or n.
    #[arg(long, global = true)]
    pub sweep: Option<String>,
    /// lo:hi:count, lo:hi, or a comma-separated list.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub range: Option<String>,
    /// Comma-separated output columns.
    #[arg(long, global = true)]
    pub columns: Option<String>,
    /// Output file (sweeps) or directory (figures); `-` is stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads; 0 means one per core.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Truncation tolerance of the Fock-space oracle.
    #[arg(long, global = true)]
    pub tail_tol: Option<f64>,
    /// Step of the numerical phase derivative.
    #[arg(long, global = true)]
    pub deriv_step: Option<f64>,
}

impl Settings {
    /// Reads a `.toml` or `.json` settings file.
    pub fn from_file(path: &Path) -> Result<Settings, ScanError> {
        let text = std::fs::read_to_string(path).map_err(io_error(path))?;
        match path.extension().and_then(|e| e.to_str()) {
            Some("toml") => toml::from_str(&text).map_err(|e| ScanError::Config(format!("{}: {e}", path.display()))),
            Some("json") => {
                serde_json::from_str(&text).map_err(|e| ScanError::Config(format!("{}: {e}", path.display())))
            }
            _ => Err(ScanError::Config(format!("{}: expected a .toml or .json file", path.display()))),
        }
    }

    /// Fills every unset field of `self` from `fallback`.
    pub fn or(self, fallback: Settings) -> Settings {
        Settings {
            n: self.n.or(fallback.n),
            r: self.r.or(fallback.r),
            phi: self.phi.or(fallback.phi),
            t1: self.t1.or(fallback.t1),
            t2: self.t2.or(fallback.t2),
            eta: self.eta.or(fallback.eta),
            nbar: self.nbar.or(fallback.nbar),
            scenario: self.scenario.or(fallback.scenario),
            sweep: self.sweep.or(fallback.sweep),
            range: self.range.or(fallback.range),
            columns: self.columns.or(fallback.columns),
            out: self.out.or(fallback.out),
            format: self.format.or(fallback.format),
            workers: self.workers.or(fallback.workers),
            tail_tol: self.tail_tol.or(fallback.tail_tol),
            deriv_step: self.deriv_step.or(fallback.deriv_step),
        }
    }

    pub fn scenario(&self) -> Result<Option<ScanScenario>, ScanError> {
        self.scenario.as_deref().map(str::parse).transpose()
    }

    pub fn sweep_variable(&self) -> Result<Option<SweepVariable>, ScanError> {
        self.sweep.as_deref().map(str::parse).transpose()
    }

    pub fn range(&self) -> Result<Option<SweepRange>, ScanError> {
        self.range.as_deref().map(str::parse).transpose()
    }

    pub fn columns(&self) -> Result<Option<Vec<Column>>, ScanError> {
        self.columns.as_deref().map(parse_columns).transpose()
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or(Format::Csv)
    }

    pub fn workers(&self) -> usize {
        self.workers.unwrap_or(0)
    }

    pub fn numeric(&self) -> NumericConfig {
        let d = NumericConfig::default();
        NumericConfig {
            tail_tol: self.tail_tol.unwrap_or(d.tail_tol),
            deriv_step: self.deriv_step.unwrap_or(d.deriv_step),
            phi_interval: d.phi_interval,
        }
    }

    /// Output directory of `figure`: `--out`, then `$TWINFOCK_OUT_DIR`, then
    /// `twinfock-out` in the working directory.
    pub fn out_dir(&self) -> PathBuf {
        self.out
            .clone()
            .or_else(|| std::env::var_os(OUT_DIR_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("twinfock-out"))
    }
}
