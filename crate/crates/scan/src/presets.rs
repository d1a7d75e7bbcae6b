//! Named sweep bundles, one per figure of curves.
//!
//! A preset expands to a list of [`Series`], one per curve. Sweep ranges and
//! grid densities are listed in the README.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::json;

use crate::error::{io_error, ScanError};
use crate::spec::{Column, FixedParams, NumericConfig, ScanScenario, ScanSpec, SweepRange, SweepVariable};
use crate::sweep::run_sweep;
use crate::table::{Format, Table};

/// Squeezing grid shared by the r sweeps.
pub const R_RANGE: (f64, f64, usize) = (0.05, 2.0, 79);
/// Phase grid of the phase sweeps.
pub const PHI_RANGE: (f64, f64, usize) = (-0.2, 0.2, 161);
/// Beam-splitter transmissivity grid of the loss sweeps.
pub const T_RANGE: (f64, f64, usize) = (0.7, 0.999, 60);
/// Detector transmissivity grid of the QFI sweep.
pub const ETA_RANGE: (f64, f64, usize) = (0.01, 1.0, 100);

const EXCITATIONS: [u32; 4] = [0, 1, 2, 3];

/// One curve of a figure.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Series {
    pub name: String,
    pub spec: ScanSpec,
}

/// A named figure reproduction.
#[derive(Debug, Clone, Copy)]
pub struct FigurePreset {
    pub name: &'static str,
    pub description: &'static str,
    build: fn() -> Vec<Series>,
}

/// The fixed parameter values used across a preset's series, sorted and
/// deduplicated.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PresetParameters {
    pub sweep: SweepVariable,
    pub scenarios: Vec<ScanScenario>,
    pub n: Vec<u32>,
    pub r: Vec<f64>,
    pub phi: Vec<f64>,
    pub transmissivity: Vec<f64>,
    pub eta: Vec<f64>,
    pub nbar: Vec<f64>,
}

/// Knobs shared by every series of a preset run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    /// Worker threads; 0 uses one per core.
    pub workers: usize,
    pub format: Format,
    pub numeric: NumericConfig,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { workers: 0, format: Format::Csv, numeric: NumericConfig::default() }
    }
}

/// Files written by [`run_figure_preset`].
#[derive(Debug, Clone)]
pub struct PresetOutput {
    pub series: Vec<PathBuf>,
    pub manifest: PathBuf,
}

pub const PRESETS: &[FigurePreset] = &[
    FigurePreset { name: "fig3a", description: "external loss: sensitivity vs r", build: fig3a },
    FigurePreset { name: "fig3b", description: "external loss: sensitivity vs T1", build: fig3b },
    FigurePreset { name: "fig4a", description: "external loss: sensitivity vs phi at fixed r", build: fig4a },
    FigurePreset { name: "fig4b", description: "external loss: sensitivity vs phi at fixed energy", build: fig4b },
    FigurePreset { name: "fig5a", description: "internal loss: sensitivity vs r", build: fig5a },
    FigurePreset { name: "fig5b", description: "internal loss: sensitivity vs T2", build: fig5b },
    FigurePreset { name: "fig6a", description: "internal loss: sensitivity vs phi at fixed r", build: fig6a },
    FigurePreset { name: "fig6b", description: "internal loss: sensitivity vs phi at fixed energy", build: fig6b },
    FigurePreset { name: "fig7", description: "internal vs external loss: sensitivity vs T", build: fig7 },
    FigurePreset { name: "fig8a", description: "lossy sensitivity vs r against SQL and HL, n = 0", build: fig8a },
    FigurePreset { name: "fig8b", description: "lossy sensitivity vs r against SQL and HL, n = 1", build: fig8b },
    FigurePreset { name: "fig8c", description: "lossy sensitivity vs r against SQL and HL, n = 2", build: fig8c },
    FigurePreset { name: "fig8d", description: "lossy sensitivity vs r against SQL and HL, n = 3", build: fig8d },
    FigurePreset { name: "fig10", description: "QFI vs detector transmissivity", build: fig10 },
    FigurePreset { name: "fig11a", description: "QFI vs r", build: fig11a },
    FigurePreset { name: "fig11b", description: "QCRB vs r", build: fig11b },
    FigurePreset { name: "fig12a", description: "QCRB vs r against SQL and HL, n = 0", build: fig12a },
    FigurePreset { name: "fig12b", description: "QCRB vs r against SQL and HL, n = 1", build: fig12b },
    FigurePreset { name: "fig12c", description: "QCRB vs r against SQL and HL, n = 2", build: fig12c },
    FigurePreset { name: "fig12d", description: "QCRB vs r against SQL and HL, n = 3", build: fig12d },
];

pub fn preset_names() -> Vec<&'static str> {
    PRESETS.iter().map(|p| p.name).collect()
}

pub fn find_preset(name: &str) -> Result<&'static FigurePreset, ScanError> {
    PRESETS.iter().find(|p| p.name == name).ok_or_else(|| {
        ScanError::Usage(format!("unknown preset '{name}'; valid presets: {}", preset_names().join(", ")))
    })
}

impl FigurePreset {
    pub fn series(&self) -> Vec<Series> {
        (self.build)()
    }

    pub fn parameters(&self) -> PresetParameters {
        let series = self.series();
        let first = &series[0].spec;
        let mut out = PresetParameters {
            sweep: first.sweep_variable,
            scenarios: Vec::new(),
            n: Vec::new(),
            r: Vec::new(),
            phi: Vec::new(),
            transmissivity: Vec::new(),
            eta: Vec::new(),
            nbar: Vec::new(),
        };
        for Series { spec, .. } in &series {
            let f = &spec.fixed;
            out.scenarios.push(spec.scenario);
            out.n.extend(f.n);
            out.r.extend(f.r);
            out.phi.extend(f.phi);
            out.transmissivity.extend(f.t1.or(f.t2));
            out.eta.extend(f.eta);
            out.nbar.extend(spec.energy_mode);
        }
        out.scenarios.sort_by_key(|s| s.name());
        out.scenarios.dedup();
        out.n.sort_unstable();
        out.n.dedup();
        for v in [&mut out.r, &mut out.phi, &mut out.transmissivity, &mut out.eta, &mut out.nbar] {
            v.sort_by(f64::total_cmp);
            v.dedup();
        }
        out
    }
}

/// Runs every series of `name` and writes `<name>_<series>.<ext>` files
/// plus `<name>_manifest.json` into `out_dir`.
pub fn run_figure_preset(name: &str, out_dir: &Path, options: &RunOptions) -> Result<PresetOutput, ScanError> {
    let preset = find_preset(name)?;
    let mut series = preset.series();
    for s in &mut series {
        s.spec.numeric = options.numeric;
    }
    let format = options.format;
    let tables =
        series.iter().map(|s| run_sweep(&s.spec, options.workers)).collect::<Result<Vec<Table>, _>>()?;
    fs::create_dir_all(out_dir).map_err(io_error(out_dir))?;

    let mut files = Vec::new();
    let mut entries = Vec::new();
    for (s, mut table) in series.iter().zip(tables) {
        table.header["preset"] = json!(preset.name);
        table.header["series"] = json!(s.name);
        let file_name = format!("{}_{}.{}", preset.name, s.name, format.extension());
        let path = out_dir.join(&file_name);
        fs::write(&path, table.render(format)?).map_err(io_error(&path))?;
        entries.push(json!({ "name": s.name, "file": file_name, "spec": s.spec }));
        files.push(path);
    }

    let numeric = options.numeric;
    let manifest = json!({
        "preset": preset.name,
        "description": preset.description,
        "tool": "twinfock",
        "version": twinfock::VERSION,
        "parameters": preset.parameters(),
        "tolerances": {
            "tail_tol": numeric.tail_tol,
            "deriv_step": numeric.deriv_step,
            "phi_interval": numeric.phi_interval,
            "imaginary_tol": twinfock::closed_form::IMAGINARY_TOL,
        },
        "series": entries,
    });
    let manifest_path = out_dir.join(format!("{}_manifest.json", preset.name));
    let mut text = serde_json::to_string_pretty(&manifest)?;
    text.push('\n');
    fs::write(&manifest_path, text).map_err(io_error(&manifest_path))?;
    Ok(PresetOutput { series: files, manifest: manifest_path })
}

fn linear((lo, hi, count): (f64, f64, usize)) -> SweepRange {
    SweepRange::Linear { lo, hi, count }
}

fn series(name: String, variable: SweepVariable, range: (f64, f64, usize), scenario: ScanScenario, fixed: FixedParams) -> Series {
    let mut spec = ScanSpec::new(variable, linear(range), scenario);
    spec.fixed = fixed;
    Series { name, spec }
}

fn loss_fixed(scenario: ScanScenario, t: f64) -> FixedParams {
    match scenario {
        ScanScenario::External => FixedParams { t1: Some(t), ..Default::default() },
        ScanScenario::Internal => FixedParams { t2: Some(t), ..Default::default() },
        _ => FixedParams::default(),
    }
}

fn t_label(scenario: ScanScenario) -> &'static str {
    if scenario == ScanScenario::Internal { "T2" } else { "T1" }
}

fn t_variable(scenario: ScanScenario) -> SweepVariable {
    if scenario == ScanScenario::Internal { SweepVariable::T2 } else { SweepVariable::T1 }
}

fn sensitivity_vs_r(scenario: ScanScenario) -> Vec<Series> {
    let mut out = Vec::new();
    for t in [1.0, 0.95] {
        for n in EXCITATIONS {
            let fixed = FixedParams { n: Some(n), phi: Some(0.001), ..loss_fixed(scenario, t) };
            out.push(series(format!("n{n}_{}_{t}", t_label(scenario)), SweepVariable::R, R_RANGE, scenario, fixed));
        }
    }
    out
}

fn sensitivity_vs_t(scenario: ScanScenario) -> Vec<Series> {
    EXCITATIONS
        .iter()
        .map(|&n| {
            let fixed = FixedParams { n: Some(n), r: Some(0.7), phi: Some(0.05), ..Default::default() };
            series(format!("n{n}"), t_variable(scenario), T_RANGE, scenario, fixed)
        })
        .collect()
}

fn sensitivity_vs_phi(scenario: ScanScenario, nbar: Option<f64>) -> Vec<Series> {
    let mut out = Vec::new();
    for t in [1.0, 0.95] {
        for n in EXCITATIONS {
            let fixed = FixedParams {
                n: Some(n),
                r: if nbar.is_none() { Some(0.7) } else { None },
                ..loss_fixed(scenario, t)
            };
            let mut s = series(format!("n{n}_{}_{t}", t_label(scenario)), SweepVariable::Phi, PHI_RANGE, scenario, fixed);
            s.spec.energy_mode = nbar;
            if nbar.is_some() {
                s.spec.outputs.insert(0, Column::R);
            }
            out.push(s);
        }
    }
    out
}

fn fig3a() -> Vec<Series> {
    sensitivity_vs_r(ScanScenario::External)
}
fn fig3b() -> Vec<Series> {
    sensitivity_vs_t(ScanScenario::External)
}
fn fig4a() -> Vec<Series> {
    sensitivity_vs_phi(ScanScenario::External, None)
}
fn fig4b() -> Vec<Series> {
    sensitivity_vs_phi(ScanScenario::External, Some(8.0))
}
fn fig5a() -> Vec<Series> {
    sensitivity_vs_r(ScanScenario::Internal)
}
fn fig5b() -> Vec<Series> {
    sensitivity_vs_t(ScanScenario::Internal)
}
fn fig6a() -> Vec<Series> {
    sensitivity_vs_phi(ScanScenario::Internal, None)
}
fn fig6b() -> Vec<Series> {
    sensitivity_vs_phi(ScanScenario::Internal, Some(8.0))
}

fn fig7() -> Vec<Series> {
    let mut out = Vec::new();
    for scenario in [ScanScenario::External, ScanScenario::Internal] {
        for n in EXCITATIONS {
            let fixed = FixedParams { n: Some(n), r: Some(0.7), phi: Some(0.05), ..Default::default() };
            let mut s = series(format!("{}_n{n}", scenario.name()), t_variable(scenario), T_RANGE, scenario, fixed);
            s.spec.outputs = vec![Column::Sensitivity];
            out.push(s);
        }
    }
    out
}

/// Both the fixed-phase sensitivity and its minimum over the phase are
/// emitted, together with SQL and HL at the same mean photon number.
fn lossy_vs_limits(n: u32, phi: f64, t: f64) -> Vec<Series> {
    [ScanScenario::External, ScanScenario::Internal]
        .into_iter()
        .map(|scenario| {
            let fixed = FixedParams { n: Some(n), phi: Some(phi), ..loss_fixed(scenario, t) };
            let mut s = series(scenario.name().to_string(), SweepVariable::R, R_RANGE, scenario, fixed);
            s.spec.outputs = vec![
                Column::Nbar,
                Column::Sensitivity,
                Column::SensitivityOpt,
                Column::PhiOpt,
                Column::Sql,
                Column::Hl,
            ];
            s
        })
        .collect()
}

fn fig8a() -> Vec<Series> {
    lossy_vs_limits(0, 0.2, 0.96)
}
fn fig8b() -> Vec<Series> {
    lossy_vs_limits(1, 0.15, 0.95)
}
fn fig8c() -> Vec<Series> {
    lossy_vs_limits(2, 0.12, 0.95)
}
fn fig8d() -> Vec<Series> {
    lossy_vs_limits(3, 0.1, 0.95)
}

fn qfi_series(name: String, variable: SweepVariable, range: (f64, f64, usize), fixed: FixedParams, outputs: Vec<Column>) -> Series {
    let mut s = series(name, variable, range, ScanScenario::Qfi, fixed);
    s.spec.outputs = outputs;
    s
}

fn fig10() -> Vec<Series> {
    EXCITATIONS
        .iter()
        .map(|&n| {
            let fixed = FixedParams { n: Some(n), r: Some(0.7), ..Default::default() };
            qfi_series(format!("n{n}"), SweepVariable::Eta, ETA_RANGE, fixed, vec![Column::Qfi, Column::GammaOpt])
        })
        .collect()
}

fn qfi_vs_r(outputs: Vec<Column>) -> Vec<Series> {
    let mut out = Vec::new();
    for eta in [1.0, 0.8] {
        for n in EXCITATIONS {
            let fixed = FixedParams { n: Some(n), eta: Some(eta), ..Default::default() };
            out.push(qfi_series(format!("n{n}_eta_{eta}"), SweepVariable::R, R_RANGE, fixed, outputs.clone()));
        }
    }
    out
}

fn fig11a() -> Vec<Series> {
    qfi_vs_r(vec![Column::Nbar, Column::Qfi])
}
fn fig11b() -> Vec<Series> {
    qfi_vs_r(vec![Column::Nbar, Column::Qcrb])
}

fn qcrb_vs_limits(n: u32) -> Vec<Series> {
    [1.0, 0.8]
        .into_iter()
        .map(|eta| {
            let fixed = FixedParams { n: Some(n), eta: Some(eta), ..Default::default() };
            let outputs = vec![Column::Nbar, Column::Qcrb, Column::Sql, Column::Hl];
            qfi_series(format!("eta_{eta}"), SweepVariable::R, R_RANGE, fixed, outputs)
        })
        .collect()
}

fn fig12a() -> Vec<Series> {
    qcrb_vs_limits(0)
}
fn fig12b() -> Vec<Series> {
    qcrb_vs_limits(1)
}
fn fig12c() -> Vec<Series> {
    qcrb_vs_limits(2)
}
fn fig12d() -> Vec<Series> {
    qcrb_vs_limits(3)
}
