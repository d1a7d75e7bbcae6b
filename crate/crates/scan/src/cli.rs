//! Command-line front end.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::json;
use twinfock::closed_form::{mean_total_photons, r_for_energy};
use twinfock::fock::interferometer_input;

use crate::config::Settings;
use crate::error::{io_error, usage, ScanError};
use crate::presets::{preset_names, run_figure_preset, RunOptions, PRESETS};
use crate::spec::{Column, FixedParams, ScanScenario, ScanSpec, SweepRange, SweepVariable};
use crate::sweep::run_sweep;
use crate::table::{Cell, Table};
use crate::verify::{run_verify, GridLevel};

#[derive(Debug, Parser)]
#[command(name = "twinfock", version, about = "Phase-sensitivity and QFI scans of a squeezed twin-Fock interferometer")]
pub struct Cli {
    /// TOML or JSON file with default values for the flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub settings: Settings,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate columns along one swept parameter.
    Sweep,
    /// Write the data series of a figure preset plus a manifest.
    Figure {
        /// Preset name, for example fig4b.
        preset: Option<String>,
        /// List the presets and exit.
        #[arg(long)]
        list: bool,
    },
    /// Minimise the sensitivity over the phase.
    OptimizePhi,
    /// Run the self-checks; exits nonzero if any fails.
    Verify {
        #[arg(long, value_enum, default_value = "quick")]
        level: GridLevel,
    },
    /// Solve for the squeezing that gives a total mean photon number.
    EnergySolve {
        /// Also write the input state amplitudes as JSON (`-` for stdout).
        #[arg(long)]
        dump_state: Option<PathBuf>,
    },
}

/// Runs a parsed command line. Returns `false` when the command completed
/// but reported failure (a failing `verify`).
pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<bool, ScanError> {
    let settings = match &cli.config {
        Some(path) => cli.settings.clone().or(Settings::from_file(path)?),
        None => cli.settings.clone(),
    };
    match cli.command {
        Command::Sweep => {
            let spec = build_spec(&settings, None)?;
            emit_table(&run_sweep(&spec, settings.workers())?, &settings, stdout)?;
        }
        Command::OptimizePhi => {
            let spec = build_spec(&settings, Some(vec![Column::Nbar, Column::PhiOpt, Column::SensitivityOpt]))?;
            if spec.scenario == ScanScenario::Qfi {
                return usage("optimize-phi needs an interferometer scenario, not qfi");
            }
            emit_table(&run_sweep(&spec, settings.workers())?, &settings, stdout)?;
        }
        Command::Figure { list: true, .. } => {
            for p in PRESETS {
                writeln!(stdout, "{:<7} {}", p.name, p.description).map_err(stdout_error)?;
            }
        }
        Command::Figure { preset: Some(name), .. } => {
            let options =
                RunOptions { workers: settings.workers(), format: settings.format(), numeric: settings.numeric() };
            let out = run_figure_preset(&name, &settings.out_dir(), &options)?;
            for path in out.series.iter().chain([&out.manifest]) {
                writeln!(stdout, "{}", path.display()).map_err(stdout_error)?;
            }
        }
        Command::Figure { preset: None, .. } => {
            return usage(format!("figure needs a preset name; valid presets: {}", preset_names().join(", ")));
        }
        Command::Verify { level } => {
            let report = run_verify(level, settings.workers())?;
            let text = serde_json::to_string_pretty(&report)? + "\n";
            write_output(&text, settings.out.as_deref(), stdout)?;
            return Ok(report.passed());
        }
        Command::EnergySolve { dump_state } => energy_solve(&settings, dump_state.as_deref(), stdout)?,
    }
    Ok(true)
}

/// Turns flags into a sweep. Without `--sweep` a single point is evaluated.
pub fn build_spec(settings: &Settings, outputs: Option<Vec<Column>>) -> Result<ScanSpec, ScanError> {
    let scenario = match settings.scenario()? {
        Some(s) => s,
        None if settings.t1.is_some() => ScanScenario::External,
        None if settings.t2.is_some() => ScanScenario::Internal,
        None => ScanScenario::Ideal,
    };
    let mut fixed = FixedParams {
        n: settings.n,
        r: settings.r,
        phi: settings.phi,
        t1: settings.t1,
        t2: settings.t2,
        eta: settings.eta,
    };
    let (variable, range) = match (settings.sweep_variable()?, settings.range()?) {
        (Some(v), Some(range)) => (v, range),
        (Some(v), None) => return usage(format!("--sweep {v} needs --range")),
        (None, Some(_)) => return usage("--range needs --sweep"),
        (None, None) => {
            let n = fixed.n.take().unwrap_or(0);
            (SweepVariable::N, SweepRange::List { values: vec![n as f64] })
        }
    };
    let mut spec = ScanSpec::new(variable, range, scenario);
    spec.fixed = fixed;
    spec.energy_mode = settings.nbar;
    spec.numeric = settings.numeric();
    if let Some(columns) = settings.columns()? {
        spec.outputs = columns;
    } else if let Some(columns) = outputs {
        spec.outputs = columns;
    }
    spec.validate()?;
    Ok(spec)
}

fn energy_solve(settings: &Settings, dump_state: Option<&Path>, stdout: &mut dyn Write) -> Result<(), ScanError> {
    let Some(nbar) = settings.nbar else {
        return usage("energy-solve needs --nbar");
    };
    let n = settings.n.unwrap_or(0);
    let r = r_for_energy(nbar, n)?;
    let summary = json!({
        "n": n,
        "nbar": Cell::Num(nbar),
        "r": Cell::Num(r),
        "nbar_check": Cell::Num(mean_total_photons(n, r)),
    });
    writeln!(stdout, "{}", serde_json::to_string_pretty(&summary)?).map_err(stdout_error)?;
    if let Some(path) = dump_state {
        let tail_tol = settings.numeric().tail_tol;
        let state = interferometer_input(n, r, tail_tol)?;
        let amplitudes: Vec<_> = state
            .nonzero_entries()
            .into_iter()
            .map(|((k, l), re, im)| json!({ "k": k, "l": l, "re": Cell::Num(re), "im": Cell::Num(im) }))
            .collect();
        let dump = json!({
            "n": n,
            "r": Cell::Num(r),
            "cutoff": state.cutoff(),
            "tail_tol": Cell::Num(tail_tol),
            "norm_sqr": Cell::Num(state.norm_sqr()),
            "amplitudes": amplitudes,
        });
        let text = serde_json::to_string_pretty(&dump)? + "\n";
        write_output(&text, Some(path), stdout)?;
    }
    Ok(())
}

fn emit_table(table: &Table, settings: &Settings, stdout: &mut dyn Write) -> Result<(), ScanError> {
    write_output(&table.render(settings.format())?, settings.out.as_deref(), stdout)
}

fn write_output(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> Result<(), ScanError> {
    match out {
        Some(path) if path != Path::new("-") => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent).map_err(io_error(parent))?;
            }
            std::fs::write(path, text).map_err(io_error(path))
        }
        _ => stdout.write_all(text.as_bytes()).map_err(stdout_error),
    }
}

fn stdout_error(source: std::io::Error) -> ScanError {
    ScanError::Io { path: "<stdout>".into(), source }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("twinfock").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn flags_after_the_subcommand() {
        let cli = parse(&["sweep", "--sweep", "phi", "--range", "-0.1:0.1:3", "--t1", "0.9"]);
        let spec = build_spec(&cli.settings, None).unwrap();
        assert_eq!(spec.scenario, ScanScenario::External);
        assert_eq!(spec.range.points(), vec![-0.1, 0.0, 0.1]);
    }

    #[test]
    fn single_point_without_sweep() {
        let cli = parse(&["--n", "2", "optimize-phi", "--t1", "0.95"]);
        let spec = build_spec(&cli.settings, None).unwrap();
        assert_eq!(spec.sweep_variable, SweepVariable::N);
        assert_eq!(spec.range.points(), vec![2.0]);
    }

    #[test]
    fn range_without_sweep_is_a_usage_error() {
        let cli = parse(&["sweep", "--range", "0:1:3"]);
        assert!(matches!(build_spec(&cli.settings, None), Err(ScanError::Usage(_))));
    }

    #[test]
    fn energy_solve_prints_r() {
        let cli = parse(&["energy-solve", "--nbar", "8"]);
        let mut out = Vec::new();
        assert!(run(cli, &mut out).unwrap());
        let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
        let r = v["r"].as_f64().unwrap();
        assert!((r - 0.5 * 9f64.acosh()).abs() < 1e-15);
    }
}
