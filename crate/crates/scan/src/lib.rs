//! Parameter sweeps, figure presets and self-checks for [`twinfock`].
//!
//! The `twinfock` binary is a thin wrapper around [`cli::run`]; everything it
//! does is also reachable from here.

pub mod cli;
pub mod config;
pub mod error;
pub mod presets;
pub mod spec;
pub mod sweep;
pub mod table;
pub mod verify;

pub use config::{Settings, OUT_DIR_ENV};
pub use error::ScanError;
pub use presets::{find_preset, preset_names, run_figure_preset, FigurePreset, RunOptions, Series, PRESETS};
pub use spec::{Column, FixedParams, NumericConfig, ScanScenario, ScanSpec, SweepRange, SweepVariable};
pub use sweep::run_sweep;
pub use table::{Cell, Format, Row, Table};
pub use verify::{run_verify, CheckResult, GridLevel, VerifyReport};
