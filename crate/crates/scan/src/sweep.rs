use rayon::prelude::*;
use serde_json::json;
use twinfock::closed_form::{
    mean_total_photons, optimal_sensitivity_over_phi, parity, r_for_energy, sensitivity, hl, sql,
};
use twinfock::fock::oracle_parity;
use twinfock::qfi::{gamma_opt, qcrb, qfi_lossy};
use twinfock::{Error, QfiParams, SchemeParams};

use crate::error::{usage, ScanError};
use crate::spec::{Column, PointParams, ScanSpec, SweepVariable};
use crate::table::{Cell, Row, Table};

/// Runs `op` on a pool of `workers` threads (0 = one per core).
pub fn with_workers<T: Send>(workers: usize, op: impl FnOnce() -> T + Send) -> Result<T, ScanError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| ScanError::Usage(format!("cannot start {workers} workers: {e}")))?;
    Ok(pool.install(op))
}

/// Header object written at the top of every output file.
pub fn table_header(spec: &ScanSpec) -> serde_json::Value {
    json!({
        "tool": "twinfock",
        "version": twinfock::VERSION,
        "spec": spec,
    })
}

/// Column names of the table produced for `spec`.
pub fn column_names(spec: &ScanSpec) -> Vec<String> {
    std::iter::once(spec.sweep_variable.name().to_string())
        .chain(visible_columns(spec).map(|c| c.name().to_string()))
        .collect()
}

fn visible_columns(spec: &ScanSpec) -> impl Iterator<Item = Column> + '_ {
    let swept = match spec.sweep_variable {
        SweepVariable::R => Some(Column::R),
        SweepVariable::Phi => Some(Column::Phi),
        SweepVariable::Eta => Some(Column::Eta),
        SweepVariable::N => Some(Column::N),
        SweepVariable::T1 | SweepVariable::T2 => Some(Column::Transmissivity),
    };
    spec.outputs.iter().copied().filter(move |c| Some(*c) != swept)
}

/// Evaluates every point of `spec`; rows come back in sweep order.
///
/// A failing point never aborts the sweep: divergent sensitivities become
/// `inf` and other failures leave the cell empty with a message in the
/// row's error field.
pub fn run_sweep(spec: &ScanSpec, workers: usize) -> Result<Table, ScanError> {
    spec.validate()?;
    let points = spec.points();
    let sweep_values = spec.range.points();
    let rows = with_workers(workers, || {
        points
            .par_iter()
            .zip(sweep_values.par_iter())
            .map(|(p, &x)| evaluate_row(spec, p, x))
            .collect::<Vec<_>>()
    })?;
    Ok(Table { header: table_header(spec), columns: column_names(spec), rows })
}

/// Runs several specs, each on the shared pool.
pub fn run_sweeps(specs: &[ScanSpec], workers: usize) -> Result<Vec<Table>, ScanError> {
    if specs.is_empty() {
        return usage("nothing to run");
    }
    specs.iter().map(|s| run_sweep(s, workers)).collect()
}

struct PointEval<'a> {
    spec: &'a ScanSpec,
    p: PointParams,
    r: Result<f64, Error>,
    optimum: Option<Result<(f64, f64), Error>>,
    lossy_qfi: Option<Result<f64, Error>>,
}

impl PointEval<'_> {
    fn r(&self) -> Result<f64, Error> {
        self.r.clone()
    }

    fn scheme(&self) -> Result<SchemeParams, Error> {
        SchemeParams::new(self.p.n, self.r()?, self.p.phi, self.spec.interferometer_scenario(&self.p))
    }

    fn nbar(&self) -> Result<f64, Error> {
        Ok(mean_total_photons(self.p.n, self.r()?))
    }

    fn optimum(&mut self) -> Result<(f64, f64), Error> {
        if self.optimum.is_none() {
            let numeric = self.spec.numeric;
            let value = self
                .scheme()
                .and_then(|s| optimal_sensitivity_over_phi(&s, numeric.phi_interval, numeric.deriv_step));
            self.optimum = Some(value);
        }
        self.optimum.clone().expect("just computed")
    }

    fn qfi(&mut self) -> Result<f64, Error> {
        if self.lossy_qfi.is_none() {
            let value = self.r().and_then(|r| qfi_lossy(&QfiParams::new(self.p.n, r, self.p.eta)?));
            self.lossy_qfi = Some(value);
        }
        self.lossy_qfi.clone().expect("just computed")
    }

    fn cell(&mut self, column: Column) -> Result<Cell, Error> {
        let numeric = self.spec.numeric;
        let num = |v: f64| Cell::Num(v);
        Ok(match column {
            Column::N => Cell::Int(self.p.n as i64),
            Column::R => num(self.r()?),
            Column::Phi => num(self.p.phi),
            Column::Transmissivity => num(self.spec.interferometer_scenario(&self.p).transmissivity()),
            Column::Eta => num(self.p.eta),
            Column::Nbar => num(self.nbar()?),
            Column::Parity => num(parity(&self.scheme()?)?),
            Column::OracleParity => num(oracle_parity(&self.scheme()?, numeric.tail_tol)?),
            Column::Sensitivity => num(sensitivity(&self.scheme()?, numeric.deriv_step)?),
            Column::SensitivityOpt => num(self.optimum()?.1),
            Column::PhiOpt => num(self.optimum()?.0),
            Column::Qfi => num(self.qfi()?),
            Column::Qcrb => num(qcrb(self.qfi()?)?),
            Column::Sql => num(sql(self.nbar()?)?),
            Column::Hl => num(hl(self.nbar()?)?),
            Column::GammaOpt => num(gamma_opt(&QfiParams::new(self.p.n, self.r()?, self.p.eta)?)?),
        })
    }
}

fn evaluate_row(spec: &ScanSpec, p: &PointParams, sweep_value: f64) -> Row {
    let r = match spec.energy_mode {
        Some(nbar) => r_for_energy(nbar, p.n),
        None => Ok(p.r),
    };
    let mut eval = PointEval { spec, p: *p, r, optimum: None, lossy_qfi: None };
    let first = match spec.sweep_variable {
        SweepVariable::N => Cell::Int(p.n as i64),
        _ => Cell::Num(sweep_value),
    };
    let mut cells = vec![first];
    let mut errors: Vec<String> = Vec::new();
    for column in visible_columns(spec) {
        match eval.cell(column) {
            Ok(c) => cells.push(c),
            Err(Error::DivergentSensitivity { .. }) => cells.push(Cell::Inf),
            Err(e) => {
                let msg = format!("{}: {e}", column.name());
                if !errors.iter().any(|m| m.ends_with(&e.to_string())) {
                    errors.push(msg);
                }
                cells.push(Cell::Empty);
            }
        }
    }
    Row { cells, error: (!errors.is_empty()).then(|| errors.join("; ")) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::{ScanScenario, SweepRange};

    #[test]
    fn tmsv_sensitivity_falls_with_squeezing() {
        let mut spec = ScanSpec::new(
            SweepVariable::R,
            SweepRange::Linear { lo: 0.1, hi: 1.5, count: 50 },
            ScanScenario::Ideal,
        );
        spec.fixed.phi = Some(0.001);
        spec.outputs = vec![Column::Sensitivity];
        let t = run_sweep(&spec, 2).unwrap();
        assert_eq!(t.rows.len(), 50);
        let s: Vec<f64> = t.column("sensitivity").unwrap().into_iter().map(Option::unwrap).collect();
        assert!(s.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn divergent_points_are_marked_inf() {
        let mut spec = ScanSpec::new(SweepVariable::Phi, "0,0.1".parse().unwrap(), ScanScenario::Ideal);
        spec.fixed.n = Some(1);
        spec.outputs = vec![Column::Sensitivity];
        let t = run_sweep(&spec, 1).unwrap();
        assert_eq!(t.rows[0].cells[1], Cell::Inf);
        assert!(t.rows[0].error.is_none());
        assert!(matches!(t.rows[1].cells[1], Cell::Num(_)));
    }

    #[test]
    fn failing_points_keep_the_sweep_going() {
        let mut spec = ScanSpec::new(SweepVariable::N, "0,1,2,5".parse().unwrap(), ScanScenario::Ideal);
        spec.energy_mode = Some(8.0);
        spec.outputs = vec![Column::R, Column::Parity];
        let t = run_sweep(&spec, 0).unwrap();
        assert_eq!(t.rows.len(), 4);
        assert!(t.rows[..3].iter().all(|r| r.error.is_none()));
        let last = &t.rows[3];
        assert_eq!(last.cells[1], Cell::Empty);
        assert!(last.error.as_deref().unwrap().contains("infeasible"));
    }

    #[test]
    fn order_is_independent_of_worker_count() {
        let mut spec = ScanSpec::new(
            SweepVariable::Phi,
            SweepRange::Linear { lo: 0.01, hi: 1.0, count: 40 },
            ScanScenario::Internal,
        );
        spec.fixed.t2 = Some(0.9);
        spec.fixed.n = Some(2);
        let a = run_sweep(&spec, 1).unwrap().to_csv().unwrap();
        let b = run_sweep(&spec, 4).unwrap().to_csv().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn swept_column_is_not_repeated() {
        let mut spec = ScanSpec::new(SweepVariable::R, "0.5".parse().unwrap(), ScanScenario::Ideal);
        spec.outputs = vec![Column::R, Column::Parity];
        assert_eq!(column_names(&spec), vec!["r", "parity"]);
    }
}
