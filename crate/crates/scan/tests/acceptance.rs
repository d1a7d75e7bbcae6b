//! Acceptance suite. Prints one PASS/FAIL line per criterion and fails if any
//! criterion fails. Run with `--nocapture` to see the report.

use std::fs;
use std::path::PathBuf;

use twinfock_scan::presets::{find_preset, run_figure_preset, RunOptions, PRESETS};
use twinfock_scan::spec::{Column, ScanScenario, ScanSpec, SweepRange, SweepVariable};
use twinfock_scan::sweep::run_sweep;
use twinfock_scan::table::Table;
use twinfock_scan::verify::{self, CheckResult};

type Outcome = Result<String, String>;

fn checks(results: &[CheckResult]) -> Outcome {
    let summary: Vec<String> =
        results.iter().map(|c| format!("{} max_error={:.3e} (tol {:.0e})", c.name, c.max_error, c.tolerance)).collect();
    match results.iter().find(|c| !c.passed) {
        None => Ok(summary.join(", ")),
        Some(c) => Err(format!("{c:?}")),
    }
}

fn column(table: &Table, name: &str) -> Result<Vec<f64>, String> {
    let values = table.column(name).ok_or(format!("missing column {name}"))?;
    values.into_iter().map(|v| v.ok_or(format!("empty cell in {name}"))).collect()
}

fn preset_tables(name: &str) -> Result<Vec<(String, Table)>, String> {
    let preset = find_preset(name).map_err(|e| e.to_string())?;
    preset
        .series()
        .into_iter()
        .map(|s| run_sweep(&s.spec, 0).map(|t| (s.name, t)).map_err(|e| e.to_string()))
        .collect()
}

fn series<'a>(tables: &'a [(String, Table)], name: &str) -> Result<&'a Table, String> {
    tables.iter().find(|(n, _)| n == name).map(|(_, t)| t).ok_or(format!("missing series {name}"))
}

fn criterion_1() -> Outcome {
    checks(&[verify::parity_equivalence(&[0, 1, 2, 3])])
}

fn criterion_2() -> Outcome {
    checks(&[verify::tmsv_sensitivity_check(), verify::tmsv_zero_phase_limit(), verify::qcrb_tmsv()])
}

fn criterion_3() -> Outcome {
    checks(&[verify::lossless_reductions(&[0, 1, 2, 3]), verify::qfi_lossless_limit(&[0, 1, 2, 3])])
}

fn criterion_4() -> Outcome {
    checks(&[verify::qfi_identity(&[0, 1, 2, 3]), verify::moments_identity(&[0, 1, 2, 3])])
}

fn criterion_5() -> Outcome {
    if verify::bound_combinations(&[0, 1, 2]).len() != 9 {
        return Err("expected 9 bound combinations".into());
    }
    checks(&[verify::gamma_grid(&[0, 1, 2]), verify::mixed_qfi_bound()])
}

/// Internal loss never hurts more than external loss over the fig7 grid.
fn claim_a() -> Outcome {
    let tables = preset_tables("fig7")?;
    let mut worst = f64::INFINITY;
    for n in 0..=3 {
        let ext = series(&tables, &format!("external_n{n}"))?;
        let int = series(&tables, &format!("internal_n{n}"))?;
        let (te, ti) = (column(ext, "T1")?, column(int, "T2")?);
        if te != ti || te.iter().any(|&t| !(0.7..=0.999).contains(&t)) {
            return Err("transmissivity grids differ or leave [0.7, 0.999]".into());
        }
        for (e, i) in column(ext, "sensitivity")?.into_iter().zip(column(int, "sensitivity")?) {
            worst = worst.min(e - i);
            if i > e {
                return Err(format!("n={n}: internal {i} > external {e}"));
            }
        }
    }
    Ok(format!("min(external - internal) = {worst:.3e}"))
}

/// Sensitivity falls with n at r = 0.7 on the fig3a series.
fn claim_b() -> Outcome {
    let mut detail = Vec::new();
    for t in ["1", "0.95"] {
        let mut values = Vec::new();
        let mut last = f64::INFINITY;
        for n in 0..=3 {
            let preset = find_preset("fig3a").map_err(|e| e.to_string())?;
            let mut spec = preset
                .series()
                .into_iter()
                .find(|s| s.name == format!("n{n}_T1_{t}"))
                .ok_or("missing fig3a series")?
                .spec;
            spec.range = SweepRange::List { values: vec![0.7] };
            let s = column(&run_sweep(&spec, 1).map_err(|e| e.to_string())?, "sensitivity")?[0];
            if !(s < last) {
                return Err(format!("T1={t}: n={n} gives {s}, not below {last}"));
            }
            last = s;
            values.push(format!("{s:.4}"));
        }
        detail.push(format!("T1={t}: {}", values.join(" > ")));
    }
    Ok(detail.join(", "))
}

/// QFI is nondecreasing in eta and in n over the fig10 grid.
fn claim_c() -> Outcome {
    let tables = preset_tables("fig10")?;
    let curves: Vec<Vec<f64>> =
        (0..=3).map(|n| column(series(&tables, &format!("n{n}"))?, "qfi")).collect::<Result<_, _>>()?;
    for (n, c) in curves.iter().enumerate() {
        if let Some(w) = c.windows(2).find(|w| w[1] < w[0]) {
            return Err(format!("n={n}: qfi decreases from {} to {}", w[0], w[1]));
        }
    }
    for n in 1..curves.len() {
        if let Some(k) = (0..curves[n].len()).find(|&k| curves[n][k] < curves[n - 1][k]) {
            return Err(format!("point {k}: qfi(n={n}) < qfi(n={})", n - 1));
        }
    }
    Ok(format!("{} curves x {} points monotone", curves.len(), curves[0].len()))
}

/// Lossless squeezed-vacuum QCRB stays below the Heisenberg limit on fig12a.
fn claim_d() -> Outcome {
    let tables = preset_tables("fig12a")?;
    let t = series(&tables, "eta_1")?;
    let (r, qcrb, hl) = (column(t, "r")?, column(t, "qcrb")?, column(t, "hl")?);
    let mut count = 0;
    for k in 0..r.len() {
        if (0.2 - 1e-9..=1.5 + 1e-9).contains(&r[k]) {
            count += 1;
            if !(qcrb[k] < hl[k]) {
                return Err(format!("r={}: qcrb {} >= hl {}", r[k], qcrb[k], hl[k]));
            }
        }
    }
    if count == 0 {
        return Err("no grid points in [0.2, 1.5]".into());
    }
    Ok(format!("{count} points in [0.2, 1.5]"))
}

/// With T1 = 0.95 the optimal phase moves away from zero.
fn claim_e() -> Outcome {
    let mut spec = ScanSpec::new(SweepVariable::N, SweepRange::List { values: vec![1.0, 2.0, 3.0] }, ScanScenario::External);
    spec.fixed.r = Some(0.7);
    spec.fixed.t1 = Some(0.95);
    spec.outputs = vec![Column::PhiOpt];
    let phi = column(&run_sweep(&spec, 0).map_err(|e| e.to_string())?, "phi_opt")?;
    if let Some(p) = phi.iter().find(|&&p| !(p > 0.005)) {
        return Err(format!("optimal phase {p} is not above 0.005"));
    }
    Ok(format!("phi* = {phi:.4?}"))
}

fn criterion_6() -> Outcome {
    let parts = [("a", claim_a()), ("b", claim_b()), ("c", claim_c()), ("d", claim_d()), ("e", claim_e())];
    let mut lines = Vec::new();
    for (tag, outcome) in parts {
        match outcome {
            Ok(d) => lines.push(format!("({tag}) {d}")),
            Err(e) => return Err(format!("({tag}) {e}")),
        }
    }
    Ok(lines.join("; "))
}

fn criterion_7() -> Outcome {
    checks(&[verify::operator_identity()])
}

fn criterion_8() -> Outcome {
    let base = std::env::temp_dir().join(format!("twinfock-acceptance-{}", std::process::id()));
    let dirs: Vec<PathBuf> = ["first", "second"].iter().map(|d| base.join(d)).collect();
    let result = (|| {
        let mut compared = 0;
        for preset in PRESETS {
            let runs = [
                run_figure_preset(preset.name, &dirs[0], &RunOptions { workers: 0, ..RunOptions::default() }),
                run_figure_preset(preset.name, &dirs[1], &RunOptions { workers: 3, ..RunOptions::default() }),
            ];
            let [a, b] = runs.map(|r| r.map_err(|e| e.to_string()));
            let (a, b) = (a?, b?);
            for (x, y) in a.series.iter().zip(&b.series).chain([(&a.manifest, &b.manifest)]) {
                let (bx, by) = (fs::read(x).map_err(|e| e.to_string())?, fs::read(y).map_err(|e| e.to_string())?);
                if bx != by {
                    return Err(format!("{} differs between runs", x.display()));
                }
                compared += 1;
            }
        }
        Ok(format!("{compared} files identical across {} presets", PRESETS.len()))
    })();
    let _ = fs::remove_dir_all(&base);
    result
}

#[test]
fn acceptance_criteria() {
    let criteria: [(u32, fn() -> Outcome); 8] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
    ];
    let outcomes: Vec<(u32, Outcome)> = std::thread::scope(|scope| {
        let handles: Vec<_> = criteria.iter().map(|&(k, f)| (k, scope.spawn(f))).collect();
        handles
            .into_iter()
            .map(|(k, h)| (k, h.join().unwrap_or_else(|_| Err("panicked".into()))))
            .collect()
    });
    let mut failed = Vec::new();
    for (k, outcome) in &outcomes {
        match outcome {
            Ok(detail) => println!("criterion {k}: PASS  {detail}"),
            Err(reason) => {
                println!("criterion {k}: FAIL  {reason}");
                failed.push(*k);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
