use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn twinfock(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twinfock"))
        .args(args)
        .env_remove("TWINFOCK_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("twinfock-cli-{}-{tag}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn sweep_writes_csv_with_json_header() {
    let o = twinfock(&["sweep", "--sweep", "r", "--range", "0.5:0.7:3", "--phi", "0.01", "--columns", "parity,sensitivity"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# {"));
    let header: serde_json::Value = serde_json::from_str(&lines[0][2..]).unwrap();
    assert_eq!(header["tool"], "twinfock");
    assert_eq!(header["spec"]["sweep_variable"], "r");
    assert_eq!(lines[1], "r,parity,sensitivity,error");
    assert_eq!(lines.len(), 5);
    assert!(lines[2].starts_with("5.0000000000000000e-1,"));
    assert!(lines[2].ends_with(','));
}

#[test]
fn json_format_and_inf_cells() {
    let o = twinfock(&["sweep", "--sweep", "phi", "--range", "0,0.1", "--n", "1", "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rows"][0]["sensitivity"], "inf");
    assert!(v["rows"][1]["sensitivity"].is_f64());
    assert!(v["rows"][1]["error"].is_null());
}

#[test]
fn invalid_specs_are_usage_errors() {
    let o = twinfock(&["sweep", "--sweep", "r", "--range", "0.1:1:5", "--r", "0.3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("must not also be fixed"));

    let o = twinfock(&["sweep", "--sweep", "T1", "--range", "0.8:1:3", "--scenario", "internal"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_preset_lists_names() {
    let o = twinfock(&["figure", "fig99"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("fig4b") && err.contains("fig12d"), "{err}");
}

#[test]
fn figure_uses_env_out_dir_and_writes_manifest() {
    let dir = scratch_dir("env");
    let o = Command::new(env!("CARGO_BIN_EXE_twinfock"))
        .args(["figure", "fig12a"])
        .env("TWINFOCK_OUT_DIR", &dir)
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("fig12a_manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["preset"], "fig12a");
    assert_eq!(manifest["parameters"]["n"], serde_json::json!([0]));
    assert!(manifest["tolerances"]["tail_tol"].is_f64());
    for entry in manifest["series"].as_array().unwrap() {
        assert!(dir.join(entry["file"].as_str().unwrap()).is_file());
    }
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = scratch_dir("config");
    let config = dir.join("run.toml");
    fs::write(&config, "sweep = \"phi\"\nrange = \"0.1,0.2\"\nn = 2\nr = 0.5\ncolumns = \"nbar\"\n").unwrap();
    let o = twinfock(&["sweep", "--config", config.to_str().unwrap(), "--r", "0.7"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let header: serde_json::Value = serde_json::from_str(&text.lines().next().unwrap()[2..]).unwrap();
    assert_eq!(header["spec"]["fixed"]["r"], 0.7);
    assert_eq!(header["spec"]["fixed"]["n"], 2);

    let bad = dir.join("bad.toml");
    fs::write(&bad, "squeeze = 1\n").unwrap();
    let o = twinfock(&["sweep", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn sweep_out_file() {
    let dir = scratch_dir("out");
    let path = dir.join("nested/table.csv");
    let o = twinfock(&["sweep", "--sweep", "eta", "--range", "0.5:1:3", "--scenario", "qfi", "--out", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().nth(1).unwrap(), "eta,nbar,qfi,qcrb,sql,hl,gamma_opt,error");
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn optimize_phi_single_point() {
    let o = twinfock(&["optimize-phi", "--n", "1", "--r", "0.7", "--t1", "0.95"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().nth(2).unwrap().split(',').collect();
    assert_eq!(text.lines().nth(1).unwrap(), "n,nbar,phi_opt,sensitivity_opt,error");
    let phi: f64 = row[2].parse().unwrap();
    assert!(phi > 0.005);
}

#[test]
fn energy_solve_dumps_state() {
    let dir = scratch_dir("energy");
    let dump = dir.join("state.json");
    let o = twinfock(&["energy-solve", "--nbar", "8", "--n", "2", "--dump-state", dump.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let summary: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let r = summary["r"].as_f64().unwrap();
    assert!((r - 0.5 * (9.0f64 / 5.0).acosh()).abs() < 1e-15);

    let state: serde_json::Value = serde_json::from_str(&fs::read_to_string(&dump).unwrap()).unwrap();
    let amps = state["amplitudes"].as_array().unwrap();
    assert!(amps.iter().all(|a| a["k"] == a["l"]));
    let norm: f64 = amps.iter().map(|a| a["re"].as_f64().unwrap().powi(2)).sum();
    assert!((norm - 1.0).abs() < 1e-12);
    fs::remove_dir_all(&dir).unwrap();

    let o = twinfock(&["energy-solve", "--nbar", "3", "--n", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("infeasible"));
}

#[test]
fn verify_quick_passes() {
    let o = twinfock(&["verify", "--workers", "2"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["level"], "quick");
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn figure_list_names_every_preset() {
    let o = twinfock(&["figure", "--list"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 20);
}
