use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_attoqs");

fn attoqs(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("ATTOQS_OUT_DIR").output().expect("spawn attoqs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json(args: &[&str]) -> serde_json::Value {
    let o = attoqs(args);
    assert!(o.status.success(), "{}", stderr(&o));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn delays_at_z18() {
    let v = json(&["delays", "--Z", "18", "--F", "1", "--format", "json"]);
    let tau_db = v["delays"]["tau_dB"]["as"].as_f64().unwrap();
    assert!((tau_db - 27.17).abs() < 0.01, "{tau_db}");
    let q = v["quotients"]["Q_dB"]["value"].as_f64().unwrap();
    assert!((q - 0.9516).abs() < 1e-4, "{q}");
    assert_eq!(v["quotients"]["Q_dB"]["superluminal"], true);
    assert_eq!(v["config"]["Z"], "18");

    let text = stdout(&attoqs(&["delays", "--Z", "18", "--F", "1"]));
    assert!(text.contains("# Z = 18"));
    let row = text.lines().find(|l| l.starts_with("tau_dB")).unwrap();
    let cols: Vec<f64> = row.split_whitespace().skip(1).map(|x| x.parse().unwrap()).collect();
    assert!((cols[1] - 27.17).abs() < 0.01);
    assert!(text.contains("W/cm^2"));
}

#[test]
fn delays_at_the_atomic_field() {
    let v = json(&["delays", "--Z", "1", "--F", "0.0625", "--format", "json"]);
    let ad = &v["delays"]["tau_Ad"];
    assert!((ad["au"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((ad["as"].as_f64().unwrap() - 24.19).abs() < 0.005);
    assert_eq!(v["delays"]["tau_a"]["au"], ad["au"]);
}

#[test]
fn delays_optional_rows() {
    let v = json(&["delays", "--Z", "18", "--F", "1", "--format", "json"]);
    assert!(v["delays"].get("tau_imed").is_none());
    assert!(v["delays"].get("tau_1ph").is_none());
    let v = json(&["delays", "--Z", "18", "--F", "1", "--zeta", "0.5", "--omega", "3", "--format", "json"]);
    assert!(v["delays"]["tau_imed"]["au"].is_number());
    assert!(v["quotients"]["Q_imed_b"]["value"].is_number());
    let nph = v["delays"]["tau_nph"]["au"].as_f64().unwrap();
    let dion = v["delays"]["tau_dion"]["au"].as_f64().unwrap();
    assert!((nph - dion).abs() < 1e-12 * dion);
    assert!(v["parameters"]["gamma_K"].is_number());
}

#[test]
fn barrier_suppression_is_a_domain_error() {
    let o = attoqs(&["delays", "--Z", "50", "--rel", "--F", "9000"]);
    assert_eq!(o.status.code(), Some(3));
    let err = stderr(&o);
    assert!(err.contains("barrier-suppression"), "{err}");
    let f_a: f64 = err.split("F_a = ").nth(1).unwrap().split_whitespace().next().unwrap().parse().unwrap();
    assert!((f_a - 8380.3).abs() < 0.001 * 8380.3, "{f_a}");
}

#[test]
fn exit_codes_separate_config_from_domain() {
    assert_eq!(attoqs(&["delays", "--Z", "18"]).status.code(), Some(2));
    assert_eq!(attoqs(&["delays", "--Z", "x", "--F", "1"]).status.code(), Some(2));
    assert_eq!(attoqs(&["delays", "--Z", "18", "--F", "1", "--dr", "0.1"]).status.code(), Some(2));
    assert_eq!(attoqs(&["delays", "--Z=-1", "--F", "1"]).status.code(), Some(3));
    assert_eq!(attoqs(&["delays", "--Z", "18", "--F", "1"]).status.code(), Some(0));
}

#[test]
fn zeta_qs_small_field() {
    let zeta = |z: &str| {
        let out = stdout(&attoqs(&["zeta-qs", "--Z", z]));
        out.lines().find_map(|l| l.strip_prefix("zeta_QS = ")).map(|v| v.parse::<f64>().unwrap())
    };
    assert!((zeta("50").unwrap() - 0.521).abs() < 5e-4);
    assert!((zeta("35").unwrap() - 0.959).abs() < 1e-3);
    assert_eq!(zeta("10"), None);
    let o = attoqs(&["zeta-qs", "--Z", "10"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("subluminal for all ζ ∈ [0,1]"));
    let out = stdout(&attoqs(&["zeta-qs", "--Z", "50"]));
    assert!(out.contains("mode = small-field"));
    assert!(out.contains("window [F_c, F_a]"));
}

#[test]
fn zeta_qs_at_finite_field() {
    let o = attoqs(&["zeta-qs", "--Z", "50", "--F", "100", "--mode", "thick"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("mode = thick"));
    assert!(stdout(&o).contains("residual"));
}

#[test]
fn critical_fields_z50() {
    let out = stdout(&attoqs(&["critical-fields", "--Z", "50", "--rel"]));
    let get = |name: &str| -> f64 {
        let line = out.lines().find(|l| l.starts_with(name)).unwrap();
        line.split_once(" = ").unwrap().1.split_whitespace().next().unwrap().parse().unwrap()
    };
    assert!((get("F_a ") - 8380.3).abs() < 0.001 * 8380.3);
    assert!((get("F_c ") - 3667.75).abs() < 0.002 * 3667.75);
    assert!((get("F_zeta=1") - 6104.5).abs() < 0.001 * 6104.5);
}

#[test]
fn scan_fig4_columns() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig4.csv");
    let o = attoqs(&["scan", "--preset", "fig4", "--out", path_str(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains(&format!("wrote 2000 rows to {}", out.display())));
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert!(header.contains(&"q_Nad"));
    let zi = header.iter().position(|h| *h == "Z").unwrap();
    let mut zs: Vec<String> = lines.map(|l| l.split(',').nth(zi).unwrap().to_string()).collect();
    zs.dedup();
    assert_eq!(zs, ["15", "30", "35", "40", "50"]);
}

#[test]
fn scan_fig7_columns() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig7.csv");
    assert!(attoqs(&["scan", "--preset", "fig7", "--out", path_str(&out)]).status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let header = text.lines().next().unwrap();
    assert!(header.contains("tau_imed_as") && header.contains("tau_c_imed_as"), "{header}");
    let mut zs: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    zs.dedup();
    assert_eq!(zs, ["35", "50", "100"]);
}

#[test]
fn single_point_scan_is_two_lines() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("one.csv");
    let o = attoqs(&["scan", "--Z", "18", "--F", "1", "--zeta", "0.5", "--out", path_str(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("wrote 1 rows"));
    assert_eq!(std::fs::read_to_string(&out).unwrap().lines().count(), 2);
}

#[test]
fn explicit_grid_axes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("grid.json");
    let o = attoqs(&["scan", "--Z", "18,20", "--F", "log:0.1:10:5", "--format", "json", "--out", path_str(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let rows = v.as_array().map(|a| a.len()).or_else(|| v["rows"].as_array().map(|a| a.len())).unwrap();
    assert_eq!(rows, 10);
}

#[test]
fn unknown_preset_lists_presets() {
    let o = attoqs(&["scan", "--preset", "fig99"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("fig99") && err.contains("fig2a") && err.contains("fig7"), "{err}");
}

#[test]
fn preset_rejects_grid_flags() {
    let o = attoqs(&["scan", "--preset", "fig4", "--Z", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# z18\nZ = 18\nF = 2\nformat = json\n").unwrap();
    let from_file = json(&["delays", "--config", path_str(&cfg)]);
    assert_eq!(from_file["config"]["F"], "2");
    let overridden = json(&["delays", "--config", path_str(&cfg), "--F", "1"]);
    assert_eq!(overridden["config"]["F"], "1");
    assert_eq!(overridden["config"]["Z"], "18");

    std::fs::write(&cfg, "Z = 18\nbogus = 1\n").unwrap();
    let o = attoqs(&["delays", "--config", path_str(&cfg)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"));
}

#[test]
fn missing_config_file_is_io_error() {
    assert_eq!(attoqs(&["delays", "--config", "/nonexistent/run.cfg"]).status.code(), Some(5));
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(BIN)
        .args(["scan", "--Z", "18", "--F", "1", "--out", "sub/one.csv"])
        .env("ATTOQS_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(dir.path().join("sub/one.csv").exists());
    assert!(dir.path().join("sub/one.csv.run.cfg").exists());
}

#[test]
fn sidecar_config_reproduces_scan() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig2b.csv");
    assert!(attoqs(&["scan", "--preset", "fig2b", "--out", path_str(&out)]).status.success());
    let first = std::fs::read(&out).unwrap();
    let sidecar = dir.path().join("fig2b.csv.run.cfg");
    std::fs::remove_file(&out).unwrap();
    let o = attoqs(&["scan", "--config", path_str(&sidecar)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(std::fs::read(&out).unwrap(), first);

    let grid = dir.path().join("grid.csv");
    assert!(attoqs(&["scan", "--Z", "3:40:7", "--F", "0.5", "--zeta", "0.3", "--out", path_str(&grid)])
        .status
        .success());
    let first = std::fs::read(&grid).unwrap();
    std::fs::remove_file(&grid).unwrap();
    let cfg = dir.path().join("grid.csv.run.cfg");
    assert!(attoqs(&["scan", "--config", path_str(&cfg)]).status.success());
    assert_eq!(std::fs::read(&grid).unwrap(), first);
}

#[test]
fn memory_guard_names_count_and_limit() {
    let o = attoqs(&["tdse", "--L-max", "101", "--dry-run"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("10404") && err.contains("10201"), "{err}");
}

#[test]
fn full_scale_configuration_dry_run() {
    let o = attoqs(&[
        "tdse",
        "--Z",
        "18",
        "--F0",
        "50",
        "--omega",
        "3",
        "--L-max",
        "100",
        "--r-max",
        "400",
        "--dr",
        "0.01",
        "--dry-run",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("not desk scale"));
    assert!(stdout(&o).contains("L_max = 100"));
}

#[test]
fn zero_field_reports_no_ionization() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let o = attoqs(&[
        "tdse",
        "--F0",
        "0",
        "--L-max",
        "2",
        "--r-max",
        "30",
        "--n-p",
        "40",
        "--n-phi",
        "36",
        "--out",
        path_str(&out),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("no ionization"));
    let report = std::fs::read_to_string(out.join("report.txt")).unwrap();
    assert!(report.contains("offset = undefined (no ionization)"));
    assert!(!report.contains("theta ="));
}

#[test]
fn tdse_writes_all_outputs_and_reproduces() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let args = [
        "tdse",
        "--F0",
        "0.3",
        "--omega",
        "1",
        "--L-max",
        "4",
        "--r-max",
        "30",
        "--dt",
        "0.05",
        "--n-p",
        "60",
        "--n-phi",
        "90",
        "--out",
        path_str(&out),
    ];
    let o = attoqs(&args);
    assert!(o.status.success(), "{}", stderr(&o));
    for f in ["state.bin", "momentum.csv", "angular.csv", "report.txt", "run.cfg"] {
        assert!(out.join(f).exists(), "{f}");
    }
    let report = std::fs::read_to_string(out.join("report.txt")).unwrap();
    assert!(report.contains("# L_max = 4"));
    let drift: f64 = report.lines().find_map(|l| l.strip_prefix("max_norm_drift = ")).unwrap().parse().unwrap();
    assert!(drift < 1e-6);
    assert!(report.contains("tau_as = "));
    let angular = std::fs::read_to_string(out.join("angular.csv")).unwrap();
    assert!(angular.contains("# F0 = 0.3"));
    assert_eq!(angular.lines().filter(|l| !l.starts_with('#')).count(), 91);

    let first: Vec<Vec<u8>> = ["state.bin", "momentum.csv", "angular.csv", "report.txt"]
        .iter()
        .map(|f| std::fs::read(out.join(f)).unwrap())
        .collect();
    let o = attoqs(&["tdse", "--config", path_str(&out.join("run.cfg"))]);
    assert!(o.status.success(), "{}", stderr(&o));
    for (f, bytes) in ["state.bin", "momentum.csv", "angular.csv", "report.txt"].iter().zip(&first) {
        assert_eq!(&std::fs::read(out.join(f)).unwrap(), bytes, "{f}");
    }
}
