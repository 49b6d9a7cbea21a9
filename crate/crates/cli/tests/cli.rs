use std::fs;
use std::process::{Command, Output};

fn udw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_udw"))
        .args(args)
        .env_remove("UDW_OUT_DIR")
        .output()
        .expect("failed to launch udw")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key)?.strip_prefix('='))
        .unwrap_or_else(|| panic!("no {key} in output:\n{text}"))
}

fn value(text: &str, key: &str) -> f64 {
    field(text, key)
        .split_whitespace()
        .next()
        .unwrap()
        .parse()
        .unwrap()
}

#[test]
fn zero_duration_gives_zero_probabilities() {
    let out = udw(&["point", "--m", "10", "--omega", "5", "--delta-tau", "0"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(value(&text, "p_v"), 0.0);
    assert_eq!(value(&text, "p_m"), 0.0);
    assert_eq!(field(&text, "flags"), "");
}

#[test]
fn negative_duration_is_a_usage_error() {
    let out = udw(&["point", "--m", "10", "--omega", "5", "--delta-tau", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("delta_tau = tau_f - tau_i >= 0"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn tau_f_before_tau_i_is_a_usage_error() {
    let out = udw(&[
        "point", "--m", "10", "--omega", "5", "--tau-i", "3", "--tau-f", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("tau_f"), "{}", stderr(&out));
}

#[test]
fn long_resonant_window_is_flagged_nonperturbative() {
    let out = udw(&["point", "--m", "10", "--omega", "10", "--delta-tau", "50"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    let flags: Vec<&str> = field(&text, "flags").split(';').collect();
    assert!(
        flags.contains(&"resonance") && flags.contains(&"nonperturbative"),
        "{text}"
    );
    assert!(value(&text, "p_m") > 1.0);
}

#[test]
fn point_csv_has_header_and_one_row() {
    let out = udw(&[
        "point",
        "--m",
        "10",
        "--omega",
        "-3",
        "--delta-tau",
        "2",
        "--x0",
        "1",
        "--quantities",
        "p_m,p_avg",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2, "{text}");
    assert_eq!(lines[0], "p_m,p_avg,p_m_err,p_avg_err,method,flags");
    let cells: Vec<&str> = lines[1].split(',').collect();
    assert!(cells[0].parse::<f64>().unwrap() > 0.0);
    assert_eq!(cells[4], "quad1d");
}

#[test]
fn tau_f_and_delta_tau_are_mutually_exclusive() {
    let out = udw(&[
        "point",
        "--m",
        "10",
        "--omega",
        "5",
        "--tau-f",
        "1",
        "--delta-tau",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = udw(&["point", "--m", "10", "--omega", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flag_and_quantity_are_usage_errors() {
    assert_eq!(udw(&["point", "--bogus"]).status.code(), Some(2));
    let out = udw(&[
        "point",
        "--m",
        "10",
        "--omega",
        "5",
        "--delta-tau",
        "1",
        "--quantities",
        "p_x",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_documents_exit_codes() {
    let out = udw(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("Exit codes"));
    for code in [
        "0  success",
        "2  usage",
        "3  numerical",
        "4  domain",
        "5  I/O",
    ] {
        assert!(text.contains(code), "missing {code:?}");
    }
}

#[test]
fn unknown_figure_id_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = udw(&[
        "figure",
        "--id",
        "fig9",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("fig9"));
}

#[test]
fn figure_writes_dataset_with_header() {
    let dir = tempfile::tempdir().unwrap();
    let out = udw(&[
        "figure",
        "--id",
        "fig4",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let csv = fs::read_to_string(dir.path().join("fig4.csv")).unwrap();
    let header: Vec<&str> = csv.lines().take_while(|l| l.starts_with('#')).collect();
    assert!(header.iter().any(|l| l.starts_with("# udw_version=")));
    assert!(header.contains(&"# tau_i=0"), "{header:?}");
    let rows = csv.lines().filter(|l| !l.starts_with('#')).count();
    assert_eq!(rows, 1 + 101 * 101);
}

#[test]
fn sweep_from_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("gap.json");
    let target = dir.path().join("gap.csv");
    fs::write(
        &config,
        r#"{"sweep_id": "gap", "m": 10, "delta_tau": 4,
            "axis1": "omega", "axis1_min": -20, "axis1_max": 20, "axis1_steps": 9,
            "outputs": ["p_m", "p_v"]}"#,
    )
    .unwrap();
    let out = udw(&[
        "--jobs",
        "2",
        "sweep",
        "--config",
        config.to_str().unwrap(),
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stderr(&out).contains("wrote 9 rows"));
    let csv = fs::read_to_string(&target).unwrap();
    let mut data = csv.lines().filter(|l| !l.starts_with('#'));
    assert_eq!(
        data.next().unwrap(),
        "omega,p_m,p_v,p_m_err,p_v_err,method,flags,error"
    );
    let omegas: Vec<f64> = data
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(
        omegas,
        vec![-20.0, -15.0, -10.0, -5.0, 0.0, 5.0, 10.0, 15.0, 20.0]
    );
}

#[test]
fn malformed_config_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.json");
    fs::write(
        &config,
        r#"{"sweep_id": "x", "m": 10, "omega": 1, "colour": 3}"#,
    )
    .unwrap();
    let out = udw(&["sweep", "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("colour"), "{}", stderr(&out));
}

#[test]
fn missing_config_is_an_io_error() {
    let out = udw(&["sweep", "--config", "/nonexistent/udw.json"]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn validate_passes_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = udw(&["validate", "--report", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["passed"], true);
    assert_eq!(json["checks"].as_array().unwrap().len(), 9);
    assert!(stderr(&out).lines().all(|l| l.starts_with("PASS")));
}
