use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use scalekit::formats::{read_signal_csv, EmpiricalJson, PsdJson, ReportJson, SpectrumJson, VerdictJson};
use scalekit::json::parse;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn scalekit(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_scalekit"));
    cmd.args(args).env_remove("SCALEKIT_MAX_GRID");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn dissipative_constant_passes() {
    let sys = fixture("geometric.json");
    let o = scalekit(&["analyze", "--property", "dissipative", "--system", path(&sys)], &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r: ReportJson = parse(&stdout(&o), "stdout").unwrap();
    assert_eq!(r.verdict, VerdictJson::Pass);
    assert!((r.sufficient_upper.unwrap() - 0.9).abs() <= 1e-10);
}

#[test]
fn moments_check_rejects_with_exit_one() {
    let o = scalekit(&["moments-check", "--moments", r#"{"t":[[1,0],[0.8,0],[0,0]]}"#], &[]);
    assert_eq!(o.status.code(), Some(1));
    let r: PsdJson = parse(&stdout(&o), "stdout").unwrap();
    assert!(!r.is_psd && (r.min_eigenvalue + 0.13137).abs() <= 1e-4);
    let file = format!("@{}", path(&fixture("moments.json")));
    assert_eq!(
        stdout(&scalekit(&["moments-check", "--moments", &file], &[])),
        stdout(&o)
    );
}

#[test]
fn oracle_and_filter_agree() {
    let (h, u) = (fixture("h.csv"), fixture("u.csv"));
    let run = |args: &[&str]| {
        let o = scalekit(args, &[]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        read_signal_csv(&stdout(&o), "stdout").unwrap()
    };
    let oracle = run(&["oracle", "--h", path(&h), "--u", path(&u)]);
    let filter = run(&["filter", "--h", path(&h), "--u", path(&u)]);
    let fast = run(&["filter", "--fast", "--h", path(&h), "--u", path(&u)]);
    assert!(oracle.max_abs_diff(&filter) <= 1e-12);
    assert!(oracle.max_abs_diff(&fast) <= 1e-12);
    assert_eq!(oracle.len(), 6);
}

#[test]
fn causal_filter_refuses_negative_support() {
    let (h, u) = (fixture("h.csv"), fixture("u.csv"));
    let o = scalekit(&["filter", "--causal", "--h", path(&h), "--u", path(&u)], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("scale-causal"));
}

#[test]
fn failing_system_exits_one_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let sys = dir.path().join("sys.json");
    std::fs::write(&sys, r#"{"shape":[2,1],"origin":[0],"data":[[1,0],[1,0]]}"#).unwrap();
    let o = scalekit(&["analyze", "--property", "dissipative", "--system", path(&sys)], &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("\"kind\": \"violating_input\""));
}

#[test]
fn exhausted_budget_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let sys = dir.path().join("sys.json");
    std::fs::write(
        &sys,
        r#"{"shape":[2,2],"origin":[0],"data":[[0.5,0],[0,0],[0,0],[0.5,0]]}"#,
    )
    .unwrap();
    let args = ["analyze", "--property", "dissipative", "--system", path(&sys)];
    assert_eq!(scalekit(&args, &[("SCALEKIT_MAX_GRID", "4")]).status.code(), Some(3));
    assert_eq!(scalekit(&args, &[]).status.code(), Some(0));
    let bad = scalekit(&args, &[("SCALEKIT_MAX_GRID", "lots")]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).contains("SCALEKIT_MAX_GRID"));
}

#[test]
fn parse_errors_report_location() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("bad.csv");
    std::fs::write(&csv, "n,k1,re,im\n0,0,1,0\n1,x,2,0\n").unwrap();
    let o = scalekit(&["filter", "--h", path(&csv), "--u", path(&csv)], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad.csv:3: column k1"), "{}", stderr(&o));

    let json = dir.path().join("bad.json");
    std::fs::write(&json, "{\"shape\": [1, 1],\n \"origin\": [0],\n \"data\": [[1, 0],]}").unwrap();
    let o = scalekit(&["analyze", "--property", "bibo", "--system", path(&json)], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad.json:3:"), "{}", stderr(&o));

    let group = dir.path().join("group.json");
    std::fs::write(&group, r#"{"p":1,"generators":[{"a":[1,0],"b":[0.5,0]}]}"#).unwrap();
    let o = scalekit(
        &[
            "scale-transform",
            "--group",
            path(&group),
            "--input",
            path(&fixture("coeffs.json")),
        ],
        &[],
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("field `generators[0]`"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(scalekit(&["analyze"], &[]).status.code(), Some(2));
    assert_eq!(scalekit(&["frobnicate"], &[]).status.code(), Some(2));
    assert_eq!(scalekit(&["--help"], &[]).status.code(), Some(0));
    let o = scalekit(&["moments-check", "--moments", "{}", "--tol", "-1"], &[]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn report_replays_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let o = scalekit(
        &[
            "analyze",
            "--property",
            "bibo",
            "--system",
            path(&fixture("h.csv")),
            "--seed",
            "5",
            "--out",
            path(&report),
        ],
        &[],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let v = scalekit(
        &["verify", "--report", path(&report), "--trials", "40", "--seed", "3"],
        &[],
    );
    assert_eq!(v.status.code(), Some(0), "{}", stderr(&v));
    let e: EmpiricalJson = parse(&stdout(&v), "stdout").unwrap();
    assert!(!e.analyzer_bug && e.max_ratio <= 1.0 && e.trials == 40);
    let direct = scalekit(
        &[
            "verify",
            "--property",
            "bibo",
            "--system",
            path(&fixture("h.csv")),
            "--trials",
            "40",
            "--seed",
            "3",
        ],
        &[],
    );
    assert_eq!(stdout(&direct), stdout(&v));
}

#[test]
fn spectrum_matches_gtf_on_grid() {
    let sys = fixture("h.csv");
    let o = scalekit(
        &["spectrum", "--system", path(&sys), "--z", "0.3,-0.2", "--grid", "4,8"],
        &[],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let s: SpectrumJson = parse(&stdout(&o), "stdout").unwrap();
    assert_eq!(s.grid_sizes, vec![4, 8]);
    assert_eq!(s.values.len(), 32);
    let csv = scalekit(
        &[
            "spectrum",
            "--system",
            path(&sys),
            "--z",
            "0.3,-0.2",
            "--grid",
            "4,8",
            "--format",
            "csv",
        ],
        &[],
    );
    let text = stdout(&csv);
    assert!(text.starts_with("j1,j2,re,im\n"));
    assert_eq!(text.lines().count(), 33);
    // Grid point (j1, j2) = (1, 2) sits at θ = (π/2, π/2), where gtf takes e^{−iθ}.
    let g = scalekit(
        &[
            "gtf-eval",
            "--system",
            path(&sys),
            "--z",
            "0.3,-0.2",
            "--zs",
            "0,-1;0,-1",
        ],
        &[],
    );
    let value: serde_json::Value = serde_json::from_str(&stdout(&g)).unwrap();
    let v = &value["value"];
    let cell = s.values[8 + 2];
    assert!((v[0].as_f64().unwrap() - cell[0]).abs() <= 1e-12);
    assert!((v[1].as_f64().unwrap() - cell[1]).abs() <= 1e-12);
}

#[test]
fn scale_transform_formats() {
    let (group, input) = (fixture("group.json"), fixture("coeffs.json"));
    let o = scalekit(
        &[
            "scale-transform",
            "--group",
            path(&group),
            "--input",
            path(&input),
            "--window=-1:1",
        ],
        &[],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let cols = v["columns"].as_array().unwrap();
    assert_eq!(cols.len(), 3);
    let identity = &cols[1]["coeffs"];
    assert_eq!(identity.as_array().unwrap().len(), 3);
    assert_eq!(identity[1][0].as_f64(), Some(0.5));
    let csv = scalekit(
        &[
            "scale-transform",
            "--group",
            path(&group),
            "--input",
            path(&input),
            "--window=0:1",
            "--format",
            "csv",
            "--time-len",
            "4",
        ],
        &[],
    );
    let s = read_signal_csv(&stdout(&csv), "stdout").unwrap();
    assert!(s.len() <= 4);
    assert_eq!(s.get(1, &scalekit::core::GroupIndex::new(vec![0])).re, 0.5);
}

#[test]
fn stieltjes_lebesgue_arc() {
    let o = scalekit(
        &[
            "stieltjes",
            "--moments",
            r#"{"t":[[1,0],[0,0],[0,0]]}"#,
            "--a",
            "-0.5",
            "--b",
            "1.0",
            "--r",
            "0.5",
        ],
        &[],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["mass"].as_f64().unwrap() - 1.5 / std::f64::consts::TAU).abs() <= 1e-12);
}
