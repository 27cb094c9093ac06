use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_designwalk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

fn generate(dir: &Path, family: &str, param: &str) -> String {
    let path = dir.join(format!("{family}{param}.txt"));
    let p = path.to_str().unwrap().to_string();
    let o = run(&["generate", family, param, "--out", &p]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    p
}

#[test]
fn generated_designs_validate() {
    let dir = tempfile::tempdir().unwrap();
    for (family, param, v) in [("pg", "3", 13), ("paley", "11", 11)] {
        let path = generate(dir.path(), family, param);
        let o = run(&["validate", "-d", &path]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let doc = json(&o);
        assert_eq!(doc["result"]["passed"], true);
        assert_eq!(doc["meta"]["design"]["v"], v);
        assert!(doc["result"]["breached"].as_array().unwrap().is_empty());
    }
}

#[test]
fn generate_summary_goes_to_stderr_without_out() {
    let o = run(&["generate", "pg", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("7 7 2 1\n"));
    assert!(stderr(&o).contains("v=7 b=7 r=3 k=3 t=2 lambda=1"));
}

#[test]
fn non_prime_order_is_rejected() {
    let o = run(&["generate", "pg", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not prime"));
}

#[test]
fn verify_alias_accepts_fano() {
    let o = run(&["verify", "-d", "fano"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn corrupted_file_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = generate(dir.path(), "pg", "3");
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    // Flip the first entry of the first incidence row.
    let row = &mut lines[1];
    let flipped = if row.starts_with('0') { "1" } else { "0" };
    row.replace_range(0..1, flipped);
    std::fs::write(&path, lines.join("\n") + "\n").unwrap();

    let o = run(&["verify", "-d", &path]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    let err = stderr(&o);
    assert!(err.contains("design check failed"), "{err}");
    assert!(err.contains("identity violated: JN = NJ"), "{err}");
    assert!(json(&o)["result"]["passed"] == false);
}

#[test]
fn degenerate_design_is_an_input_error() {
    let o = run(&["verify", "-d", "complete:4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("degenerate"));
}

#[test]
fn predict_reports_every_tier() {
    let o = run(&["predict", "-d", "fano"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let p = &json(&o)["result"]["prediction"];
    for field in ["gamma", "eps", "t_opt", "p_succ", "exactness", "finite_v", "leading"] {
        assert!(!p[field].is_null(), "missing {field}");
    }
    let gamma = p["gamma"].as_f64().unwrap();
    assert!((gamma - 0.379252).abs() < 1e-6);
}

#[test]
fn predict_rejects_csv() {
    let o = run(&["predict", "-d", "fano", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn simulate_csv_has_per_vertex_columns() {
    let o = run(&[
        "simulate", "-d", "pg:3", "--marked", "0,1", "--per-vertex", "--samples", "100",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let mut data = out.lines().filter(|l| !l.starts_with('#'));
    assert_eq!(data.next(), Some("t,p_total,p_w0,p_w1"));
    let rows: Vec<Vec<f64>> = data
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 100);
    for r in &rows {
        assert!((r[1] - r[2] - r[3]).abs() < 1e-12);
    }
}

#[test]
fn simulate_needs_a_window_without_prediction() {
    let o = run(&["simulate", "-d", "pg:3", "--marked", "0,1,14", "--gamma", "0.3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--tmax"));
}

#[test]
fn empty_sweep_prints_header_only() {
    let o = run(&["sweep", "pg"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let data: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data.len(), 1);
    assert!(data[0].starts_with("family,param,v,k,case,gamma"));
}

#[test]
fn sweep_is_deterministic_and_keeps_order() {
    let args = ["sweep", "pg", "5,2,4,3", "--samples", "200", "--jobs", "4"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let out = stdout(&a);
    let params: Vec<&str> = out
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap())
        .collect();
    assert_eq!(params, ["5", "2", "4", "3"]);
    let bad = out.lines().find(|l| l.starts_with("pg,4,")).unwrap();
    assert!(bad.contains("not prime"));
}

#[test]
fn compare_lists_tiers() {
    let o = run(&["compare", "-d", "pg:5", "--same-part", "4:POINT", "--samples", "400"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report = &json(&o)["result"];
    let tiers: Vec<&str> = report["tiers"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["tier"].as_str().unwrap())
        .collect();
    assert!(tiers.contains(&"leading"));
    assert!(tiers.contains(&"root"));
    assert!(report["p_peak"].as_f64().unwrap() > 0.5);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spec.json");
    let o = run(&["spectrum", "-d", "pg:3", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(doc["result"]["multiplicities"][1], 12);
}

#[test]
fn paley_same_part_sweep_approaches_leading_order() {
    let o = run(&[
        "sweep", "paley", "7,11,19,23", "--same-part", "2:POINT", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = json(&o)["result"].as_array().unwrap().clone();
    let errs: Vec<f64> = rows
        .iter()
        .map(|r| {
            let k = r["k"].as_f64().unwrap();
            (r["p_peak"].as_f64().unwrap() - k / (k + 1.0)).abs()
        })
        .collect();
    assert_eq!(errs.len(), 4);
    assert!(errs[3] < errs[0], "{errs:?}");
    assert!(errs[3] < 0.05, "{errs:?}");
}
