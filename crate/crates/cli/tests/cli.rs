use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spin-tqft")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

/// Run with `--json -` and parse the report from standard output.
fn report(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--json", "-"]);
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad report ({e}): {}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    });
    (code(&out), v)
}

fn z(v: &Value) -> (f64, f64) {
    (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

const FHK_M2: &str = r#"{"kind":"matrix","n":2,"ring":"C"}"#;
const SIGNATURE: &str =
    r#"{"algebra":{"kind":"matrix","n":3,"ring":"C","weight":{"type":"signature","p":2,"q":1}},"require":{"symmetric":"required"}}"#;
const C_R: &str = r#"{"algebra":{"kind":"matrix","n":1,"ring":"C_R"},"grading":{"kind":"z2_complex","n":1}}"#;
const CC3: &str = r#"{"kind":"group_cyclic","m":3}"#;

#[test]
fn fhk_matrix_algebra_validates() {
    let (c, v) = report(&["validate", FHK_M2]);
    assert_eq!(c, 0);
    let flags = v["results"]["flags"].as_object().unwrap();
    assert!(flags.values().all(|f| f == &Value::Bool(true)), "{flags:?}");
}

#[test]
fn non_symmetric_algebra_fails_a_symmetry_requirement() {
    let (c, v) = report(&["validate", SIGNATURE]);
    assert_eq!(c, 1);
    assert_eq!(v["results"]["flags"]["symmetric"], Value::Bool(false));
    assert_eq!(v["results"]["flags"]["spherical"], Value::Bool(true));
}

#[test]
fn malformed_input_exits_2() {
    assert_eq!(code(&run(&["validate", r#"{"kind":"#])), 2);
    assert_eq!(code(&run(&["validate", "/nonexistent/model.json"])), 2);
    assert_eq!(code(&run(&["partition", FHK_M2, "--genus", "1", "--spin", "odd"])), 2);
    assert_eq!(code(&run(&["table", FHK_M2, "--genus-range", "3..1"])), 2);
}

#[test]
fn complex_real_line_odd_genus_two() {
    let (c, v) = report(&["partition", C_R, "--genus", "2", "--spin", "odd", "--crossing", "bichar:sign"]);
    assert_eq!(c, 0);
    let (re, im) = z(&v["results"]["Z"]);
    assert!((re + 0.5).abs() < 1e-12 && im.abs() < 1e-12, "{re} {im}");
    assert!(v["residuals"]["direct"].as_f64().unwrap() < 1e-12);
}

#[test]
fn sphere_is_r_times_counit_of_unit() {
    let r = r#"{"kind":"matrix","n":2,"ring":"C","R":0.5}"#;
    let (c, v) = report(&["partition", r, "--genus", "0"]);
    assert_eq!(c, 0);
    // R ε(1) = R · R·n·Tr(1) = 0.5 · 0.5·2·2.
    let (re, _) = z(&v["results"]["Z"]);
    assert!((re - 1.0).abs() < 1e-12);
}

#[test]
fn cyclic_three_solved_crossing() {
    let (c, v) = report(&["partition", CC3, "--genus", "1", "--spin", "even", "--crossing", "solved:1"]);
    assert_eq!(c, 0);
    let (re, _) = z(&v["results"]["Z"]);
    assert!((re - 2.0).abs() < 1e-9);
    let (c, v) = report(&["partition", CC3, "--genus", "2", "--spin", "odd", "--crossing", "solved:1"]);
    assert_eq!(c, 0);
    // (1 + P·2^{1−g}) R^{2−2g} at g = 2, P = −1.
    let (re, _) = z(&v["results"]["Z"]);
    assert!((re - 0.5).abs() < 1e-9);
}

#[test]
fn quaternionic_table() {
    let (c, v) = report(&["table", "--constructor", r#"{"kind":"matrix","n":2,"ring":"H_R"}"#, "--genus-range", "0..3"]);
    assert_eq!(c, 0);
    let rows = v["results"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for (g, row) in rows.iter().enumerate() {
        let expected = 2f64.powi(2 - 2 * g as i32) * 2f64.powi(2 - 2 * g as i32);
        let (re, _) = z(&row["Z"]);
        assert!((re - expected).abs() <= 1e-9 * expected.max(1.0), "g={g}: {re} vs {expected}");
    }
}

#[test]
fn table_columns_differ_iff_eta_differs_from_chi() {
    for (cr, differ) in [("solved:0", false), ("solved:1", true)] {
        let (c, v) = report(&["table", CC3, "--genus-range", "1..1", "--crossing", cr]);
        assert_eq!(c, 0);
        let row = &v["results"]["rows"][0];
        let (e, o) = (z(&row["even"]).0, z(&row["odd"]).0);
        assert_eq!((e - o).abs() > 1e-9, differ, "{cr}: {e} {o}");
    }
}

#[test]
fn solve_small_cyclic_algebras() {
    let (c, v) = report(&["solve", r#"{"kind":"group_cyclic","m":2}"#, "--expect", "2"]);
    assert_eq!(c, 0);
    assert_eq!(v["results"]["count"], 2);
    let (c, v) = report(&["solve", CC3, "--expect", "2"]);
    assert_eq!(c, 0);
    let families: Vec<&str> = v["results"]["families"].as_array().unwrap().iter().map(|f| f["relation"].as_str().unwrap()).collect();
    assert_eq!(families, ["equal", "mixed"]);
    assert_eq!(code(&run(&["solve", CC3, "--expect", "3"])), 1);
}

#[test]
fn pachner_check_passes_for_a_special_algebra() {
    let (c, v) = report(&["pachner-check", FHK_M2, "--genus", "2", "--moves", "4", "--trials", "2", "--seed", "5"]);
    assert_eq!(c, 0);
    for t in v["results"]["trials"].as_array().unwrap() {
        assert_eq!(t["euler_characteristic"], -2);
    }
}

#[test]
fn output_is_byte_stable_and_timing_is_opt_in() {
    let args = ["partition", C_R, "--genus", "3", "--spin", "even", "--crossing", "bichar:sign", "--json", "-"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(!String::from_utf8_lossy(&a.stdout).contains("wall_time"));
    let mut timed = args.to_vec();
    timed.push("--timing");
    assert!(String::from_utf8_lossy(&run(&timed).stdout).contains("wall_time_s"));
}

#[test]
fn report_file_matches_stdout_report() {
    let dir = std::env::temp_dir().join(format!("spin-tqft-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = run(&["validate", FHK_M2, "--json", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("all requested flags pass"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["passed"], Value::Bool(true));
    assert_eq!(v["inputs_sha256"].as_str().unwrap().len(), 64);
    std::fs::remove_dir_all(&dir).unwrap();
}
