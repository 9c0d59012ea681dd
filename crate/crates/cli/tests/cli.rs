use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_heckeaf"))
}

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> PathBuf {
    root().join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", stdout(o)))
}

fn schema(name: &str) -> jsonschema::Validator {
    let text = std::fs::read_to_string(root().join("schemas").join(name)).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(v: &jsonschema::Validator, doc: &Value) {
    let errors: Vec<String> = v.iter_errors(doc).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "schema violations: {errors:#?}");
}

fn strs(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
}

#[test]
fn cf_terminating_rational() {
    let o = run(&["cf", "355/113", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["terminated"], true);
    assert_eq!(v["preperiod"], serde_json::json!([["3"], ["7"], ["16"]]));
    assert_eq!(strs(&v["convergents"]), ["3", "22/7", "355/113"]);
}

#[test]
fn cf_quadratic_is_periodic() {
    let o = run(&["cf", "--poly", "x^2-2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["preperiod"], serde_json::json!([["1"]]));
    assert_eq!(v["period"], serde_json::json!([["2"]]));
    let text = stdout(&run(&["cf", "--poly", "x^2-2"]));
    assert!(text.contains("period [2]"), "{text}");
}

#[test]
fn cf_exit_codes() {
    assert_eq!(run(&["cf", "abc"]).status.code(), Some(2));
    assert_eq!(run(&["cf", "0/1"]).status.code(), Some(3));
    assert_eq!(run(&["cf", "--poly", "x^2-4"]).status.code(), Some(2));
}

#[test]
fn jpa_golden_and_export() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("golden.dot");
    let o = run(&[
        "jpa",
        "--poly",
        "x^2-x-1",
        "--theta",
        "0,1",
        "--json",
        "--export",
        "dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["period"], serde_json::json!([["1"]]));
    assert_eq!(v["af"]["type"], "stationary");
    assert_eq!(strs(&v["af"]["char_poly"]), ["-1", "-1", "1"]);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph bratteli {"), "{text}");

    let js = dir.path().join("golden.json");
    let o = run(&["jpa", "--poly", "x^2-x-1", "--theta", "0,1", "--export", "json", js.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let exported: Value = serde_json::from_str(&std::fs::read_to_string(&js).unwrap()).unwrap();
    assert!(exported.is_object());
}

#[test]
fn jpa_bad_theta_is_input_error() {
    let o = run(&["jpa", "--poly", "x^2-x-1", "--theta", "0,q"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn factor_roundtrip_and_errors() {
    let o = run(&["factor", "[[1,1],[1,2]]", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["digits"], serde_json::json!([["1"], ["1"]]));
    assert_eq!(stdout(&run(&["factor", "[[1,1],[1,2]]"])).trim(), "[(1),(1)]");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    std::fs::write(&path, "[[0,1],[1,1]]").unwrap();
    let o = run(&["factor", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "[(1)]");

    assert_eq!(run(&["factor", "[[1,0],[0,1]]"]).status.code(), Some(3));
    assert_eq!(run(&["factor", "[[1,"]).status.code(), Some(2));
}

fn af_report(fixture_name: &str, conjugates: bool, dir: &Path) -> (Output, Value) {
    let out = dir.join(format!("{fixture_name}.report.json"));
    let fx = fixture(fixture_name);
    let mut args = vec!["af", fx.to_str().unwrap(), "--report", out.to_str().unwrap()];
    if conjugates {
        args.push("--conjugates");
    }
    let o = run(&args);
    let report = serde_json::from_str(&std::fs::read_to_string(&out).expect("report written")).unwrap();
    (o, report)
}

#[test]
fn af_level_11_is_trivial() {
    let dir = tempfile::tempdir().unwrap();
    let (o, r) = af_report("newform_11.json", false, dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(r["status"], "ok");
    assert_eq!(r["type"], "trivial");
    assert_valid(&schema("run_report.schema.json"), &r);
}

#[test]
fn af_level_23_with_conjugates() {
    let dir = tempfile::tempdir().unwrap();
    let (o, r) = af_report("newform_23.json", true, dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(r["type"], "stationary");
    let result = &r["result"];
    assert_eq!(strs(&result["field"]["minpoly"]), ["-1", "1", "1"]);
    assert_eq!(result["unit"]["norm"].as_str().map(|n| n == "1" || n == "-1"), Some(true));
    let conj = &r["conjugates"];
    assert_eq!(conj["runs"].as_array().unwrap().len(), 2);
    assert_eq!(conj["char_polys_equal"], true);
    assert_eq!(conj["verdicts"][0]["verdict"]["verdict"], "similar_over_q");
    assert_valid(&schema("run_report.schema.json"), &r);
}

#[test]
fn af_stdout_is_the_report_without_flag() {
    let o = run(&["af", fixture("newform_11.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["type"], "trivial");
}

#[test]
fn af_is_deterministic_up_to_timings() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let (_, mut ra) = af_report("newform_29.json", true, a.path());
    let (_, mut rb) = af_report("newform_29.json", true, b.path());
    ra["timings_ms"] = Value::Null;
    rb["timings_ms"] = Value::Null;
    assert_eq!(ra, rb);
}

#[test]
fn af_corrupted_fixture_writes_error_report() {
    let dir = tempfile::tempdir().unwrap();
    let mut data: Value = serde_json::from_str(&std::fs::read_to_string(fixture("newform_23.json")).unwrap()).unwrap();
    // c(6) must equal c(2) c(3).
    let c6 = data["an"][5][0].as_str().unwrap().parse::<i64>().unwrap();
    data["an"][5][0] = Value::String((c6 + 1).to_string());
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, data.to_string()).unwrap();
    let out = dir.path().join("bad.report.json");
    let o = run(&["af", bad.to_str().unwrap(), "--report", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r["status"], "error");
    assert_eq!(r["error"]["kind"], "HeckeRelationViolated");
    assert_valid(&schema("run_report.schema.json"), &r);
}

#[test]
fn af_missing_fixture_is_input_error() {
    let o = run(&["af", "/nonexistent/fixture.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fixtures_match_schema() {
    let v = schema("newform_fixture.schema.json");
    for entry in std::fs::read_dir(root().join("fixtures")).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "json") {
            let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
            assert_valid(&v, &doc);
        }
    }
}
