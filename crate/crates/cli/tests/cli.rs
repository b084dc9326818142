use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn pinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pinv")).args(args).output().expect("pinv runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, v: &Value) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn permutative_suite_passes() {
    let out = pinv(&["check", "--suite", "permutative", "--gamma", "HZ2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!((v["failed"].as_u64(), v["skipped"].as_u64()), (Some(0), Some(0)));
    assert!(v["checked"].as_u64().unwrap() > 0);
}

#[test]
fn stored_symmetry_counterexample() {
    let f = fixture("symmetry_counterexample.json");
    let objects = r#"[{"m":[2,1],"x":["(1,0)","(1)"]},{"m":[2],"x":["(1,1)"]}]"#;
    let out = pinv(&["check", "--suite", "symmetry", "-w", &f, "--multimorphism", "mu", "--sigma", "1,0", "--objects", objects]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["equal"], json!(false));
    assert_eq!(v["iso_valid"], json!(true));
}

#[test]
fn unit_input_gives_unit() {
    let out = pinv(&["apply", "mu:HBool", "--objects", r#"[{"m":[],"x":[]},{"m":[1],"x":["(1)"]}]"#]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["object"], json!({"m": [], "x": []}));
}

#[test]
fn unknown_version_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_temp(&dir, "v2.json", &json!({"version": 2}));
    let out = pinv(&["validate", &p]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["error"].as_str().unwrap().contains("version"));
}

#[test]
fn truncation_exceeded_exits_3() {
    let out = pinv(&["pcat", "HBool", "--truncation", "1"]);
    assert_eq!(out.status.code(), Some(3));
    let out = pinv(&["check", "--suite", "ring", "--monoid", "HBool", "--truncation", "2", "--bound-entry", "2", "--bound-length", "1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn output_is_deterministic() {
    let args = ["check", "--suite", "multilinear", "--multimorphism", "mu:HZ2", "--bound-length", "1"];
    let a = pinv(&args);
    let b = pinv(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn corrupted_gamma_fails_validation() {
    let x = pinv_core::fixtures::hz2(1);
    let mut g = pinv_core::io::gamma_to_json(&x).unwrap();
    // Let the identity of ⟨1⟩ act by swapping the two objects.
    for entry in g["action"].as_array_mut().unwrap() {
        if entry["map"] == json!({"dom": 1, "cod": 1, "values": [1]}) {
            entry["functor"] = json!({
                "objects": {"(0)": "(1)", "(1)": "(0)"},
                "morphisms": {"(1_0)": "(1_1)", "(1_1)": "(1_0)"},
            });
        }
    }
    let dir = tempfile::tempdir().unwrap();
    let good = write_temp(&dir, "good.json", &json!({"version": 1, "gammas": {"G": pinv_core::io::gamma_to_json(&x).unwrap()}}));
    let bad = write_temp(&dir, "bad.json", &json!({"version": 1, "gammas": {"G": g}}));
    assert_eq!(pinv(&["validate", &good]).status.code(), Some(0));
    let out = pinv(&["validate", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["ok"], json!(false));
}
