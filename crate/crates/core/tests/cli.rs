use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cooperad-lab"));
    cmd.env_remove("COOPERAD_LAB_THREADS");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn scratch_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cooperad-lab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

const GROUP_ALGEBRA: &str = r#"{
    "kind": "bialgebra",
    "name": "hand_written_Z2",
    "dim": 2,
    "basis": ["1", "g"],
    "mult": [[[1, 0], [0, 1]], [[0, 1], [1, 0]]],
    "unit": [1, 0],
    "comult": [[[1, 0], [0, 0]], [[0, 0], [0, 1]]],
    "counit": [1, 1]
}"#;

#[test]
fn full_run_on_the_rational_group_algebra_passes() {
    let o = run(&["check", "--builtin", "Q_Z2", "--field", "Q", "--max-degree", "4", "--suite", "all"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("verdict: pass"));
}

#[test]
fn homology_suite_reports_dual_number_dims() {
    let o = run(&["check", "--builtin", "dual_numbers", "--field", "Q", "-N", "3", "--suite", "homology", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["instance"], "dual_numbers");
    assert_eq!(v["N"], 3);
    let suite = v["suites"].as_array().unwrap().iter().find(|s| s["name"] == "homology").unwrap();
    assert_eq!(suite["dims"], serde_json::json!([2, 1, 1, 1]));
    assert_eq!(suite["fail"], 0);
}

#[test]
fn report_has_the_stable_top_level_schema() {
    let o = run(&["check", "--builtin", "F2_Z2", "-N", "3", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    for key in ["instance", "field", "N", "suites"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let names: Vec<&str> = v["suites"].as_array().unwrap().iter().map(|s| s["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["cooperad", "chain", "homology"]);
    for s in v["suites"].as_array().unwrap() {
        for key in ["pass", "fail", "skip", "witnesses"] {
            assert!(s.get(key).is_some(), "suite {} missing {key}", s["name"]);
        }
    }
}

#[test]
fn homology_dims_of_builtins() {
    for (name, n, dims) in [("F2_Z2", "4", vec![1, 1, 1, 1, 1]), ("Q_Z2", "4", vec![1, 0, 0, 0, 0]), ("mat2", "3", vec![1, 0, 0, 0])] {
        let o = run(&["homology", "--builtin", name, "-N", n, "--json"]);
        assert_eq!(code(&o), 0, "{name}");
        assert_eq!(json(&o)["dims"], serde_json::json!(dims), "{name}");
    }
}

#[test]
fn homology_structure_is_emitted_on_request() {
    let o = run(&["homology", "--builtin", "F2_Z2", "-N", "2", "--structure", "--json"]);
    assert_eq!(code(&o), 0);
    let s = &json(&o)["structure"];
    assert_eq!(s["classes"].as_array().unwrap().len(), 3);
    assert_eq!(s["cup"].as_array().unwrap().len(), 3);
    assert_eq!(s["cobracket"].as_array().unwrap().len(), 2);
    let plain = run(&["homology", "--builtin", "F2_Z2", "-N", "2", "--json"]);
    assert!(json(&plain).get("structure").is_none());
}

#[test]
fn reruns_are_byte_identical() {
    let args = ["check", "--builtin", "sweedler4", "-N", "3", "--json"];
    let first = run(&args);
    let second = bin().args(args).env("COOPERAD_LAB_THREADS", "1").output().unwrap();
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn list_shows_seven_builtins() {
    let o = run(&["list"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    for name in cooperad_lab::instances::BUILTIN_NAMES {
        assert!(text.contains(name), "{name}");
    }
    let v = json(&run(&["list", "--json"]));
    assert_eq!(v.as_array().unwrap().len(), 7);
}

#[test]
fn input_errors_exit_2() {
    let malformed = scratch_file("malformed.json", "{ \"kind\": \"bialgebra\", ");
    let cases: Vec<Vec<String>> = vec![
        vec!["list".into(), "--frobnicate".into()],
        vec!["check".into(), "--input".into(), malformed.display().to_string()],
        vec!["check".into(), "--builtin".into(), "no_such_algebra".into()],
        vec!["check".into(), "--builtin".into(), "Q_Z2".into(), "--field".into(), "Z".into()],
        vec!["check".into(), "--builtin".into(), "Q_Z2".into(), "--field".into(), "F4".into()],
    ];
    for args in cases {
        let o = run(&args.iter().map(String::as_str).collect::<Vec<_>>());
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?} has no diagnostic");
    }
    let o = bin().args(["list"]).env("COOPERAD_LAB_THREADS", "zero").output().unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn json_presentation_runs_and_a_broken_one_exits_1() {
    let good = scratch_file("group.json", GROUP_ALGEBRA);
    let o = run(&["check", "--input", good.to_str().unwrap(), "-N", "3"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));

    // δ(g) = g ⊗ 1 breaks coassociativity against this counit.
    let broken = GROUP_ALGEBRA.replace("[[0, 0], [0, 1]]]", "[[0, 0], [1, 0]]]");
    assert_ne!(broken, GROUP_ALGEBRA);
    let bad = scratch_file("broken.json", &broken);
    let o = run(&["check", "--input", bad.to_str().unwrap(), "-N", "3", "--json"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert!(v["suites"][0]["fail"].as_u64().unwrap() > 0);
}
