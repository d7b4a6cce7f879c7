use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn spec(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("specs").join(name)
}

fn qspectra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qspectra"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn ints(v: &Value) -> Vec<i64> {
    v.as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect()
}

#[test]
fn analyze_example_code() {
    let path = spec("f16_code.json");
    let out = qspectra(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let rep = json(&out);
    assert_eq!(ints(&rep["spectrum"]["A"]), [1, 15, 420, 2460, 1200]);
    assert_eq!(ints(&rep["weights"]), [1, 3, 4]);
    assert_eq!(rep["spec_sha256"].as_str().unwrap().len(), 64);
    assert_eq!(rep["version"], env!("CARGO_PKG_VERSION"));
    let betti = rep["betti"].as_array().unwrap();
    let find = |l: i64, i: i64, j: i64| {
        betti
            .iter()
            .find(|b| b["l"] == l && b["i"] == i && b["j_dim"] == j)
            .map(|b| b["value"].as_i64().unwrap())
    };
    assert_eq!(find(0, 2, 3), Some(76));
    assert_eq!(find(1, 2, 4), Some(14));
}

#[test]
fn analyze_uniform_spec() {
    let path = spec("uniform_2_4.json");
    let rep = json(&qspectra(&["spectrum", path.to_str().unwrap(), "--r", "1"]));
    assert_eq!(ints(&rep["spectrum"]["A"]), [1, 0, 0, 225, 30]);
}

#[test]
fn output_is_identical_across_runs_and_thread_counts() {
    let path = spec("f16_code.json");
    let p = path.to_str().unwrap();
    let a = qspectra(&["analyze", p, "--threads", "1"]);
    let b = qspectra(&["analyze", p, "--threads", "3"]);
    let c = qspectra(&["analyze", p]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn subspace_cap_gives_exit_3() {
    let path = spec("f16_code.json");
    let out = qspectra(&["analyze", path.to_str().unwrap(), "--max-subspaces", "10"]);
    assert_eq!(out.status.code(), Some(3));
    let out = qspectra(&["analyze", path.to_str().unwrap(), "--cap-subspaces", "10"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn bad_input_gives_exit_2() {
    let path = spec("singular.json");
    assert_eq!(qspectra(&["verify", path.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(qspectra(&["analyze", "/nonexistent/spec.json"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let garbled = dir.path().join("garbled.json");
    std::fs::write(&garbled, "{\"p\": 2, \"generator\": ").unwrap();
    assert_eq!(qspectra(&["weights", garbled.to_str().unwrap()]).status.code(), Some(2));
    let path = spec("uniform_2_4.json");
    assert_eq!(qspectra(&["betti", path.to_str().unwrap(), "--format", "csv"]).status.code(), Some(2));
}

#[test]
fn verify_quick_on_uniform() {
    let path = spec("uniform_2_4.json");
    let out = qspectra(&["verify", path.to_str().unwrap(), "--level", "quick"]);
    assert_eq!(out.status.code(), Some(0));
    let rep = json(&out);
    let verdicts = rep["verdicts"].as_array().unwrap();
    assert!(verdicts.len() >= 5);
    assert!(verdicts.iter().all(|v| v["status"] == "pass"), "{verdicts:?}");
}

#[test]
fn verify_full_on_example_code() {
    let path = spec("f16_code.json");
    let out = qspectra(&["verify", path.to_str().unwrap(), "--level", "full"]);
    assert_eq!(out.status.code(), Some(0));
    let rep = json(&out);
    let checks: Vec<&str> = rep["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .inspect(|v| assert_eq!(v["status"], "pass", "{v}"))
        .map(|v| v["check"].as_str().unwrap())
        .collect();
    for needed in ["brute-spectrum-r1", "brute-spectrum-r2", "brute-higher", "classical-lattice", "inclusion-exclusion"] {
        assert!(checks.contains(&needed), "{needed} missing");
    }
}

#[test]
fn verify_full_on_gabidulin_spec() {
    let path = spec("gabidulin_2_4.json");
    let out = qspectra(&["verify", path.to_str().unwrap(), "--level", "full"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn mrd_command() {
    let rep = json(&qspectra(&["mrd", "--q", "2", "--m", "4", "--n", "4", "--k", "2"]));
    assert_eq!(ints(&rep["mrd"]["closed_form"])[3], 225);
    assert_eq!(rep["mrd"]["agree"], true);
    assert_eq!(rep["mrd"]["betti_agree"], true);

    let out = qspectra(&["mrd", "--q", "2", "--m", "5", "--n", "4", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(ints(&json(&out)["mrd"]["closed_form"])[3], 465);

    let out = qspectra(&["mrd", "--q", "2", "--m", "3", "--n", "4", "--k", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_and_text_formats() {
    let path = spec("uniform_2_4.json");
    let out = qspectra(&["spectrum", path.to_str().unwrap(), "--format", "csv"]);
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.starts_with("section,row,column,value\n"));
    assert!(csv.contains("spectrum,1,4,30\n"));
    let out = qspectra(&["weights", path.to_str().unwrap(), "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("generalized weights d_1..d_2: 3 4"));
}

#[test]
fn large_evaluation_points_stay_exact() {
    let path = spec("f16_code.json");
    let rep = json(&qspectra(&["spectrum", path.to_str().unwrap(), "--r", "6"]));
    let top = &rep["spectrum"]["A"][4];
    assert!(top.is_string(), "{top}");
    let a4: u128 = top.as_str().unwrap().parse().unwrap();
    let x: u128 = 1 << 24;
    assert_eq!(a4, x * x * x - 15 * x * x + 62 * x - 48);
}
