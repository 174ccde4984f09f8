use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    p.to_str().unwrap().to_string()
}

fn chordal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chordal"))
        .args(args)
        .env_remove("CHORDAL_CACHE_DIR")
        .output()
        .unwrap()
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = chordal(args);
    let code = out.status.code().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: stderr {}", String::from_utf8_lossy(&out.stderr));
    });
    (code, v)
}

fn verdict<'a>(v: &'a Value, name: &str) -> &'a Value {
    v["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .find(|x| x["name"] == name)
        .unwrap_or_else(|| panic!("no verdict {name}"))
}

#[test]
fn dims_of_small_spaces() {
    let (code, v) = report(&["dims", "--space", "P2", "--degree", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["dimension"], 3);
    assert_eq!(v["result"]["representatives"].as_array().unwrap().len(), 3);
    let (_, v) = report(&["dims", "--space", "O1", "--degree", "1"]);
    assert_eq!(v["result"]["dimension"], 1);
    let (_, v) = report(&["dims", "--space", "B2", "--degree", "0"]);
    assert_eq!(v["result"]["dimension"], 1);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["dims", "--space", "X2", "--degree", "1"],
        vec!["dims", "--space", "", "--degree", "1"],
        vec!["dims", "--degree", "1"],
        vec!["reduce", "--input", "/nonexistent/file"],
        vec!["cobar", "--n", "3", "--degree", "2", "--flavor", "bogus", "--rational"],
        vec!["solve-associator", "--max-degree", "3"],
        vec!["apply", "--op", "shuffle", "--input"],
    ] {
        let out = chordal(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "support skeleton I\nterm 1\ninternal 0\nedges 0-9\nvertices\nattach 0:0.0 1:0.1\n").unwrap();
    let out = chordal(&["reduce", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
}

#[test]
fn reports_are_deterministic() {
    let args = ["dims", "--space", "P3", "--degree", "2", "--no-timing"];
    assert_eq!(chordal(&args).stdout, chordal(&args).stdout);
    let (_, a) = report(&["tm", "--m", "4"]);
    let (_, mut b) = report(&["tm", "--m", "4"]);
    assert!(a["timing"]["elapsed_seconds"].is_number());
    b["timing"] = a["timing"].clone();
    assert_eq!(a, b);
}

#[test]
fn output_file_is_written_whole() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = chordal(&["snf", "--matrix", &fixture("diag23.txt"), "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["result"]["diagonal"], serde_json::json!(["1", "6"]));
    let names: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(names.len(), 1);
}

#[test]
fn cobar_torsion_within_bound() {
    let (code, v) = report(&["cobar", "--n", "4", "--degree", "3", "--flavor", "sym-lattice", "--torsion"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["bound"], "6912");
    assert!(v["verdicts"][0]["check"].as_str().unwrap().contains("6912"));
    let (code, v) = report(&["cobar", "--n", "2", "--degree", "2", "--flavor", "harr", "--rational"]);
    assert_eq!(code, 0);
    assert!(v["result"]["dim"].is_number());
}

#[test]
fn associator_degree_two_audit() {
    let dir = tempfile::tempdir().unwrap();
    let phi = dir.path().join("phi.txt");
    let (code, v) = report(&["solve-associator", "--max-degree", "2", "--audit", "--emit-phi", phi.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(verdict(&v, "phi_2")["check"], "24 divides 96");
    assert_eq!(verdict(&v, "axioms")["passed"], true);
    let emitted = chordal::serial::parse_element(&std::fs::read_to_string(&phi).unwrap()).unwrap();
    let state = chordal::associator::solve_associator(&chordal::associator::SolveOptions {
        max_degree: 2,
        audit: false,
    })
    .unwrap();
    assert_eq!(emitted, state.phi_diagrams().unwrap());
}

#[test]
fn audit_reports_the_hexagon_mistake_failure() {
    let (code, v) = report(&["audit-denominators", "--max-degree", "2"]);
    assert_eq!(code, 1);
    assert_eq!(verdict(&v, "psi_2")["check"], "8 does not divide 4");
    assert_eq!(verdict(&v, "mu_2")["passed"], true);
    assert_eq!(verdict(&v, "phi_2")["passed"], true);
}

#[test]
fn zhat_of_knots() {
    let (code, v) = report(&["zhat", "--word", &fixture("trefoil.q"), "--max-degree", "3", "--audit"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["skeleton"], "O");
    assert_eq!(v["result"]["coordinates"][1], serde_json::json!(["3/2"]));
    assert_eq!(verdict(&v, "degree 2")["check"], "24 divides 96");
    let (code, v) = report(&["zhat", "--word", &fixture("unknot.q"), "--max-degree", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["coordinates"][1], serde_json::json!(["0"]));
}

#[test]
fn associator_cache_is_reused() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["zhat", "--word", &fixture("trefoil.q"), "--max-degree", "3", "--no-timing"];
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_chordal"))
            .args(args)
            .env("CHORDAL_CACHE_DIR", dir.path())
            .output()
            .unwrap()
            .stdout
    };
    let first = run();
    assert!(dir.path().join("phi-2.txt").exists());
    let second = run();
    assert_eq!(first, second);
    assert_eq!(first, chordal(&args).stdout);
}

#[test]
fn lmo_of_small_surgeries() {
    let (code, v) = report(&["lmo", "--surgery", &fixture("u_plus.surgery"), "--n", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["omega"], serde_json::json!({"1": "1"}));
    let (_, v) = report(&["lmo", "--surgery", &fixture("hopf.surgery"), "--n", "1"]);
    assert_eq!(v["result"]["signature"]["plus"], 2);
    assert_eq!(v["result"]["iota"]["g1.0"], "1/8");
}

#[test]
fn apply_and_chi_on_a_tripod() {
    let tripod = fixture("tripod.txt");
    let (code, v) = report(&["apply", "--op", "eps", "--index", "1", "--input", &tripod]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["terms"], 0);
    let (_, v) = report(&["apply", "--op", "delta", "--index", "2", "--input", &tripod]);
    assert_eq!(v["result"]["support"], "support skeleton I I I");
    let (_, v) = report(&["chi", "--inverse", "--input", &tripod]);
    let back = v["result"]["element"].as_str().unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("chars.txt");
    std::fs::write(&path, back).unwrap();
    let (_, v) = report(&["chi", "--forward", "--input", path.to_str().unwrap()]);
    let round = chordal::serial::parse_element(v["result"]["element"].as_str().unwrap()).unwrap();
    let orig = chordal::serial::parse_element(&std::fs::read_to_string(&tripod).unwrap()).unwrap();
    assert!(chordal::chi::p_normal_form(&round.sub(&orig).unwrap()).unwrap().is_zero());
}
