use std::process::{Command, Output};

use serde_json::Value;

fn tori(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tori")).args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = tori(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

/// Exit code and the one-line diagnostic.
fn fails(args: &[&str]) -> (i32, String) {
    let out = tori(args);
    assert!(out.stdout.is_empty(), "{args:?} wrote to stdout");
    (out.status.code().unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn documented_examples_are_byte_exact() {
    assert_eq!(ok(&["braid", "nf", "a b a"]), "{\"delta_power\":1,\"factors\":[]}\n");
    assert_eq!(
        ok(&["cover", "lift", "a b a b a b a b a b a b"]),
        "{\"matrix\":[[1,0],[0,1]],\"winding\":1,\"arg_num\":[\"2\",\"0\"]}\n"
    );
    assert_eq!(ok(&["lattice", "count", "6"]), "12\n");
}

#[test]
fn numeric_and_letter_words_agree() {
    assert_eq!(ok(&["braid", "nf", "1 2 1"]), ok(&["braid", "nf", "a b a"]));
    assert_eq!(json(&["braid", "eq", "a b a", "b a b"]), Value::Bool(true));
    assert_eq!(json(&["braid", "eq", "a b", "b a"]), Value::Bool(false));
    assert_eq!(json(&["braid", "kernel", "a b a b a b a b a b a b"])["kernel_power"], Value::from(1));
    assert_eq!(json(&["braid", "kernel", "a"])["kernel_power"], Value::Null);
}

#[test]
fn lift_then_phi_round_trips() {
    let word = json(&["braid", "lift", "[[2,3],[1,2]]"]);
    let word = word["word"].as_str().unwrap().to_string();
    assert_eq!(json(&["braid", "phi", &word]), serde_json::json!([[2, 3], [1, 2]]));
}

#[test]
fn lattice_and_orbit_verbs() {
    let subs = json(&["lattice", "subgroups", "4"]);
    assert_eq!(subs.as_array().unwrap().len(), 7);
    assert_eq!(json(&["lattice", "enumerate", "4"]).as_array().unwrap().len(), 7);
    let k = json(&["lattice", "kernel", "[[2,0],[0,3]]"]);
    assert_eq!(k["order"], "6");
    assert_eq!(json(&["orbit", "hom", "(1/2,0)", "(1/2,0) (0,1/2)"]), Value::Bool(true));
    assert_eq!(json(&["orbit", "hom", "(0,1/2)", "(1/2,0)"]), Value::Bool(false));
    let f = json(&["orbit", "morphism", "", "(1/2,0)", "(3/4,1/3)"]);
    assert_eq!(f["translation"], serde_json::json!(["1/4", "1/3"]));
    let acted = json(&["orbit", "act", "[[2,0],[0,1]]", ""]);
    assert_eq!(acted["order"], "2");
}

#[test]
fn semidirect_verbs() {
    let g = "((1/2,0); [[1,1],[0,1]])";
    assert_eq!(json(&["sd", "apply", g, "(0,1/3)"]), "(5/6,1/3)");
    let inv = json(&["sd", "inverse", g]);
    let inv = inv.as_str().unwrap().to_string();
    let id = json(&["sd", "mul", g, &inv]);
    assert_eq!(id, json(&["sd", "mul", "((0,0); [[1,0],[0,1]])", "((0,0); [[1,0],[0,1]])"]));
}

#[test]
fn hochschild_verbs() {
    let b = json(&["hh", "betti", "dual", "--max", "6"]);
    assert_eq!(b["betti"], serde_json::json!([2, 1, 1, 1, 1]));
    assert_eq!(b["normalized"], Value::Bool(true));
    let b = json(&["hh", "betti", "dual", "--max", "5", "--unnormalized"]);
    assert_eq!(b["betti"], serde_json::json!([2, 1, 1, 1]));
    assert_eq!(json(&["hh", "hh0", "mat2"]), Value::from(1));
    let v = json(&["hh", "validate", "mat2"]);
    assert_eq!(v["valid_algebra"], Value::Bool(true));
    assert_eq!(v["valid_two_algebra"], Value::Bool(false));
    let s1 = json(&["hh", "secondary", "dual", "--max", "3", "--order", "first-mu1"]);
    let s2 = json(&["hh", "secondary", "dual", "--max", "3", "--order", "first-mu2"]);
    assert_eq!(s1["betti"], serde_json::json!([2, 2]));
    assert_eq!(s1["betti"], s2["betti"]);
}

#[test]
fn algebra_files_load() {
    let path = std::env::temp_dir().join(format!("tori-cli-{}.alg", std::process::id()));
    std::fs::write(
        &path,
        "# dual numbers\ndim 2\nbasis 1 x\nunit 1 0\nmul 0 0 0 1\nmul 0 1 1 1\nmul 1 0 1 1\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let from_file = json(&["hh", "betti", p, "--max", "5"]);
    assert_eq!(from_file, json(&["hh", "betti", "dual", "--max", "5"]));
    std::fs::write(&path, "dim 2\nunit 1 0\nmul 0 0 0 1\nmul 5 0 0 1\n").unwrap();
    let (code, err) = fails(&["hh", "betti", p]);
    assert_eq!(code, 2, "{err}");
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["frobnicate"][..],
        &["braid", "nf", "a x"],
        &["braid", "nf"],
        &["matrix", "det", "[[1,2],[3]]"],
        &["cover", "mul", "[[1,0],[0,1]]", "[[1,0],[0,1]]@0"],
        &["lattice", "subgroup", "(1/2,0"],
        &["hh", "betti", "no-such-algebra"],
        &["hh", "secondary", "dual", "--order", "sideways"],
        &["selftest", "nonsense"],
    ] {
        let (code, err) = fails(args);
        assert_eq!(code, 2, "{args:?}: {err}");
        assert!(!err.is_empty());
    }
}

#[test]
fn domain_errors_exit_1_with_one_line() {
    for args in [
        &["cover", "z", "[[1,0],[0,-1]]"][..],
        &["cover", "mul", "[[1,0],[0,-1]]@0", "[[1,0],[0,1]]@0"],
        &["lattice", "count", "0"],
        &["braid", "lift", "[[2,0],[0,1]]"],
        &["lattice", "image", "[[1,2],[2,4]]"],
        &["matrix", "hnf", "[[1,2],[2,4]]"],
        &["orbit", "morphism", "(1/2,0)", "", "(0,0)"],
        &["orbit", "act", "[[0,1],[1,0]]", "(1/2,0)"],
        &["sd", "mul", "((0,0); [[1,0],[0,1]])", "((0,0); braid: a)"],
        &["sd", "inverse", "((0,0); [[2,0],[0,1]])"],
        &["hh", "secondary", "mat2"],
    ] {
        let (code, err) = fails(args);
        assert_eq!(code, 1, "{args:?}: {err}");
        assert!(err.starts_with("error: "), "{args:?}: {err}");
        assert_eq!(err.trim_end().lines().count(), 1, "{args:?}: {err}");
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["lattice", "subgroups", "6"][..],
        &["orbit", "poset", "--max", "4"],
        &["hh", "complex", "trunc3", "--max", "3"],
        &["selftest", "cocycle", "--seed", "11"],
    ] {
        assert_eq!(ok(args), ok(args), "{args:?}");
    }
}

#[test]
fn selftest_reports_seed_and_passes() {
    let report = json(&["selftest", "all", "--seed", "7"]);
    assert_eq!(report["seed"], Value::from(7));
    assert_eq!(report["passed"], Value::Bool(true));
    let checks = report["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["failures"] == Value::from(0)));
    assert!(checks.iter().any(|c| c["suite"] == "homology"));
}
