use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn liecoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liecoh"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = liecoh(args);
    let report = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (out.status.code().expect("exit code"), report)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn heisenberg_second_cohomology() {
    let (code, r) = run(&["cohomology", "--algebra", "heisenberg3", "--degree", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r["dim_cohomology"], 2);
    assert_eq!(r["dim_cocycles"], 3);
    assert_eq!(r["dim_coboundaries"], 1);
}

#[test]
fn sl2_adjoint_cohomology_vanishes() {
    for degree in ["1", "2"] {
        let (code, r) = run(&["cohomology", "--algebra", "sl2", "--rep", "adjoint", "--degree", degree]);
        assert_eq!(code, 0);
        assert_eq!(r["dim_cohomology"], 0);
    }
}

#[test]
fn every_bundle_reproduces() {
    for name in [
        "example-A9",
        "example-A10a",
        "example-A10b",
        "remark-II10",
        "remark-IV5",
        "example-V2",
        "theorem-IV4-roundtrip",
    ] {
        let (code, r) = run(&["reproduce", name]);
        assert_eq!(code, 0, "{name}: {r}");
        assert_eq!(r["pass"], true);
    }
    let (code, r) = run(&["reproduce", "example-A11"]);
    assert_eq!(code, 1);
    assert_eq!(r["error"], "UnknownBundle");
}

#[test]
fn invalid_factor_system_exits_two_with_triple() {
    let dir = tempfile::tempdir().unwrap();
    let ext = write(
        dir.path(),
        "bad.json",
        r#"{"n": "abelian1", "g": "abelian3",
            "S": {"dim": 1, "matrices": [[["1"]], [["0"]], [["0"]]]},
            "omega": {"degree": 2, "value_dim": 1, "coeffs": {"1,2": ["1"]}}}"#,
    );
    let (code, r) = run(&["extension", "build", "--ext", &ext]);
    assert_eq!(code, 2);
    assert_eq!(r["certificate"]["condition"], "cocycle");
    assert_eq!(r["certificate"]["jacobi_triple"], serde_json::json!([1, 2, 3]));
    let (code, r) = run(&["extension", "check", "--ext", &ext]);
    assert_eq!(code, 2);
    assert_eq!(r["valid"], false);
}

#[test]
fn extension_from_parts() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(dir.path(), "s.json", r#"{"dim": 1, "matrices": [[["0"]], [["0"]]]}"#);
    let omega = write(
        dir.path(),
        "w.json",
        r#"{"degree": 2, "value_dim": 1, "coeffs": {"0,1": ["1"]}}"#,
    );
    let (code, r) = run(&[
        "extension",
        "build",
        "--n",
        "abelian1",
        "--g",
        "abelian2",
        "--S",
        &s,
        "--omega",
        &omega,
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["total"]["dim"], 3);
    let (code, r) = run(&["extension", "classify", "--n", "abelian1", "--g", "abelian2", "--S", &s]);
    assert_eq!(code, 0);
    assert_eq!(r["h2_dim"], 1);
    let (code, r) = run(&["obstruction", "--n", "abelian1", "--g", "abelian2", "--S", &s]);
    assert_eq!(code, 0);
    assert_eq!(r["obstructed"], false);
}

#[test]
fn parse_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "zero.json",
        r#"{"dim": 2, "basis": ["x", "y"], "brackets": [{"i": 0, "j": 1, "value": {"0": "1/0"}}]}"#,
    );
    let (code, r) = run(&["validate", "--algebra", &bad]);
    assert_eq!(code, 1);
    assert_eq!(r["error"], "ParseError");
    let jacobi = write(
        dir.path(),
        "jacobi.json",
        r#"{"dim": 3, "basis": ["a", "b", "c"], "brackets": [
            {"i": 0, "j": 1, "value": {"1": "1"}},
            {"i": 1, "j": 2, "value": {"0": "1"}}]}"#,
    );
    let (code, r) = run(&["validate", "--algebra", &jacobi]);
    assert_eq!(code, 1);
    assert_eq!(r["error"], "InvariantViolation");
    assert!(r["violations"][0].as_str().unwrap().contains("(0, 1, 2)"));
}

#[test]
fn catalog_emit_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["heisenberg3", "heisenberg-kernel", "gs-heisenberg-kernel"] {
        let path = dir.path().join(format!("{name}.json"));
        let (code, r) = run(&["catalog", name, "--emit", path.to_str().unwrap()]);
        assert_eq!(code, 0);
        let emitted = std::fs::read(&path).unwrap();
        assert_eq!(liecoh(&["catalog", name]).stdout, emitted);
        let flag = match r["kind"].as_str().unwrap() {
            "algebra" => "--algebra",
            "extension" => "--ext",
            _ => "--cm",
        };
        let (code, v) = run(&["validate", flag, path.to_str().unwrap()]);
        assert_eq!(code, 0, "{v}");
        assert_eq!(v["valid"], true);
    }
}

#[test]
fn v2_check_is_deterministic() {
    let a = liecoh(&["v2-check", "--algebra", "sl2", "--samples", "30", "--seed", "7"]);
    let b = liecoh(&["v2-check", "--algebra", "sl2", "--samples", "30", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let r: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(r["failures"], 0);
    assert_eq!(r["eta"]["coeffs"]["0,1,2"][0], "4");
}

#[test]
fn crossed_module_routes_agree() {
    for name in [
        "ideal-plane-in-sl2-semidirect",
        "central-extension-heisenberg",
        "gs-heisenberg-kernel",
    ] {
        let (code, r) = run(&["crossed-module", "class", "--cm", name]);
        assert_eq!(code, 0, "{r}");
        assert_eq!(r["routes_agree"], true);
        let (code, _) = run(&["crossed-module", "validate", "--cm", name]);
        assert_eq!(code, 0);
    }
}

#[test]
fn derivations_and_lifts() {
    let (code, r) = run(&["derivations", "--ext", "heisenberg-central"]);
    assert_eq!(code, 0);
    assert_eq!(r["der_dim"], 6);
    assert_eq!(r["z1_dim"], 2);
    assert_eq!(r["kernel_dim"], 4);

    let dir = tempfile::tempdir().unwrap();
    let good = write(
        dir.path(),
        "good.json",
        r#"{"alpha": [["3"]], "beta": [["1", "0"], ["0", "2"]]}"#,
    );
    let (code, r) = run(&["lift", "--ext", "heisenberg-central", "--pair", &good]);
    assert_eq!(code, 0);
    assert_eq!(r["lifts"], true);
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"alpha": [["1"]], "beta": [["1", "0"], ["0", "2"]]}"#,
    );
    let (code, r) = run(&["lift", "--ext", "heisenberg-central", "--pair", &bad]);
    assert_eq!(code, 2);
    assert_eq!(r["lifts"], false);
    assert_eq!(r["obstruction"]["zero"], false);

    let shears = write(
        dir.path(),
        "shears.json",
        r#"{"h": "abelian2", "psi": [
            {"alpha": [["0"]], "beta": [["0","0","0"],["0","0","0"],["1","0","0"]],
             "theta": {"degree": 1, "value_dim": 1, "coeffs": {}}},
            {"alpha": [["0"]], "beta": [["0","0","0"],["0","0","0"],["0","1","0"]],
             "theta": {"degree": 1, "value_dim": 1, "coeffs": {"2": ["1"]}}}]}"#,
    );
    let (code, r) = run(&["lift", "--ext", "heisenberg-over-heisenberg", "--pair", &shears]);
    assert_eq!(code, 2);
    assert_eq!(r["lifts_to_representation"], false);
    assert_eq!(r["d_theta"]["coeffs"]["0,1"][0], "-1");
}

#[test]
fn automorphisms() {
    let dir = tempfile::tempdir().unwrap();
    let flip = write(
        dir.path(),
        "flip.json",
        r#"{"alpha": [["-1"]], "beta": [["1", "0"], ["0", "-1"]]}"#,
    );
    let (code, r) = run(&["automorphism", "--ext", "heisenberg-central", "--pair", &flip]);
    assert_eq!(code, 0);
    assert_eq!(r["lifts"], true);
    let stretch = write(
        dir.path(),
        "stretch.json",
        r#"{"alpha": [["1"]], "beta": [["2", "0"], ["0", "1"]]}"#,
    );
    let (code, r) = run(&["automorphism", "--ext", "heisenberg-central", "--pair", &stretch]);
    assert_eq!(code, 2);
    assert_eq!(r["class"]["zero"], false);
}

#[test]
fn reduce_reports_a_witness() {
    let (code, r) = run(&["extension", "reduce", "--ext", "heisenberg-kernel"]);
    assert_eq!(code, 0);
    assert_eq!(r["gs"]["dim"], 4);
    assert_eq!(r["center_dim"], 1);
}
