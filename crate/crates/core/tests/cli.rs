//! The `qps` binary end to end.

use std::process::Command;

use serde_json::Value;

fn qps(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qps")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = qps(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out.trim().to_string()
}

#[test]
fn bracket_table() {
    assert_eq!(ok(&["bracket", "x", "px"]), "-q");
    assert_eq!(ok(&["bracket", "px", "x"]), "-1 - q");
    assert_eq!(ok(&["bracket", "y", "py"]), "-q");
    assert_eq!(ok(&["bracket", "x", "y"]), "0");
}

#[test]
fn hamiltonian_fields() {
    assert_eq!(ok(&["xfield", "x"]), "(-1 - q)*Dpx");
    assert_eq!(ok(&["xfield", "py"]), "-q*Dy");
}

#[test]
fn normalize_relations() {
    assert_eq!(ok(&["normalize", "Q", "px*x"]), "(-1 - q)*x*px");
    assert_eq!(ok(&["normalize", "M", "x^3"]), "1");
    assert_eq!(ok(&["normalize", "OmegaQ", "dx*dx"]), "0");
    assert_eq!(ok(&["normalize", "F", "a*d - q*b*c"]), "1");
}

#[test]
fn calculus_commands() {
    assert_eq!(ok(&["d", "x*y"]), ok(&["normalize", "OmegaQ", "dx*y + x*dy"]));
    assert_eq!(ok(&["partial", "x", "x^2"]), "-q*x");
    assert_eq!(ok(&["pair", "dx*y", "Dx"]), "y");
    assert_eq!(ok(&["omega-eval", "Dx", "Dpx"]), ok(&["omega-eval", "Dx", "Dpx"]));
    assert_eq!(ok(&["evolve", "x", "px"]), "-q");
}

#[test]
fn hopf_commands() {
    assert_eq!(ok(&["coact", "M", "x"]), "a ⊗ x + b ⊗ y");
    assert_eq!(ok(&["rform", "a", "a"]), "-1 - q");
    let (code, _, _) = qps(&["act", "a", "x"]);
    assert_eq!(code, 0);
    assert_eq!(ok(&["act", "--alg", "M", "a", "x"]), ok(&["act", "a", "x"]));
}

#[test]
fn dims() {
    assert_eq!(ok(&["dims", "OmegaQ"]), "81 324 486 324 81 (total 1296)");
    assert_eq!(ok(&["dims", "F"]), "27 (total 27)");
}

#[test]
fn json_output() {
    let out = ok(&["--format", "json", "normalize", "Q", "px*y"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["command"], "normalize");
    assert_eq!(v["presentation"], "Q");
    assert_eq!(v["input"][1], "px*y");
    for t in v["result"]["terms"].as_array().unwrap() {
        assert!(t["coefficient"]["r0"].is_string() && t["coefficient"]["r1"].is_string());
    }
    let out = ok(&["--format", "json", "dims", "M"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["total"], 9);
}

#[test]
fn errors_exit_with_two() {
    let (code, _, err) = qps(&["normalize", "Q", "x**"]);
    assert_eq!(code, 2);
    assert!(err.contains("column 3"));
    let (code, _, err) = qps(&["normalize", "M", "x*dpx"]);
    assert_eq!(code, 2);
    assert!(err.contains("M"), "{err}");
    assert_eq!(qps(&["frobnicate"]).0, 2);
    assert_eq!(qps(&["check", "nonsense"]).0, 2);
    assert_eq!(qps(&["normalize", "Z", "x"]).0, 2);
}

#[test]
fn checks_are_deterministic() {
    let a = qps(&["--format", "json", "check", "symplectic"]);
    let b = qps(&["--format", "json", "check", "symplectic"]);
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
    let seeded = Command::new(env!("CARGO_BIN_EXE_qps"))
        .args(["--format", "json", "check", "symplectic"])
        .env("QPS_SEED", "7")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&seeded.stdout).unwrap();
    assert_eq!(v["result"]["seed"], 7);
}
