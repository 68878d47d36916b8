use std::path::PathBuf;
use std::process::Command;

use dunkl_coulomb::cli::{run_with, EXIT_FAIL, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("dunkl").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn nf(expr: &str, dim: &str) -> String {
    let (code, out, err) = run(&["--dim", dim, "nf", expr]);
    assert_eq!(code, EXIT_OK, "{err}");
    out.trim().to_string()
}

#[test]
fn normal_form_examples() {
    assert_eq!(nf("D1*x1", "1").matches("mu1*R1").count(), 1);
    let (code, out, _) = run(&["--dim", "1", "--mu", "0", "nf", "D1*x1"]);
    assert_eq!((code, out.trim()), (EXIT_OK, "x1*D1 + 1"));
    assert_eq!(nf("adj(T) - T", "3"), "0");
    assert_eq!(nf("K - (Gamma0 + GammaD1)/2 + E*(Gamma0 - GammaD1)", "2"), "0");
}

#[test]
fn commutator_matches_factored_form() {
    let (code, out, _) = run(&["--dim", "2", "comm", "A(1)", "G(1)"]);
    assert_eq!(code, EXIT_OK);
    let factored = nf("i*GammaD1*(1 + 2*mu1*R1)", "2");
    assert_eq!(out.trim(), factored);
    let (_, out, _) = run(&["--dim", "2", "comm", "Gamma0", "GammaD1"]);
    assert_eq!(out.trim(), nf("i*T", "2"));
}

#[test]
fn apply_example() {
    let (code, out, _) = run(&["--dim", "2", "apply", "x1*D1", "r^3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), nf("3*x1^2*r", "2"));
}

#[test]
fn json_operator_output() {
    let (code, out, _) = run(&["--dim", "1", "--format", "json", "nf", "x1*D1"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["dim"], 1);
    assert_eq!(v["result"], "x1*D1");
    assert_eq!(v["terms"], 1);
}

#[test]
fn usage_errors() {
    let (code, _, err) = run(&["--dim", "3", "nf", "D0"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line 1, column 1"), "{err}");
    let (code, _, err) = run(&["--dim", "2", "nf", "x1 +* x2"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line 1, column 5"), "{err}");
    assert_eq!(run(&["nf", "x1"]).0, EXIT_USAGE);
    assert_eq!(run(&["--dim", "3", "--mu", "1,2", "nf", "x1"]).0, EXIT_USAGE);
    assert_eq!(run(&["--dim", "3", "--E", "half", "nf", "x1"]).0, EXIT_USAGE);
    assert_eq!(run(&["--dim", "3", "verify", "--filter", "ZZZ"]).0, EXIT_USAGE);
    assert_eq!(run(&["--dim", "2", "nf", "x1/D1"]).0, EXIT_USAGE);
    assert_eq!(run(&["--dim", "2", "frobnicate"]).0, EXIT_USAGE);
}

#[test]
fn verify_json_schema() {
    let (code, out, _) = run(&["--dim", "2", "--seed", "9", "--format", "json", "verify", "--filter", "SO21"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["suite"], "SO21");
    assert_eq!(v["dims"], serde_json::json!([2]));
    assert_eq!(v["seed"], 9);
    assert!(v["version"].is_string());
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 3);
    for e in entries {
        assert!(e["id"].as_str().unwrap().starts_with("SO21"));
        assert_eq!(e["d"], 2);
        assert_eq!(e["status"], "pass-syntactic");
        assert_eq!(e["residual_terms"], 0);
        assert!(e["millis"].is_u64());
    }
}

#[test]
fn corrupted_identity_fails() {
    let path = fixture("corrupted.txt");
    let (code, out, _) = run(&["--dim", "3", "verify", "--filter", "BAD", "--extra", &path]);
    assert_eq!(code, EXIT_FAIL);
    assert!(out.contains("BAD.DX") && out.contains("fail"), "{out}");
    assert!(out.contains("mu1*R1"), "{out}");
}

#[test]
fn valid_extra_identities_pass() {
    let path = fixture("valid.txt");
    let (code, out, _) = run(&["--dim", "3", "verify", "--filter", "EXTRA", "--extra", &path]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("3 entries, 0 failed"), "{out}");
    assert_eq!(run(&["--dim", "3", "verify", "--extra", "/nonexistent/extra.txt"]).0, EXIT_USAGE);
}

#[test]
fn latex_report() {
    let (code, out, _) = run(&["--dim", "1", "--format", "latex", "verify", "--filter", "DNK.DX"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("\\begin{tabular}"));
    assert!(out.contains("\\texttt{DNK.DX}"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_dunkl");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code().unwrap();
    assert_eq!(status(&["--dim", "1", "nf", "D1*x1"]), EXIT_OK);
    assert_eq!(status(&["--dim", "3", "verify", "--extra", &fixture("corrupted.txt"), "--filter", "BAD"]), EXIT_FAIL);
    assert_eq!(status(&["--dim", "1", "nf", "D2"]), EXIT_USAGE);
}
