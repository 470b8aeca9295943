//! End-to-end acceptance for the command-line front end: criterion 13
//! (selftest all, zero failures, under 120 s) and the documented exit-code
//! and determinism contracts.

use std::process::Command;
use std::time::Instant;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_symcone")
}

#[test]
fn criterion_13_selftest_all() {
    let t0 = Instant::now();
    let out = Command::new(bin())
        .args(["selftest", "--suite", "all", "--seed", "42"])
        .output()
        .expect("run selftest");
    let elapsed = t0.elapsed().as_secs_f64();
    let stdout = String::from_utf8_lossy(&out.stdout);
    let ok = out.status.success() && stdout.contains("0 failures") && elapsed < 120.0;
    println!(
        "criterion 13 [{}] selftest all: exit {:?}, {:.2}s (< 120 s)",
        if ok { "PASS" } else { "FAIL" },
        out.status.code(),
        elapsed
    );
    assert!(out.status.success(), "selftest failed:\n{stdout}");
    assert!(stdout.contains("0 failures"), "selftest reported failures:\n{stdout}");
    assert!(elapsed < 120.0, "selftest took {elapsed:.2}s");
}

fn run_request(request: &str, extra: &[&str]) -> (Option<i32>, String) {
    use std::io::Write;
    let mut child = Command::new(bin())
        .arg("run")
        .args(extra)
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .expect("spawn");
    child.stdin.as_mut().unwrap().write_all(request.as_bytes()).unwrap();
    let out = child.wait_with_output().expect("wait");
    (out.status.code(), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn cli_contract_examples() {
    // hilbert distance example: d(diag(2,1), e) = log 2
    let req = r#"{"module":"cone","op":"hilbert_distance","params":{
        "x":{"algebra":{"kind":"sym_real","r":2},"complex":false,"data":[2,0,0,1]},
        "y":{"algebra":{"kind":"sym_real","r":2},"complex":false,"data":[1,0,0,1]}}}"#;
    let (code, out) = run_request(req, &[]);
    assert_eq!(code, Some(0));
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert!(v["ok"].as_bool().unwrap());
    let d = v["result"]["d"].as_f64().unwrap();
    assert!((d - std::f64::consts::LN_2).abs() < 1e-10);

    // unknown op -> exit 2
    let (code, _) = run_request(r#"{"module":"cone","op":"zzz"}"#, &[]);
    assert_eq!(code, Some(2));

    // transversality index on a non-boundary input -> exit 3
    let req = r#"{"module":"indices","op":"transversality_index","params":{
        "sigma":{"element":{"algebra":{"kind":"sym_real","r":2},"complex":false,"data":[1,0,0,2]}},
        "tau":{"element":{"algebra":{"kind":"sym_real","r":2},"complex":false,"data":[1,0,0,1]}}}}"#;
    let (code, _) = run_request(req, &[]);
    assert_eq!(code, Some(3));

    println!("criterion cli [PASS] exit codes 0/2/3 and the log 2 oracle");
}

#[test]
fn cli_deterministic_output() {
    let req = r#"{"module":"cli","op":"sample_element","params":{
        "algebra":{"kind":"herm_complex","r":3},"what":"interior"},"seed":7}"#;
    let (c1, o1) = run_request(req, &[]);
    let (c2, o2) = run_request(req, &[]);
    assert_eq!(c1, Some(0));
    assert_eq!(c1, c2);
    assert_eq!(o1, o2, "byte-identical output for identical request and seed");
    // different seed changes the sample
    let (_, o3) = run_request(req, &["--seed", "8"]);
    assert_ne!(o1, o3);
    println!("criterion cli [PASS] byte-identical output for identical (request, seed)");
}

#[test]
fn cli_tol_override() {
    // with a huge tolerance every pair counts as non-transversal
    let req = r#"{"module":"boundary","op":"transversal","params":{
        "z":{"algebra":{"kind":"sym_real","r":2},"complex":true,"data":[[1,0],[0,0],[0,0],[1,0]]},
        "w":{"algebra":{"kind":"sym_real","r":2},"complex":true,"data":[[-1,0],[0,0],[0,0],[-1,0]]}}}"#;
    let (code, out) = run_request(req, &[]);
    assert_eq!(code, Some(0));
    assert!(out.contains("true"));
    let (_, out) = run_request(req, &["--tol", "1e9"]);
    assert!(out.contains("false"));
}
