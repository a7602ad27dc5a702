use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::NamedTempFile;

fn job(json: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    f
}

fn run(args: &[&str], file: Option<&NamedTempFile>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hopf-poisson"));
    cmd.args(args);
    if let Some(f) = file {
        cmd.arg(f.path());
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const WEYL2: &str = r#"{"algebra": {"builtin": "weyl", "n": 2}}"#;
const TAFT_ON_WEYL: &str = r#"{
    "field": {"cyclotomic_order": 2},
    "algebra": {"builtin": "weyl", "n": 1},
    "hopf": {"type": "taft", "n": 2},
    "action": "taft_standard"
}"#;

#[test]
fn check_weyl_is_unimodular() {
    let f = job(WEYL2);
    let o = run(&["check"], Some(&f));
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("jacobi: ok"));
    assert!(out.contains("unimodular: yes"));
}

#[test]
fn modular_taft_linear() {
    let f = job(r#"{"algebra": {"builtin": "taft_linear"}}"#);
    let o = run(&["modular"], Some(&f));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "phi(u1) = 0\nphi(u2) = 0\nphi(u3) = -2\nunimodular: no\n");
}

#[test]
fn taft_on_weyl_fails_compatibility() {
    let f = job(TAFT_ON_WEYL);
    let o = run(&["verify-action"], Some(&f));
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("Poisson compatibility fails, x on (u1,u1): residual 2"));
}

#[test]
fn explicit_algebra_and_action() {
    let f = job(
        r#"{
        "field": {"cyclotomic_order": 2},
        "algebra": {"vars": ["u1", "u2", "u3"], "brackets": {"1,2": "u1*u2", "1,3": "u1*u3", "3,2": "u2*u3"}},
        "hopf": {"type": "taft", "n": 2},
        "action": {"generators": {"g": {"u3": "-u3"}, "x": {"u1": "0", "u2": "0", "u3": "u1*u2"}}}
    }"#,
    );
    let o = run(&["verify-action", "--maxdeg", "4"], Some(&f));
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o), "action verified\n");
}

#[test]
fn json_is_stable_and_reloadable() {
    let f = job(r#"{"algebra": {"builtin": "taft_linear"}}"#);
    let a = stdout(&run(&["rees", "--json"], Some(&f)));
    let b = stdout(&run(&["rees", "--json"], Some(&f)));
    assert_eq!(a, b);
    let spec: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(spec["vars"], serde_json::json!(["u1", "u2", "u3", "t"]));
    assert_eq!(spec["brackets"]["2,3"], "u2*t");
    let reloaded = job(&serde_json::json!({ "algebra": spec }).to_string());
    let again: Value = serde_json::from_str(&stdout(&run(&["gr", "--json"], Some(&reloaded)))).unwrap();
    assert_eq!(again, spec);
}

#[test]
fn quantize_with_params() {
    let f = job(r#"{"algebra": {"builtin": "taft_quadratic", "c": "c"}, "params": {"c": "1"}}"#);
    let o = run(&["quantize", "--lambda", "1/2"], Some(&f));
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("k< u1, u2, u3 | u1*u2 - u2*u1, u1*u3 - 3*u3*u1, u2*u3 - 3*u3*u2 >\n"));
    assert!(out.contains("skew form matches: yes"));
    let js: Value = serde_json::from_str(&stdout(&run(&["quantize", "--lambda", "1/2", "--json"], Some(&f)))).unwrap();
    assert_eq!(js["kernel"].as_array().unwrap().len(), 3);
    assert_eq!(js["kernel"][1][2], "1");
    assert_eq!(js["kernel"][1][6], "-3");
}

#[test]
fn quantize_refuses_filtered() {
    let f = job(WEYL2);
    let o = run(&["quantize", "--lambda", "1"], Some(&f));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fixed_ring_symbolic() {
    let f = job(r#"{"algebra": {"builtin": "taft_quadratic"}, "hopf": {"type": "taft", "n": 2}, "action": "taft_standard"}"#);
    let o = run(&["fixed-ring"], Some(&f));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("{v1,v3} = 2*c*v1*v3"));
}

#[test]
fn classify_quadratic() {
    let o = run(&["classify-taft", "--vars", "3", "--degree", "quadratic"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "parameters: b, c\n{u1,u3} = b*u1*u2 + c*u1*u3\n{u2,u3} = b*u2^2 + c*u2*u3\njacobi obstructions: none\n"
    );
    let o = run(&["classify-taft", "--vars", "2", "--degree", "const"], None);
    assert!(stdout(&o).contains("only the zero bracket"));
}

#[test]
fn envelope_extension_residuals() {
    let f = job(TAFT_ON_WEYL);
    let o = run(&["envelope", "--check-extension"], Some(&f));
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("pbw dimensions through degree 3: ok"));
    assert!(out.contains("x on (u1,u1): first = -2*mu1*nu2 + 2*mu2*nu1, second = 0"));
}

#[test]
fn group_action_extends() {
    let f = job(
        r#"{"field": {"cyclotomic_order": 3}, "algebra": {"builtin": "weyl", "n": 1},
            "hopf": {"type": "group", "orders": [3]},
            "action": {"generators": {"g": {"u1": "z*u1", "v1": "(-1 - z)*v1"}}}}"#,
    );
    let o = run(&["envelope", "--check-extension"], Some(&f));
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn hopf_verify_explicit_tables() {
    let good = r#"{"hopf": {"type": "explicit", "basis": ["1", "g"], "unit": {"1": "1"},
        "mult": {"1,1": {"1": "1"}, "1,g": {"g": "1"}, "g,1": {"g": "1"}, "g,g": {"1": "1"}},
        "comult": {"1": [["1", "1", "1"]], "g": [["g", "g", "1"]]},
        "counit": {"1": "1", "g": "1"},
        "antipode": {"1": {"1": "1"}, "g": {"g": "SIGN"}}}}"#;
    let f = job(&good.replace("SIGN", "1"));
    let o = run(&["hopf-verify"], Some(&f));
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("cocommutative: yes"));
    let f = job(&good.replace("SIGN", "-1"));
    assert_eq!(run(&["hopf-verify"], Some(&f)).status.code(), Some(1));
}

#[test]
fn schema_errors_exit_two() {
    for bad in [
        "not json",
        r#"{"algebra": {"builtin": "nope"}}"#,
        r#"{"algebra": {"vars": ["u1", "u2"], "brackets": {"1,3": "u1"}}}"#,
        r#"{"algebra": {"vars": ["u1", "u2"], "brackets": {"1,2": "w"}}}"#,
        r#"{"algebra": {"builtin": "weyl", "n": 1}, "unexpected": 1}"#,
    ] {
        let f = job(bad);
        let o = run(&["check"], Some(&f));
        assert_eq!(o.status.code(), Some(2), "{bad}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn non_poisson_check_exits_one() {
    let f = job(r#"{"algebra": {"vars": ["u1", "u2", "u3"], "brackets": {"1,2": "u3^2", "2,3": "u2"}}}"#);
    let o = run(&["check"], Some(&f));
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("jacobi fails at (u1,u2,u3)"));
}
