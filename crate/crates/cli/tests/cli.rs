use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_halfderiv")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn has_float(v: &Value) -> bool {
    match v {
        Value::Number(n) => n.is_f64(),
        Value::Array(a) => a.iter().any(has_float),
        Value::Object(m) => m.values().any(has_float),
        _ => false,
    }
}

#[test]
fn so_hat_has_only_the_identity() {
    let o = run(&[
        "solve-deriv", "builtin:so_hat", "--degrees", "-2..2", "--step", "half", "--neq", "8", "--ncore", "3",
        "--format", "json",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let dims = v["dims"].as_object().unwrap();
    assert_eq!(dims.len(), 9);
    for (d, n) in dims {
        assert_eq!(n.as_u64().unwrap(), u64::from(d == "0"), "degree {d}");
    }
    assert_eq!(v["window"]["neq"], "8");
    assert_eq!(v["window"]["ncore"], "3");
    let zero = v["degrees"].as_array().unwrap().iter().find(|d| d["degree"] == "0").unwrap();
    assert_eq!(zero["generators"][0]["description"], "Id");
    assert!(zero["residual_checked"].as_bool().unwrap());
}

#[test]
fn json_is_deterministic() {
    let args = ["solve-deriv", "builtin:Ltilde1?lambda=1,mu=1/4", "--degrees", "0..1", "--neq", "4", "--ncore", "2", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["params"]["mu"], "1/4");
    assert_eq!(v["delta"], "1/2");
    assert!(!has_float(&v));
    for key in ["algebra", "params", "window", "degrees", "dims"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn expect_mismatch_exits_with_one() {
    let base = ["solve-deriv", "builtin:witt", "--degrees", "-1..1", "--step", "integer", "--neq", "4", "--ncore", "2"];
    let ok = run(&[&base[..], &["--expect", "-1:1,0:1,1:1"]].concat());
    assert_eq!(code(&ok), 0, "{}", stderr(&ok));
    let bad = run(&[&base[..], &["--expect", "0:1,1:0"]].concat());
    assert_eq!(code(&bad), 1);
    assert!(stderr(&bad).contains("degree 1: expected dimension 0, found 1"));
    let missing = run(&[&base[..], &["--expect", "1/2:0"]].concat());
    assert_eq!(code(&missing), 1);
}

#[test]
fn mutant_names_the_jacobi_triple() {
    let o = run(&["validate", &fixture("mutant.liealg"), "--neq", "1"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("(L_1, L_{-1}, M_1) -> 4*M_1"), "{}", stdout(&o));
    assert!(stderr(&o).contains("jacobi violated"));
    let o = run(&["validate", &fixture("mutant.liealg"), "--neq", "1", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let jacobi = v["checks"].as_array().unwrap().iter().find(|c| c["check"] == "jacobi").unwrap();
    let witnesses: Vec<&Value> = jacobi["violations"].as_array().unwrap().iter().map(|x| &x["witness"]).collect();
    assert!(witnesses.contains(&&serde_json::json!(["L_1", "L_{-1}", "M_1"])));
}

#[test]
fn catalog_algebras_validate() {
    for src in ["builtin:so_hat", "builtin:hv", "builtin:Ltilde4?lambda=1,mu=1/2"] {
        let o = run(&["validate", src, "--neq", "3"]);
        assert_eq!(code(&o), 0, "{src}: {}", stdout(&o));
    }
}

#[test]
fn theorem_product_checks() {
    let o = run(&[
        "check-tpa", "builtin:Ltilde1?lambda=1,mu=1/4", "--product", "builtin:theorem", "--alpha", "0:1", "--beta",
        "1:2", "--neq", "4",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("verdict: nontrivial"));
    let o = run(&["check-tpa", "builtin:Ltilde1?lambda=1,mu=1/4", "--product", &fixture("theorem.product"), "--neq", "2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let o = run(&[
        "check-tpa", "builtin:Ltilde1?lambda=1,mu=1/4", "--product", &fixture("broken.product"), "--neq", "2", "--format",
        "json",
    ]);
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["ok"], false);
    let o = run(&["check-tpa", "builtin:Ltilde1?lambda=1,mu=1/4", "--product", "builtin:theorem", "--neq", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("trivial (zero product)"));
}

#[test]
fn case_guards_exit_with_three() {
    let o = run(&["render", "builtin:Ltilde2?lambda=1,mu=1/2"]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("Ltilde4"));
    let o = run(&["check-tpa", "builtin:Ltilde1?lambda=2,mu=1/4", "--product", "builtin:theorem", "--alpha", "0:1"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn usage_and_parse_errors_exit_with_two() {
    let cases: &[&[&str]] = &[
        &["frobnicate"],
        &["render", "builtin:nope"],
        &["render", "builtin:Ltilde1?lambda=1"],
        &["render", "/no/such/file.liealg"],
        &["solve-deriv", "builtin:witt", "--degrees", "1/3..1"],
        &["solve-deriv", "builtin:witt", "--degrees", "0..1", "--delta", "x"],
        &["solve-deriv", "builtin:witt", "--degrees", "0..1", "--neq", "4", "--ncore", "3"],
        &["check-tpa", "builtin:Ltilde1?lambda=1,mu=1/4", "--product", "builtin:theorem", "--alpha", "0:1,0:2"],
        &["check-tpa", "builtin:Ltilde1?lambda=1,mu=1/4", "--product", "builtin:other"],
    ];
    for args in cases {
        let o = run(args);
        assert_eq!(code(&o), 2, "{args:?}: {}", stderr(&o));
        assert!(o.stdout.is_empty(), "{args:?}");
    }
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.liealg");
    std::fs::write(&bad, "algebra t\nfamily L integer degree-offset 0\nbracket L(m) Q(n) = 0\n").unwrap();
    let o = run(&["render", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn render_and_reload_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("l1.liealg");
    let o = run(&["render", "builtin:Ltilde1?lambda=2,mu=1/4", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let o = run(&["render", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), std::fs::read_to_string(&path).unwrap());
    let o = run(&["list", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["entries"].as_array().unwrap().iter().any(|e| e["name"] == "so_hat"));
}
