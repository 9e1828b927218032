use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schurfin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = run(&all);
    let v = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    (v, o.status.code().unwrap())
}

#[test]
fn character_values() {
    let (v, code) = json(&["char", "--lambda", "2,1"]);
    assert_eq!(code, 0);
    let values: Vec<(Value, i64)> = v["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["class"].clone(), e["value"].as_i64().unwrap()))
        .collect();
    assert!(values.contains(&(serde_json::json!([1, 1, 1]), 2)));
    assert!(values.contains(&(serde_json::json!([2, 1]), 0)));
    assert!(values.contains(&(serde_json::json!([3]), -1)));
    let o = run(&["char", "--lambda", "[3,1]", "--rho", "(2,2)"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("-1"), "{}", stdout(&o));
}

#[test]
fn decompositions() {
    let o = run(&["decompose", "sum", "--lambda", "2"]);
    assert_eq!(stdout(&o).lines().count(), 3);
    let (v, code) = json(&["decompose", "pair", "--mu", "1", "--nu", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["rule"], "pair_product");
    assert_eq!(v["terms"].as_array().map(Vec::len), Some(2), "{v}");
}

#[test]
fn character_table_is_square() {
    let o = run(&["char", "--n", "4"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with('(')).count(), 5);
}

#[test]
fn coefficients() {
    let o = run(&[
        "coeff", "lr", "--lambda", "3,2,1", "--mu", "2,1", "--nu", "2,1",
    ]);
    assert_eq!(stdout(&o).trim(), "2");
    let o = run(&[
        "coeff", "kron", "--lambda", "2,1", "--mu", "2,1", "--nu", "2,1",
    ]);
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn symmetrizer_is_idempotent() {
    let o = run(&["symmetrizer", "--lambda", "2,1", "--check-idempotent"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("1/3*e"), "{text}");
    assert!(text.contains("true"), "{text}");
}

#[test]
fn schur_dimension_and_vanishing() {
    let (v, code) = json(&["schur-dim", "--space", "2|1", "--lambda", "2,1"]);
    assert_eq!(code, 0);
    assert_eq!((v["even"].as_u64(), v["odd"].as_u64()), (Some(4), Some(4)));
    let o = run(&["vanishes", "--space", "1|1", "--lambda", "2,2"]);
    assert_eq!(stdout(&o).trim(), "true");
    let o = run(&[
        "vanishes", "--space", "1|1", "--lambda", "2,1", "--oracle", "rank",
    ]);
    assert_eq!(stdout(&o).trim(), "false");
}

#[test]
fn motive_reports_and_exit_codes() {
    let (v, code) = json(&["motive", "report", "P(1)"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "kimura_finite");
    assert_eq!(v["p"], 2);
    assert_eq!(v["witnesses"], serde_json::json!([[1, 1, 1]]));

    let (v, code) = json(&["motive", "report", "X{odd}"]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "inconclusive");

    let (v, code) = json(&["motive", "report", "X{even; [1,1,1]}"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "kimura_finite");
    assert_eq!((v["p"].as_u64(), v["q"].as_u64()), (Some(2), Some(0)));

    let (v, code) = json(&["motive", "report", "X{even; [2,2]}"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "schur_finite");
    assert_eq!(v["kimura_certified"], false);
}

#[test]
fn blowup_of_the_plane() {
    let (v, code) = json(&[
        "motive", "blowup", "--base", "P(2)", "--center", "1", "--codim", "2", "--report",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["kimura_certified"], true);
    assert_eq!((v["p"].as_u64(), v["q"].as_u64()), (Some(4), Some(0)));
    assert_eq!(v["witnesses"], serde_json::json!([[1, 1, 1, 1, 1]]));
}

#[test]
fn eval_expressions() {
    let (v, code) = json(&["eval", "S[2,2](ev(1) (+) L)"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "nonzero");
    let o = run(&["eval", "Sym^2(odd(1))"]);
    assert!(stdout(&o).contains("vanishes"), "{}", stdout(&o));
    let o = run(&["eval", "S[2](X)"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["eval", "1 (+) h2 (+) 3*L"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
}

#[test]
fn kahn_complex_homology() {
    let kahn = data("kahn.json");
    let o = run(&["complex", "homology", "--input", &kahn]);
    assert_eq!(stdout(&o).trim(), "H_0 = Q[x]/(x)");
    let o = run(&["complex", "schur", "--input", &kahn, "--lambda", "1,1,1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("H_2 = Q[x]/(x)"), "{}", stdout(&o));
    let (v, _) = json(&["complex", "schur", "--input", &kahn, "--lambda", "2"]);
    assert_eq!(
        v["homology"]["degrees"]["0"]["torsion"],
        serde_json::json!(["x"])
    );
}

#[test]
fn split_filtration() {
    let (v, code) = json(&[
        "complex",
        "filtration",
        "--sub",
        &data("line0.json"),
        "--quotient",
        &data("line1.json"),
        "-n",
        "3",
        "--lambda",
        "2,1",
    ]);
    assert_eq!(code, 0, "{v}");
    let text = v.to_string();
    assert!(text.contains("graded_ranks"), "{text}");
}

#[test]
fn errors_exit_with_one() {
    for args in [
        vec!["bogus"],
        vec!["char", "--lambda", "2,3"],
        vec!["char", "--n", "3", "--lambda", "2,2"],
        vec!["eval", "X (+"],
        vec!["complex", "homology", "--input", "/nonexistent.json"],
        vec!["--max-n", "3", "symmetrizer", "--lambda", "2,2"],
        vec![
            "motive", "blowup", "--base", "1", "--center", "1", "--codim", "1",
        ],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
