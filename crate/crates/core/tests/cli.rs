use std::process::{Command, Output};

use hurwitz::{ModularWord, Sl2Matrix, SpecialFactorization};
use serde_json::Value;

fn hurwitz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hurwitz"))
        .env("HURWITZ_THREADS", "0")
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = hurwitz(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    serde_json::from_str(&stdout(&full)).expect("valid JSON")
}

fn exit_code(args: &[&str]) -> i32 {
    hurwitz(args).status.code().expect("exited normally")
}

fn schema() -> jsonschema::JSONSchema {
    let text = include_str!("../schema/factorize.schema.json");
    let schema: Value = serde_json::from_str(text).unwrap();
    jsonschema::JSONSchema::compile(&schema).expect("schema compiles")
}

fn assert_valid(report: &Value) {
    let schema = schema();
    let msgs: Vec<String> = match schema.validate(report) {
        Ok(()) => Vec::new(),
        Err(errors) => errors
            .map(|e| format!("{e} at {}", e.instance_path))
            .collect(),
    };
    assert!(msgs.is_empty(), "schema violations: {msgs:?}\n{report:#}");
}

fn matrix_of(v: &Value) -> Sl2Matrix {
    let e: Vec<i64> = v
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|row| row.as_array().unwrap().iter())
        .map(|x| x.as_str().unwrap().parse().unwrap())
        .collect();
    Sl2Matrix::from_i64(e[0], e[1], e[2], e[3]).unwrap()
}

#[test]
fn factorize_u_with_one_factor() {
    let r = json(&["factorize", "-m", "1 1; 0 1", "-n", "1"]);
    assert_valid(&r);
    assert_eq!(r["meta"]["count"], 1);
    assert_eq!(r["factorizations"], serde_json::json!([["wb"]]));
    assert_eq!(matrix_of(&r["lifts"][0][0]), Sl2Matrix::u());
    let text = stdout(&["factorize", "-m", "1 1; 0 1", "-n", "1"]);
    assert!(text.contains("count: 1\n"));
    assert!(text.contains("\n  1 1; 0 1\n"));
}

#[test]
fn factorize_minus_identity_with_six_factors() {
    let r = json(&["factorize", "-m", "-1 0; 0 -1", "-n", "6"]);
    assert_valid(&r);
    assert_eq!(r["meta"]["count"], 1);
    let lifts: Vec<Sl2Matrix> = r["lifts"][0]
        .as_array()
        .unwrap()
        .iter()
        .map(matrix_of)
        .collect();
    assert_eq!(lifts.len(), 6);
    let mut prod = Sl2Matrix::identity();
    for m in &lifts {
        assert_eq!(m.trace(), 2.into());
        prod = &prod * m;
    }
    assert_eq!(prod, Sl2Matrix::neg_identity());
}

#[test]
fn factorize_identity_with_six_factors_is_empty_but_succeeds() {
    let r = json(&["factorize", "-m", "1 0; 0 1", "-n", "6"]);
    assert_valid(&r);
    assert_eq!(r["meta"]["count"], 0);
    assert_eq!(r["meta"]["empty"], true);
    assert_eq!(r["meta"]["rejected_by_sign"], 1);
    assert!(r["meta"]["explanation"]
        .as_str()
        .is_some_and(|s| !s.is_empty()));
    let text = stdout(&["factorize", "-m", "1 0; 0 1", "-n", "6"]);
    assert!(text.contains("empty: true\nexplanation: "));
}

#[test]
fn text_and_json_reports_agree() {
    for (m, n) in [
        ("1 0; 0 1", "12"),
        ("2 1; 1 1", "5"),
        ("1 7; 0 1", "7"),
        ("-1 -3; 0 -1", "9"),
    ] {
        let r = json(&["factorize", "-m", m, "-n", n]);
        assert_valid(&r);
        let text = stdout(&["factorize", "-m", m, "-n", n]);
        assert!(text.contains(&format!("count: {}\n", r["meta"]["count"])));
        assert!(text.contains(&format!("pi: {}\n", r["target"]["pi"].as_str().unwrap())));
        for (tuple, lift) in r["factorizations"]
            .as_array()
            .unwrap()
            .iter()
            .zip(r["lifts"].as_array().unwrap())
        {
            let words: Vec<&str> = tuple
                .as_array()
                .unwrap()
                .iter()
                .map(|w| w.as_str().unwrap())
                .collect();
            assert!(
                text.contains(&format!("({})", words.join(","))),
                "{words:?}"
            );
            let mut prod = Sl2Matrix::identity();
            for m in lift.as_array().unwrap() {
                let m = matrix_of(m);
                assert!(text.contains(&format!("  {m}\n")));
                prod = &prod * &m;
            }
            assert_eq!(prod, matrix_of(&r["target"]["matrix"]));
        }
    }
}

#[test]
fn wj_examples() {
    assert_eq!(stdout(&["wj", "-w", "1"]), "count: 1\n()\n");
    assert_eq!(stdout(&["wj", "-w", "b"]), "count: 0\n");
    assert_eq!(stdout(&["wj", "-w", "wbw"]), "count: 1\n(wB,Bw)\n");
    let r = json(&["wjs", "-w", "BwBw"]);
    assert_eq!(r["factorizations"], serde_json::json!([["Bw", "Bw"]]));
}

#[test]
fn normalize_decompose_and_pi_examples() {
    let r = json(&["normalize", "-t", "wB,bwb"]);
    assert_eq!(r["prefix"], serde_json::json!([]));
    assert_eq!(r["r"], 1);
    assert!(r["moves"].is_array());
    let text = stdout(&["decompose", "-m", "0 -1; 1 0"]);
    assert!(text.starts_with("S^1\n"));
    assert!(text.contains("(ok)"));
    assert_eq!(stdout(&["pi", "-m", "-1 0; 0 -1"]), "1\n");
    let r = json(&["decompose", "-m", "13 8; 21 13"]);
    assert_eq!(r["check"], true);
}

#[test]
fn orbit_check_reports_a_hit() {
    let r = json(&["orbit-check", "-t", "wB,bwb,Bw"]);
    assert_eq!(r["truncated"], false);
    assert_eq!(r["meets_h_complete"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(exit_code(&["factorize", "-m", "1 1; 0 1", "-n", "1"]), 0);
    assert_eq!(exit_code(&["factorize", "-m", "1 0; 0 1", "-n", "6"]), 0);
    // Syntax errors.
    assert_eq!(exit_code(&["factorize", "-m", "1 x; 0 1", "-n", "1"]), 1);
    assert_eq!(exit_code(&["factorize", "-m", "1 1; 0 1", "-n", "two"]), 1);
    assert_eq!(exit_code(&["wj", "-w", "wbbw"]), 1);
    assert_eq!(exit_code(&["wj", "-w", "wxb"]), 1);
    assert_eq!(exit_code(&["frobnicate"]), 1);
    assert_eq!(exit_code(&["factorize"]), 1);
    // Semantic violations.
    assert_eq!(exit_code(&["factorize", "-m", "1 2; 3 4", "-n", "1"]), 2);
    assert_eq!(exit_code(&["factorize", "-m", "1 1; 0 1"]), 2);
    assert_eq!(exit_code(&["factorize", "-m", "1 1; 0 1", "-n", "-1"]), 2);
    assert_eq!(exit_code(&["normalize", "-t", "wB,wb"]), 2);
    assert_eq!(
        exit_code(&["orbit-check", "-t", "wB,bwb", "--max-len", "0"]),
        2
    );
    assert_eq!(
        exit_code(&["orbit-check", "-t", "wB,bwb", "--max-nodes", "0"]),
        2
    );
    assert_eq!(exit_code(&["--help"]), 0);
}

#[test]
fn non_conjugate_entry_is_named_by_index() {
    let out = hurwitz(&["normalize", "-t", "wB,bwb,wb"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("entry 3 (`wb`)"), "{err}");
}

#[test]
fn emitted_values_round_trip() {
    let r = json(&["factorize", "-m", "-1 0; 0 -1", "-n", "6"]);
    for tuple in r["factorizations"].as_array().unwrap() {
        for w in tuple.as_array().unwrap() {
            let s = w.as_str().unwrap();
            assert_eq!(s.parse::<ModularWord>().unwrap().to_string(), s);
        }
    }
    let text = stdout(&["normalize", "-t", "bwb,wbwbw,Bw"]);
    let realized = text
        .lines()
        .find_map(|l| l.strip_prefix("realized: "))
        .unwrap();
    let parsed = hurwitz::cli::parse_tuple(realized).unwrap();
    assert_eq!(parsed.to_string(), realized);
    let m: Sl2Matrix = hurwitz::cli::parse_matrix("-7 3; -12 5").unwrap();
    assert_eq!(hurwitz::cli::parse_matrix(&m.to_string()).unwrap(), m);
    assert_eq!(SpecialFactorization::empty().to_string(), "()");
}
