use std::io::Write;
use std::process::{Command, Output, Stdio};

use ratherm::io::{parse_document, ParseOptions};
use ratherm::poly::Poly;
use ratherm::problem::{rhip_check, RationalSolution};
use ratherm::{FieldConfig, Scalar};
use serde_json::Value;

const GOLDEN: &str = r#"{"field":"Q","k":2,"nodes":[{"u":"1","values":["1","0"]},{"u":"2","values":["0"]}]}"#;

fn run(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ratherm"));
    cmd.args(args)
        .env_remove("RATHERM_SEED")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_run(args: &[&str], stdin: &str) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = run(&full, stdin, &[]);
    let code = out.status.code().unwrap();
    let value = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)));
    (code, value)
}

fn poly_from(field: FieldConfig, v: &Value) -> Poly {
    let coeffs: Vec<Scalar> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|c| field.parse(c.as_str().unwrap()).unwrap())
        .collect();
    Poly::new(field, coeffs).unwrap()
}

#[test]
fn golden_document_is_unattainable() {
    for method in ["kernel", "eea", "minors", "all"] {
        let (code, v) = json_run(&["solve", "--method", method], GOLDEN);
        assert_eq!(code, 3, "{method}");
        assert_eq!(v["status"], "unattainable");
        assert_eq!(v["stratum"], 1);
        assert_eq!(v["witnesses"], serde_json::json!([1]));
    }
    let (_, v) = json_run(&["solve", "--method", "all"], GOLDEN);
    assert_eq!(v["method_agreement"], true);
}

#[test]
fn pretty_output_names_the_witness() {
    let out = run(&["solve"], GOLDEN, &[]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("unattainable"));
    assert!(text.contains("witness nodes 1 (u = 2)"), "{text}");
    assert!(text.contains("A0 = x - 2"), "{text}");
}

#[test]
fn hermite_case_has_denominator_one() {
    let doc = r#"{"k":3,"nodes":[{"u":"0","values":["1","2"]},{"u":"1","values":["4"]}]}"#;
    let (code, v) = json_run(&["solve"], doc);
    assert_eq!(code, 0);
    assert_eq!(v["B"], serde_json::json!(["1"]));
}

#[test]
fn sampled_solvable_document_round_trips() {
    let sample = run(&["--seed", "9", "sample", "--shape", "3,2", "--k", "3", "--defect", "2"], "", &[]);
    assert_eq!(sample.status.code(), Some(0));
    let doc = String::from_utf8(sample.stdout).unwrap();
    let data = parse_document(&doc, &ParseOptions::default()).unwrap();
    let (code, v) = json_run(&["solve", "--method", "all"], &doc);
    assert_eq!(code, 0);
    let sol = RationalSolution::new(poly_from(data.field(), &v["A"]), poly_from(data.field(), &v["B"]));
    assert!(rhip_check(&data, &sol));
    assert_eq!(v["minimal"]["kernel_dim"], 2);
}

#[test]
fn forced_sample_is_unattainable() {
    let sample = run(
        &["sample", "--shape", "2,1", "--k", "2", "--defect", "1", "--force-unattainable", "--node", "0"],
        "",
        &[],
    );
    let doc = String::from_utf8(sample.stdout).unwrap();
    let (code, v) = json_run(&["solve"], &doc);
    assert_eq!(code, 3);
    assert_eq!(v["witnesses"], serde_json::json!([0]));
}

#[test]
fn seed_environment_variable_takes_precedence() {
    let args = ["sample", "--shape", "2,2", "--k", "2", "--seed", "1"];
    let with_env = run(&args, "", &[("RATHERM_SEED", "2")]).stdout;
    let seed2 = run(&["sample", "--shape", "2,2", "--k", "2", "--seed", "2"], "", &[]).stdout;
    let seed1 = run(&args, "", &[]).stdout;
    assert_eq!(with_env, seed2);
    assert_ne!(seed1, seed2);
    let bad = run(&args, "", &[("RATHERM_SEED", "abc")]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn classify_reports_charts() {
    let (code, v) = json_run(&["classify"], GOLDEN);
    assert_eq!(code, 3);
    assert_eq!(v["defect"], 1);
    assert_eq!(v["chart"], "both");
    assert_eq!(v["witnesses"], serde_json::json!([1]));
    assert_eq!(v["diagonal_minors"]["2"], "1");
    let (code, v) = json_run(&["classify", "--method", "rank"], GOLDEN);
    assert_eq!(code, 3);
    assert_eq!(v["witnesses"], serde_json::json!([1]));
    assert_eq!(v["chart"], Value::Null);
}

#[test]
fn minors_table() {
    let (code, v) = json_run(&["minors", "--t-min", "2", "--t-max", "3"], GOLDEN);
    assert_eq!(code, 0);
    assert_eq!(v["diagonal"]["2"], "1");
    assert_eq!(v["diagonal"]["3"], "-1");
    for vec in v["vectors"].as_array().unwrap() {
        assert_eq!(vec["annihilates"], true);
    }
    let out = run(&["minors", "--t-min", "0"], GOLDEN, &[]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn eea_trace_marks_the_cut_row() {
    let (code, v) = json_run(&["eea-trace"], GOLDEN);
    assert_eq!(code, 0);
    assert_eq!(v["cut_row"], 2);
    assert_eq!(v["cut_row_coprime"], false);

    let doc = r#"{"k":3,"nodes":[{"u":"0","values":["1","2"]},{"u":"1","values":["5"]}]}"#;
    let (_, v) = json_run(&["eea-trace"], doc);
    assert_eq!(v["cut_row"], 1);
    assert_eq!(v["cut_row_coprime"], true);
}

#[test]
fn verify_exit_codes() {
    for (suite, code) in [("corrected", 0), ("delta-shift", 0), ("catalog", 4), ("self-test", 4)] {
        let out = run(&["verify", "--suite", suite, "--samples", "20"], "", &[]);
        assert_eq!(out.status.code(), Some(code), "{suite}");
    }
    let (code, v) = json_run(&["--field", "p:10007", "verify", "--suite", "corrected", "--samples", "20"], "");
    assert_eq!(code, 0);
    assert_eq!(v["field"], "GF(10007)");
    let out = run(&["verify", "--suite", "nope"], "", &[]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn input_errors_exit_1_with_a_pointer() {
    let out = run(&["solve"], r#"{"k":1,"nodes":[{"u":"1/0","values":["1"]}]}"#, &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nodes[0].u"));

    let out = run(&["solve"], "not json", &[]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["solve", "--field", "p:8"], GOLDEN, &[]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["solve", "--input", "/nonexistent/file.json"], "", &[]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["sample", "--shape", "2,1", "--k", "2", "--defect", "2", "--force-unattainable"], "", &[]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["solve", "--bogus"], GOLDEN, &[]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn field_override_and_derivative_values() {
    let (code, v) = json_run(&["--field", "p:7", "solve"], GOLDEN);
    assert_eq!(code, 3);
    assert_eq!(v["stratum"], 1);

    // raw derivatives (2, 2, 2) at 0 become Taylor values (2, 2, 1)
    let doc = r#"{"k":3,"nodes":[{"u":"0","values":["2","2","2"]}]}"#;
    let (_, v) = json_run(&["solve", "--derivative-values"], doc);
    assert_eq!(v["A"], serde_json::json!(["2", "2", "1"]));
}

#[test]
fn help_exits_zero() {
    let out = run(&["--help"], "", &[]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("eea-trace"));
}
