//! Black-box tests of the `funk` binary.

use std::process::{Command, Output};

fn funk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_funk"))
        .args(args)
        .env_remove("FUNKFINSLER_THREADS")
        .output()
        .expect("failed to launch binary")
}

fn stdout(args: &[&str]) -> String {
    let out = funk(args);
    assert!(out.status.success(), "{:?}: {:?}", args, out);
    String::from_utf8(out.stdout).unwrap()
}

fn json_number(doc: &str, key: &str) -> f64 {
    let pat = format!("\"{key}\":");
    let at = doc.find(&pat).unwrap_or_else(|| panic!("missing key {key}")) + pat.len();
    let rest = &doc[at..];
    let end = rest
        .find(|c: char| c == ',' || c == '}' || c == ']')
        .unwrap();
    rest[..end].parse().unwrap()
}

#[test]
fn eval_known_values() {
    let doc = stdout(&[
        "eval", "--eps", "0", "--r", "1", "--x", "0.5,0", "--xi", "1,0",
    ]);
    assert!((json_number(&doc, "F") - 2.0).abs() < 1e-12);
    assert!((json_number(&doc, "alpha") - 4.0 / 3.0).abs() < 1e-12);
    assert!((json_number(&doc, "beta") - 2.0 / 3.0).abs() < 1e-12);
    assert!((json_number(&doc, "S") - 3.0).abs() < 1e-10); // S = (3/2) F for eps = 0
    assert!((json_number(&doc, "K") + 0.25).abs() < 1e-10);
    assert!((json_number(&doc, "c") - 0.75).abs() < 1e-12);
    for key in ["g", "G", "ric", "s_gap", "k_gap", "h", "W"] {
        assert!(doc.contains(&format!("\"{key}\":")), "missing {key}");
    }
}

#[test]
fn eval_domain_error_exits_2() {
    let out = funk(&["eval", "--eps", "0", "--r", "1", "--x", "2,0", "--xi", "1,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("outside"));
}

#[test]
fn eval_rejects_bad_eps() {
    let out = funk(&["eval", "--eps", "5", "--r", "1", "--x", "0,0", "--xi", "1,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn field_shape_and_euclidean_k() {
    let doc = stdout(&[
        "field", "--eps", "0", "--r", "1", "--quantity", "K", "--nx", "4", "--ntheta", "3",
    ]);
    let lines: Vec<&str> = doc.lines().collect();
    assert_eq!(lines[0], "x1,x2,xi1,xi2,value");
    assert_eq!(lines.len(), 1 + 4 * 4 * 3);
    for line in &lines[1..] {
        let v: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!((v + 0.25).abs() < 1e-9, "{line}");
    }
}

#[test]
fn field_hyperbolic_k_gap_negative() {
    let doc = stdout(&[
        "field", "--eps", "-1", "--r", "1", "--quantity", "k_gap", "--nx", "8", "--ntheta", "4",
    ]);
    let lines: Vec<&str> = doc.lines().collect();
    assert_eq!(lines.len(), 1 + 8 * 8 * 4);
    for line in &lines[1..] {
        let v: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!(v < 0.0, "{line}");
    }
}

#[test]
fn field_usage_errors_exit_2() {
    for args in [
        vec!["field", "--eps", "0", "--quantity", "K", "--nx", "0", "--ntheta", "4"],
        vec!["field", "--eps", "0", "--quantity", "nope", "--nx", "4", "--ntheta", "4"],
    ] {
        assert_eq!(funk(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn distance_examples() {
    let doc = stdout(&["distance", "--eps", "0", "--r", "1", "--x", "0,0", "--y", "0.5,0"]);
    assert!((json_number(&doc, "d_xy") - 2.0f64.ln()).abs() < 1e-12);
    assert!((json_number(&doc, "d_yx") - 1.5f64.ln()).abs() < 1e-12);
    assert!(json_number(&doc, "quadrature_check") < 1e-8);
    assert!(doc.contains("\"boundary_point_xy\":[1.0000000000000000e0,0.0000000000000000e0]"));
}

#[test]
fn verify_passes_and_is_deterministic() {
    let args = ["verify", "--eps", "1", "--r", "1", "--seed", "7"];
    let a = stdout(&args);
    assert!(a.contains("\"pass\":true"));
    assert!(a.contains("\"rng\":\"chacha8\""));
    let b = stdout(&args);
    assert_eq!(a, b, "verify output must be byte-identical across runs");
    // thread cap must not change the report
    let out = Command::new(env!("CARGO_BIN_EXE_funk"))
        .args(args)
        .env("FUNKFINSLER_THREADS", "1")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(a, String::from_utf8(out.stdout).unwrap());
}

#[test]
fn verify_all_eps() {
    for (eps, r) in [("0", "1"), ("-1", "0.9")] {
        let doc = stdout(&["verify", "--eps", eps, "--r", r, "--seed", "7"]);
        assert!(doc.contains("\"pass\":true"), "eps={eps}");
    }
}

#[test]
fn zermelo_point_data() {
    let doc = stdout(&["zermelo", "--eps", "0", "--r", "1", "--x", "0.5,0"]);
    assert!((json_number(&doc, "c") - 0.75).abs() < 1e-12);
    assert!(doc.contains("\"W\":[5.0000000000000000e-1,0.0000000000000000e0]"));
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join("funk-cli-test-eval.json");
    let _ = std::fs::remove_file(&path);
    let doc = stdout(&[
        "eval", "--eps", "0", "--r", "1", "--x", "0.1,0.2", "--xi", "0.3,-0.4",
        "--out", path.to_str().unwrap(),
    ]);
    assert!(doc.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.contains("\"F\":"));
    std::fs::remove_file(&path).unwrap();
}
