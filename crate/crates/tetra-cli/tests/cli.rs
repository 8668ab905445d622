//! End-to-end tests of the `tetra` binary over its stdin/stdout JSON
//! interface.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tetra"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary must start");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().expect("binary must finish")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("process must exit normally")
}

#[test]
fn check_accepts_the_origin() {
    let out = run(&["check"], r#"{"x": [[0,0],[0,0],[0,0]]}"#);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["report"]["consensus"], Value::Bool(true));
    assert_eq!(v["report"]["member"], Value::Bool(true));
}

#[test]
fn check_rejects_a_boundary_point() {
    let out = run(&["check"], r#"{"x": [[1,0],[0,0],[0,0]]}"#);
    assert_eq!(exit_code(&out), 1);
    let v = stdout_json(&out);
    assert_eq!(v["report"]["member"], Value::Bool(false));
    assert_eq!(v["report"]["borderline"], Value::Bool(true));
}

#[test]
fn check_interior_rational_point() {
    let out = run(&["check"], r#"{"x": [[0.5,0],[0.5,0],[0.25,0]]}"#);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["report"]["consensus"], Value::Bool(true));
    let margin = v["report"]["margins"]["inequality"].as_f64().unwrap();
    assert!((margin - 0.375).abs() < 1e-12);
}

#[test]
fn check_rejects_malformed_input() {
    let out = run(&["check"], r#"{"x": [[1,0],[0,0]]}"#);
    assert_eq!(exit_code(&out), 2);
    let out = run(&["check"], r#"{"x": [[1,0],[0,0],[0,0]], "extra": 1}"#);
    assert_eq!(exit_code(&out), 2);
    let out = run(&["check"], "not json");
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn schwarz_reports_infeasible_with_exit_one() {
    let out = run(&["schwarz"], r#"{"y": [[0.9,0],[0,0],[0.2,0]]}"#);
    assert_eq!(exit_code(&out), 1);
    let v = stdout_json(&out);
    assert_eq!(v["feasible"], Value::Bool(false));
    let n = v["indicatrix_norm"].as_f64().unwrap();
    assert!((n - 1.1).abs() < 1e-12);
}

#[test]
fn schwarz_solves_the_axis_target() {
    let out = run(&["schwarz", "--lambda-samples", "4"], r#"{"y": [[0,0],[0,0],[1,0]]}"#);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["feasible"], Value::Bool(true));
    assert_eq!(v["degenerate"], Value::Bool(true));
    assert!(v["zeta"].is_null());
    // phi(lambda) = (0, 0, lambda) for the axis target.
    let samples = v["phi_samples"].as_array().unwrap();
    assert_eq!(samples.len(), 4);
    for s in samples {
        let lam = &s["lambda"];
        let phi3 = &s["phi"][2];
        assert_eq!(lam[0].as_f64().unwrap(), phi3[0].as_f64().unwrap());
        assert_eq!(lam[1].as_f64().unwrap(), phi3[1].as_f64().unwrap());
        assert_eq!(s["phi"][0][0].as_f64().unwrap(), 0.0);
    }
}

#[test]
fn schwarz_emits_the_frozen_coefficient() {
    let out = run(
        &["schwarz", "--emit-f", "--lambda-samples", "8"],
        r#"{"y": [[0.5,0],[0.25,0],[0.25,0]]}"#,
    );
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    let c_re = v["c"][0].as_f64().unwrap();
    assert!((c_re - 2.0 / 7.0).abs() < 1e-15);
    assert!((v["zeta"].as_f64().unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
    let f_samples = v["f_samples"].as_array().unwrap();
    assert_eq!(f_samples.len(), 8);
    // pi(F) must agree with phi at each sample.
    for (fs, ps) in f_samples.iter().zip(v["phi_samples"].as_array().unwrap()) {
        let f: Vec<(f64, f64)> = (0..4)
            .map(|k| {
                (
                    fs["f"][k][0].as_f64().unwrap(),
                    fs["f"][k][1].as_f64().unwrap(),
                )
            })
            .collect();
        let det_re = f[0].0 * f[3].0 - f[0].1 * f[3].1 - (f[1].0 * f[2].0 - f[1].1 * f[2].1);
        let phi3_re = ps["phi"][2][0].as_f64().unwrap();
        assert!((det_re - phi3_re).abs() < 1e-10);
    }
}

#[test]
fn canonical_axis_point() {
    let out = run(&["canonical"], r#"{"x": [[0,0],[0,0],[0.5,0]]}"#);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert!((v["r"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    let image = &v["image"];
    assert!((image[2][0].as_f64().unwrap() - 0.5).abs() < 1e-9);
    assert!(image[0][0].as_f64().unwrap().abs() < 1e-9);
}

#[test]
fn canonical_triangular_point_has_zero_radius() {
    let out = run(&["canonical"], r#"{"x": [[0.3,0],[0.2,0],[0.06,0]]}"#);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert!(v["r"].as_f64().unwrap() <= 1e-9);
}

#[test]
fn canonical_rejects_points_outside_the_domain() {
    let out = run(&["canonical"], r#"{"x": [[0,0],[0,0],[1,0]]}"#);
    assert_eq!(exit_code(&out), 2);
}

const IDENTITY_AUT: &str =
    r#""upsilon": {"omega": [-1,0], "alpha": [0,0]}, "chi": {"omega": [-1,0], "alpha": [0,0]}, "flip": false"#;

#[test]
fn aut_apply_identity() {
    let input = format!(
        r#"{{"automorphism": {{{IDENTITY_AUT}}}, "x": [[0.1,0.2],[0.3,-0.1],[0.05,0]]}}"#
    );
    let out = run(&["aut", "apply"], &input);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert!((v["result"][0][0].as_f64().unwrap() - 0.1).abs() < 1e-12);
    assert!((v["result"][1][1].as_f64().unwrap() + 0.1).abs() < 1e-12);
}

#[test]
fn aut_apply_rotation_law() {
    // upsilon = rotation by i is (omega, alpha) = (-i, 0).
    let input = r#"{"automorphism": {"upsilon": {"omega": [0,-1], "alpha": [0,0]}, "chi": {"omega": [-1,0], "alpha": [0,0]}, "flip": false}, "x": [[0.5,0],[0.25,0],[0.1,0]]}"#;
    let out = run(&["aut", "apply"], input);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    // (i * 0.5, 0.25, i * 0.1)
    assert!(v["result"][0][0].as_f64().unwrap().abs() < 1e-15);
    assert!((v["result"][0][1].as_f64().unwrap() - 0.5).abs() < 1e-15);
    assert!((v["result"][1][0].as_f64().unwrap() - 0.25).abs() < 1e-15);
    assert!((v["result"][2][1].as_f64().unwrap() - 0.1).abs() < 1e-15);
}

#[test]
fn aut_compose_matches_sequential_application() {
    let g = r#"{"upsilon": {"omega": [0.6,0.8], "alpha": [0.2,0.1]}, "chi": {"omega": [1,0], "alpha": [-0.3,0.2]}, "flip": true}"#;
    let h = r#"{"upsilon": {"omega": [0,1], "alpha": [0.5,0]}, "chi": {"omega": [-0.8,0.6], "alpha": [0.1,-0.4]}, "flip": false}"#;
    let x = r#"[[0.1,0.05],[0.2,-0.1],[0.15,0.02]]"#;

    let composed = run(&["aut", "compose"], &format!(r#"{{"g": {g}, "h": {h}}}"#));
    assert_eq!(exit_code(&composed), 0);
    let gh = stdout_json(&composed)["result"].clone();

    let via_composed = run(
        &["aut", "apply"],
        &format!(r#"{{"automorphism": {gh}, "x": {x}}}"#),
    );
    let via_h = run(&["aut", "apply"], &format!(r#"{{"automorphism": {h}, "x": {x}}}"#));
    let hx = stdout_json(&via_h)["result"].clone();
    let via_g = run(&["aut", "apply"], &format!(r#"{{"automorphism": {g}, "x": {hx}}}"#));

    let a = stdout_json(&via_composed);
    let b = stdout_json(&via_g);
    for k in 0..3 {
        for p in 0..2 {
            let ax = a["result"][k][p].as_f64().unwrap();
            let bx = b["result"][k][p].as_f64().unwrap();
            assert!((ax - bx).abs() < 1e-11, "component {k},{p}: {ax} vs {bx}");
        }
    }
}

#[test]
fn aut_inverse_round_trips() {
    let g = r#"{"upsilon": {"omega": [0.6,0.8], "alpha": [0.2,0.1]}, "chi": {"omega": [1,0], "alpha": [-0.3,0.2]}, "flip": true}"#;
    let x = r#"[[0.1,0.05],[0.2,-0.1],[0.15,0.02]]"#;
    let inv = run(&["aut", "inverse"], &format!(r#"{{"automorphism": {g}}}"#));
    assert_eq!(exit_code(&inv), 0);
    let ginv = stdout_json(&inv)["result"].clone();
    let gx = stdout_json(&run(
        &["aut", "apply"],
        &format!(r#"{{"automorphism": {g}, "x": {x}}}"#),
    ))["result"]
        .clone();
    let back = stdout_json(&run(
        &["aut", "apply"],
        &format!(r#"{{"automorphism": {ginv}, "x": {gx}}}"#),
    ));
    let original: Value = serde_json::from_str(x).unwrap();
    for k in 0..3 {
        for p in 0..2 {
            let a = back["result"][k][p].as_f64().unwrap();
            let b = original[k][p].as_f64().unwrap();
            assert!((a - b).abs() < 1e-11);
        }
    }
}

#[test]
fn aut_rejects_bad_parameters() {
    let input = r#"{"automorphism": {"upsilon": {"omega": [0.5,0], "alpha": [0,0]}, "chi": {"omega": [-1,0], "alpha": [0,0]}, "flip": false}, "x": [[0,0],[0,0],[0,0]]}"#;
    let out = run(&["aut", "apply"], input);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn mu_feasible_and_infeasible() {
    let out = run(
        &["mu"],
        r#"{"a": [[0,0],[1,0],[0,0],[0,0]], "b": [[0,0],[0,0],[1,0],[0,0]]}"#,
    );
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["feasible"], Value::Bool(true));
    assert!((v["wedge"][0].as_f64().unwrap() - 1.0).abs() < 1e-15);

    let out = run(
        &["mu"],
        r#"{"a": [[0,0],[1,0],[0,0],[0,0]], "b": [[1,0],[0,0],[1,0],[1,0]]}"#,
    );
    assert_eq!(exit_code(&out), 1);
    let v = stdout_json(&out);
    assert_eq!(v["feasible"], Value::Bool(false));
}

#[test]
fn mu_rejects_diagonal_derivative() {
    let out = run(
        &["mu"],
        r#"{"a": [[0,0],[1,0],[0,0],[0,0]], "b": [[1,0],[0,0],[0,0],[0.5,0]]}"#,
    );
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn verify_small_run_is_clean_and_deterministic() {
    let args = ["verify", "--samples", "300", "--seed", "11", "--grid", "64"];
    let a = run(&args, "");
    assert_eq!(exit_code(&a), 0, "stderr: {}", String::from_utf8_lossy(&a.stderr));
    let b = run(&args, "");
    let mut va = stdout_json(&a);
    let mut vb = stdout_json(&b);
    assert_eq!(va["clean"], Value::Bool(true));
    // Reports are byte-identical up to the timing fields.
    for v in [&mut va, &mut vb] {
        for suite in v["suites"].as_array_mut().unwrap() {
            suite["elapsed_secs"] = Value::Null;
        }
    }
    assert_eq!(va, vb);
}

#[test]
fn verify_single_suite_selection() {
    let out = run(
        &["verify", "--suite", "invariance", "--samples", "100", "--seed", "3"],
        "",
    );
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["suite"], Value::String("invariance".into()));
    assert!(v["property_worst"].as_array().unwrap().len() > 10);
}

#[test]
fn verify_rejects_unknown_suite() {
    let out = run(&["verify", "--suite", "bogus"], "");
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn floats_use_seventeen_significant_digits() {
    let out = run(&["check"], r#"{"x": [[0.5,0],[0.5,0],[0.25,0]]}"#);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(
        text.contains("3.7500000000000000e-1"),
        "expected scientific-format margins in {text}"
    );
}

#[test]
fn pretty_flag_formats_output() {
    let out = run(&["--pretty", "check"], r#"{"x": [[0,0],[0,0],[0,0]]}"#);
    assert_eq!(exit_code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("\n  "));
    let _: Value = serde_json::from_str(&text).expect("pretty output must stay valid JSON");
}
