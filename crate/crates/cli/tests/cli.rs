use std::path::PathBuf;
use std::process::{Command, Output};

use jetvar_core::forms::{Basis, Form, Generator};
use jetvar_core::text;
use jetvar_core::{CheckMode, MultiIndex};
use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

fn jetvar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jetvar"))
        .args(args)
        .env_remove("JETVAR_SEED")
        .output()
        .expect("binary runs")
}

fn path(name: &str) -> String {
    corpus(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).unwrap_or_else(|_| panic!("{}", String::from_utf8_lossy(&o.stderr)))
}

fn mi(v: &[u32]) -> MultiIndex {
    MultiIndex::new(v.to_vec())
}

#[test]
fn mechanics_euler_lagrange() {
    let o = jetvar(&["el", &path("mechanics.chart"), &path("free_particle.lag")]);
    assert_eq!(o.status.code(), Some(0));
    let chart = text::read_chart(&std::fs::read_to_string(corpus("mechanics.chart")).unwrap()).unwrap();
    let got = text::read_form(&stdout(&o), &chart).unwrap();
    // E = −y_(2) θ ∧ dx
    let c = chart.chart.at_order(2);
    let expected = Form::term(
        &c,
        Basis::Contact,
        -c.y(0, mi(&[2])),
        vec![Generator::theta(0, mi(&[0])), Generator::Dx(0)],
    )
    .unwrap();
    assert!(got.equivalent(&expected, CheckMode::Exact).unwrap());
    let report = stderr_json(&o);
    assert_eq!(report["status"], "pass");
    assert_eq!(report["children"][0]["measured"]["measured_order"], "2");
}

#[test]
fn zero_lagrangian_gives_zero_form() {
    let o = jetvar(&["el", &path("mechanics.chart"), &path("zero.lag")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("(term"));
}

#[test]
fn malformed_input_is_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.lag");
    std::fs::write(&bad, "(jetvar 1)\n(lagrangian mechanics)\n(density (* 1/2 (y 1 (1))\n").unwrap();
    let o = jetvar(&["el", &path("mechanics.chart"), bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("3:"));
}

#[test]
fn chart_mismatch_is_exit_2() {
    let o = jetvar(&["el", &path("field.chart"), &path("free_particle.lag")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn missing_file_is_exit_2() {
    let o = jetvar(&["el", &path("mechanics.chart"), &path("absent.lag")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn split_dy_into_two_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("parts");
    let o = jetvar(&["split", &path("mechanics.chart"), &path("dq.form"), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let mut names: Vec<String> = std::fs::read_dir(&out)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    assert_eq!(names, ["contact-0.form", "contact-1.form"]);
    let h = std::fs::read_to_string(out.join("contact-0.form")).unwrap();
    assert!(h.contains("(term (y 1 (1)) (dx 1))"), "{h}");
    let v = std::fs::read_to_string(out.join("contact-1.form")).unwrap();
    assert!(v.contains("(term 1 (theta 1 (0)))"), "{v}");
}

#[test]
fn split_horizontal_and_scalar_inputs() {
    let dir = tempfile::tempdir().unwrap();
    for (name, body, degree) in [
        ("h.form", "(term (x 1) (dx 1))", 1),
        ("s.form", "(term (^ (y 1 (0)) 2))", 0),
    ] {
        let f = dir.path().join(name);
        std::fs::write(&f, format!("(jetvar 1)\n(form mechanics)\n(degree {degree})\n(basis raw)\n{body}\n")).unwrap();
        let out = dir.path().join(format!("{name}.d"));
        let o = jetvar(&["split", &path("mechanics.chart"), f.to_str().unwrap(), "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        let names: Vec<_> = std::fs::read_dir(&out).unwrap().collect();
        assert_eq!(names.len(), 1);
        let part = std::fs::read_to_string(out.join("contact-0.form")).unwrap();
        assert!(part.contains(body), "{part}");
    }
}

#[test]
fn check_d_squared_records_seed() {
    let o = jetvar(&["check", "d-squared", "--seed", "7", "--cases", "40"]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["status"], "pass");
    assert_eq!(report["measured"]["seed"], "7");
    assert_eq!(report["children"].as_array().unwrap().len(), 5);
}

#[test]
fn seed_falls_back_to_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_jetvar"))
        .args(["check", "round-trip", "--cases", "5"])
        .env("JETVAR_SEED", "123")
        .output()
        .unwrap();
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["measured"]["seed"], "123");
}

#[test]
fn uniqueness_one_logs_dimensions() {
    let o = jetvar(&["check", "uniqueness-1"]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    let first = &report["children"][0]["measured"];
    assert_eq!(first["kernel_dim"], "0");
    assert!(first["unknowns"].as_str().unwrap().parse::<usize>().unwrap() > 0);
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let o = jetvar(&["check", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn report_goes_to_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = jetvar(&["check", "uniqueness-curve", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(report["status"], "pass");
}

#[test]
fn wave_poincare_cartan() {
    let o = jetvar(&["pc", &path("field.chart"), &path("wave.lag")]);
    assert_eq!(o.status.code(), Some(0));
    let report = stderr_json(&o);
    assert_eq!(report["children"].as_array().unwrap().len(), 4);
    // θ = λ + u_t θ ∧ ω_t − u_x θ ∧ ω_x, written with dx before θ
    let s = stdout(&o);
    assert!(s.contains("(term (y 1 (0,1)) (dx 1) (theta 1 (0,0)))"), "{s}");
    assert!(s.contains("(term (y 1 (1,0)) (dx 2) (theta 1 (0,0)))"), "{s}");
}

#[test]
fn mechanics_momentum() {
    let o = jetvar(&["momentum", &path("mechanics.chart"), &path("free_particle.lag")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(term (y 1 (1)) (theta 1 (0)))"));
    assert_eq!(stderr_json(&o)["measured"]["uniqueness"], "unique");
}

#[test]
fn decompose_writes_both_parts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("dec");
    let o = jetvar(&["decompose", &path("field.chart"), &path("field_source.form"), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let chart = text::read_chart(&std::fs::read_to_string(corpus("field.chart")).unwrap()).unwrap();
    let e = text::read_form(&std::fs::read_to_string(out.join("euler_lagrange.form")).unwrap(), &chart).unwrap();
    // E = ã − D_x ã^x − D_t ã^t for ã = u_t², ã^x = u_x, ã^t = t u
    let c = e.chart().clone();
    let (u, ut, uxx) = (c.y(0, mi(&[0, 0])), c.y(0, mi(&[0, 1])), c.y(0, mi(&[2, 0])));
    let coeff = &(&ut.powu(2) - &uxx) - &(&u + &(&c.x(1) * &ut));
    let expected = Form::term(&c, Basis::Contact, coeff, vec![Generator::theta(0, mi(&[0, 0])), Generator::Dx(0), Generator::Dx(1)]).unwrap();
    assert!(e.equivalent(&expected, CheckMode::Exact).unwrap());
    assert!(out.join("momentum.form").exists());
}

#[test]
fn squared_gradient_is_not_special() {
    let o = jetvar(&["special-check", &path("counterexample.chart"), &path("squared_gradient.lag")]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_json(&o)["measured"]["witness"], "none in the ansatz");
}

#[test]
fn affine_lagrangian_with_witness() {
    let o = jetvar(&[
        "special-check",
        &path("counterexample.chart"),
        &path("affine.lag"),
        "--witness",
        &path("affine_witness.form"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stderr_json(&o)["children"].as_array().unwrap().len(), 3);
}

#[test]
fn witness_of_wrong_order_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("w.form");
    std::fs::write(&f, "(jetvar 1)\n(form counterexample)\n(degree 2)\n(basis raw)\n(term (y 1 (1,0)) (dx 1) (dx 2))\n").unwrap();
    let o = jetvar(&["special-check", &path("counterexample.chart"), &path("affine.lag"), "--witness", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn lorentz_chart_parses() {
    let src = std::fs::read_to_string(corpus("lorentz.chart")).unwrap();
    let chart = text::read_chart(&src).unwrap();
    assert_eq!(chart.chart.base_dim(), 4);
    assert_eq!(chart.chart.fiber_dim(), 10);
    assert_eq!(chart.chart.registry().family(), Some("lorentz"));
}

#[test]
fn he_verify_passes() {
    let o = jetvar(&["he-verify", "--points", "5", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["status"], "pass");
}
