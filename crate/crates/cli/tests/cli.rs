use std::path::PathBuf;
use std::process::{Command, Output};

use bispectral_core::nilpotent::wave;
use bispectral_core::operator::check_right_eigen;
use bispectral_core::pierce::PierceReport;
use bispectral_core::{MatPoly, NilpotentData, OperatorX, OperatorZ, QMatrix};
use serde_json::Value;

fn bispec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bispec")).args(args).output().expect("binary runs")
}

fn write_input(name: &str, contents: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

/// `θ = I x + e_21 x²`
const SAMPLE_THETA: &str = r#"{"n":2,"coeffs":[
    {"n":2,"rows":[[0,0],[0,0]]},
    {"n":2,"rows":[[1,0],[0,1]]},
    {"n":2,"rows":[[0,0],[1,0]]}]}"#;

/// `θ = e_21`, which fails `[S, θ(0)] = 0`.
const NON_MEMBER: &str = r#"{"n":2,"coeffs":[{"n":2,"rows":[[0,0],[1,0]]}]}"#;

fn sample_theta() -> MatPoly {
    MatPoly::x(vec![QMatrix::zero(2), QMatrix::identity(2), QMatrix::unit(2, 2, 1)])
}

#[test]
fn calogero_fixture_report() {
    let out = bispec(&["verify-calogero"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out), serde_json::json!({"left_eigen": true, "right_eigen": true}));
}

#[test]
fn membership_exit_codes() {
    let member = write_input("member.json", SAMPLE_THETA);
    let out = bispec(&["membership", "--theta", &member, "--n", "2", "--d", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["member"], true);
    assert_eq!(v["agree"], true);

    let other = write_input("nonmember.json", NON_MEMBER);
    for form in ["relations", "theoremgen", "both"] {
        let out = bispec(&["membership", "--theta", &other, "--n", "2", "--d", "2", "--form", form]);
        assert_eq!(out.status.code(), Some(1), "{form}");
        assert_eq!(stdout_json(&out)["member"], false);
    }
}

#[test]
fn build_b_verified_and_reparsed() {
    let theta = write_input("build_b.json", SAMPLE_THETA);
    let out = bispec(&["build-b", "--theta", &theta, "--n", "2", "--d", "2", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["verified"], true);
    let b: OperatorZ = serde_json::from_value(v["operator"].clone()).unwrap();
    assert_eq!(b.order(), Some(2));
    assert_eq!(b.coeffs().len(), 3);
    let nd = NilpotentData::shift(2).unwrap();
    assert!(check_right_eigen(&wave(&nd), &b, &sample_theta().to_matf()).unwrap());

    let plain = bispec(&["build-b", "--theta", &theta, "--n", "2", "--d", "2"]);
    let again: OperatorZ = serde_json::from_slice(&plain.stdout).unwrap();
    assert_eq!(again, b);
}

#[test]
fn build_b_refuses_non_members() {
    let other = write_input("build_b_non.json", NON_MEMBER);
    let out = bispec(&["build-b", "--theta", &other, "--n", "2", "--d", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["error"]["message"].as_str().unwrap().contains("not in"));
}

#[test]
fn basis_e_round_trips() {
    let out = bispec(&["basis-e", "--n", "2", "--d", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["dimension"], 10);
    let basis: Vec<MatPoly> = serde_json::from_value(v["basis"].clone()).unwrap();
    assert_eq!(basis.len(), 10);
    assert_eq!(serde_json::to_value(&basis).unwrap(), v["basis"]);
}

#[test]
fn nilpotent_with_explicit_s() {
    let s = write_input("e13.json", r#"{"n":3,"rows":[[0,0,1],[0,0,0],[0,0,0]]}"#);
    let out = bispec(&["verify-nilpotent", "--n", "3", "--s", &s]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["D"], 2);
    let out = bispec(&["verify-nilpotent", "--n", "4"]);
    assert_eq!(stdout_json(&out)["pass"], true);
    let not_nilpotent = write_input("identity.json", r#"{"n":2,"rows":[[1,0],[0,1]]}"#);
    assert_eq!(bispec(&["verify-nilpotent", "--n", "2", "--s", &not_nilpotent]).status.code(), Some(2));
}

#[test]
fn pierce_and_generators() {
    let out = bispec(&["pierce", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let report: PierceReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report.passed());
    let out = bispec(&["generators", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!((v["from"].as_u64(), v["to"].as_u64(), v["cap"].as_u64()), (Some(4), Some(6), Some(10)));
}

#[test]
fn ad_check_vanishes_for_member() {
    let theta = write_input("ad.json", SAMPLE_THETA);
    let out = bispec(&["ad-check", "--n", "2", "--d", "2", "--theta", &theta]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["vanishes"], true);
}

#[test]
fn calogero_build_l() {
    let zero = r#"{"n":2,"rows":[[0,0],[0,0]]}"#;
    let e22 = r#"{"n":2,"rows":[[0,0],[0,1]]}"#;
    let f = write_input("f.json", &format!(r#"{{"n":2,"var":"z","coeffs":[{zero},{zero},{e22}]}}"#));
    let out = bispec(&["calogero-build-l", "--f", &f, "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["verified"], true);
    let l: OperatorX = serde_json::from_value(v["operator"].clone()).unwrap();
    assert_eq!(l, bispectral_core::calogero::calogero_operator());

    let bad = write_input("f_bad.json", r#"{"n":2,"var":"z","coeffs":[{"n":2,"rows":[[0,1],[0,0]]}]}"#);
    assert_eq!(bispec(&["calogero-build-l", "--f", &bad]).status.code(), Some(1));
    let wrong_var = write_input("f_x.json", NON_MEMBER);
    assert_eq!(bispec(&["calogero-build-l", "--f", &wrong_var]).status.code(), Some(2));
}

#[test]
fn properties_are_deterministic() {
    let args = ["properties", "--suite", "product-p0", "--trials", "25", "--seed", "9"];
    let (a, b) = (bispec(&args), bispec(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = stdout_json(&a);
    assert_eq!((v["passed"].as_u64(), v["trials"].as_u64()), (Some(25), Some(25)));
}

#[test]
fn properties_require_seed() {
    let out = bispec(&["properties", "--suite", "pk0"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "usage");
}

#[test]
fn malformed_input_is_exit_two() {
    let junk = write_input("junk.json", "{not json");
    let out = bispec(&["membership", "--theta", &junk, "--n", "2", "--d", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "json");
    let missing = bispec(&["membership", "--theta", "/nonexistent/theta.json", "--n", "2", "--d", "2"]);
    assert_eq!(missing.status.code(), Some(2));
    let wrong_size = write_input("wrong_size.json", SAMPLE_THETA);
    assert_eq!(bispec(&["membership", "--theta", &wrong_size, "--n", "3", "--d", "2"]).status.code(), Some(2));
}

#[test]
fn theta_in_z_is_rejected() {
    let f = write_input("theta_z.json", r#"{"n":2,"var":"z","coeffs":[{"n":2,"rows":[[1,0],[0,1]]}]}"#);
    let out = bispec(&["membership", "--theta", &f, "--n", "2", "--d", "2"]);
    assert_eq!(out.status.code(), Some(2));
}
