use std::path::PathBuf;
use std::process::Command;

use fuscat_cli::{run, Outcome};
use serde_json::Value;

fn corpus(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name)
        .display()
        .to_string()
}

fn fuscat(args: &[&str]) -> Outcome {
    let mut all = vec!["fuscat"];
    all.extend_from_slice(args);
    run(all, None)
}

fn machine(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "machine"]);
    let out = fuscat(&all);
    assert!(out.stderr.is_empty(), "{}", out.stderr);
    (out.code, serde_json::from_str(&out.stdout).unwrap())
}

#[test]
fn exact_check_on_s3_pipeline() {
    let path = corpus("s3_pipeline.json");
    let out = fuscat(&["exact-check", &path, "--embed", "infl", "--functor", "res"]);
    assert_eq!(out.code, 0);
    assert!(
        out.stdout.contains("fpdim_identity: 6 = 2 x 3"),
        "{}",
        out.stdout
    );
    assert!(out.stdout.contains("tolerance_object: 1e-9"));
}

#[test]
fn exact_check_fails_for_non_normal_restriction() {
    let path = corpus("s3_pipeline.json");
    let (code, v) = machine(&[
        "exact-check",
        &path,
        "--embed",
        "infl",
        "--functor",
        "res_Z2",
    ]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], false);
    assert_eq!(v["fields"]["normal"], false);
}

#[test]
fn fpdim_on_fibonacci() {
    let out = fuscat(&["fpdim", &corpus("fibonacci.json")]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("1.6180339887"));
    assert!(out.stdout.contains("3.6180339887"));
}

#[test]
fn validate_broken_ring_reports_witnesses() {
    let out = fuscat(&["validate", &corpus("broken_ring.json")]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("rigidity"), "{}", out.stdout);
    let out = fuscat(&["validate", &corpus("a4_pipeline.json")]);
    assert_eq!(out.code, 0);
}

#[test]
fn broken_ring_is_a_data_error_elsewhere() {
    let out = fuscat(&["fpdim", &corpus("broken_ring.json")]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("broken_ring.json:3"), "{}", out.stderr);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(fuscat(&["frobnicate"]).code, 2);
    assert_eq!(fuscat(&["fpdim"]).code, 2);
    assert_eq!(fuscat(&["fpdim", "/nonexistent.json"]).code, 2);
    let out = fuscat(&["functor-check", &corpus("s3_pipeline.json")]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("infl"));
    assert_eq!(fuscat(&["--help"]).code, 0);
}

#[test]
fn tolerance_override() {
    let path = corpus("fibonacci.json");
    let out = run(
        ["fuscat", "fpdim", path.as_str(), "--format", "machine"],
        Some("1e-8, 1e-5"),
    );
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["fields"]["tolerance_object"], 1e-8);
    assert_eq!(v["fields"]["tolerance_aggregate"], 1e-5);
    let out = run(["fuscat", "fpdim", path.as_str()], Some("fast"));
    assert_eq!(out.code, 2);
}

#[test]
fn machine_and_human_share_fields() {
    let path = corpus("s3_pipeline.json");
    let human = fuscat(&["functor-check", &path, "--functor", "res"]);
    let (code, v) = machine(&["functor-check", &path, "--functor", "res"]);
    assert_eq!(code, human.code);
    for key in v["fields"].as_object().unwrap().keys() {
        assert!(human.stdout.contains(&format!("  {key}: ")), "{key}");
    }
}

#[test]
fn index2_on_d4() {
    let (code, v) = machine(&[
        "index2-check",
        &corpus("d4_pipeline.json"),
        "--functor",
        "res",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["fields"]["fp_index"], 2.0);
}

#[test]
fn pointed_commands() {
    let p = corpus("pointed.json");
    assert_eq!(
        fuscat(&["pointed", "simple-check", &p, "--id", "C_Z5"]).code,
        0
    );
    assert_eq!(
        fuscat(&["pointed", "simple-check", &p, "--id", "C_Z4_omega1"]).code,
        0
    );
    let (code, v) = machine(&["pointed", "simple-check", &p, "--id", "C_S3"]);
    assert_eq!(code, 1);
    assert_eq!(v["fields"]["witness"].as_array().unwrap().len(), 3);
    let (code, v) = machine(&[
        "pointed",
        "build-seq",
        "--groups",
        &corpus("pointed_seq.json"),
        "--cocycle",
        &corpus("omega_z2.json"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["fields"]["middle_cocycle_trivial"], false);
}

#[test]
fn cocycle_commands() {
    let doc = fuscat(&["cocycle", "--cyclic", "3", "--q", "2"]);
    assert_eq!(doc.code, 0);
    let dir = std::env::temp_dir().join(format!("fuscat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("omega.json");
    std::fs::write(&file, &doc.stdout).unwrap();
    let (code, v) = machine(&["cocycle", file.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["fields"]["is_coboundary"], false);
    assert_eq!(v["fields"]["h3_order"], 3);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn equivariantize_and_repring() {
    let a = corpus("actions.json");
    let (code, v) = machine(&["equivariantize", &a, "--action", "inversion"]);
    assert_eq!(code, 0);
    assert_eq!(v["fields"]["fpdim_equivariant"], 6.0);
    let (code, v) = machine(&["repring", "--builtin", "A5"]);
    assert_eq!(code, 0);
    assert_eq!(v["fields"]["sum_of_squares"], 60);
    let (code, v) = machine(&["group", "--builtin", "S4"]);
    assert_eq!(code, 0);
    assert_eq!(v["fields"]["simple"], false);
    assert_eq!(
        machine(&["repring", "builtin:s3_pipeline", "--group", "S3"]).0,
        0
    );
}

#[test]
fn seed_does_not_change_verdicts() {
    let path = corpus("a4_pipeline.json");
    let a = machine(&["exact-check", &path, "--embed", "infl", "--functor", "res"]);
    let b = machine(&[
        "exact-check",
        &path,
        "--embed",
        "infl",
        "--functor",
        "res",
        "--seed",
        "7",
    ]);
    assert_eq!(a, b);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_fuscat");
    let ok = Command::new(bin)
        .args(["fpdim", &corpus("fibonacci.json")])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(bin)
        .args(["validate", &corpus("broken_ring.json")])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let usage = Command::new(bin).arg("nope").output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}
