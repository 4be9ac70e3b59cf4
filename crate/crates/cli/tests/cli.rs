use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use qframe_core::json::{self, OperatorFile};
use qframe_core::{FrameSystem, QMatrix, SuperFrame};
use serde_json::Value;

fn qframe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qframe")).args(args).env_remove("QFRAME_TOL").output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const BASIS2: &str = r#"{"dim":2,"vectors":[[[1,0,0,0],[0,0,0,0]],[[0,0,0,0],[1,0,0,0]]]}"#;

fn generated(dir: &Path, seed: &str) -> String {
    let out = qframe(&["gen", "--seed", seed, "--out", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    dir.to_str().unwrap().to_string()
}

#[test]
fn bounds_of_standard_basis() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.json", BASIS2);
    let out = qframe(&["bounds", "--frame", &f]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["A"], 1.0);
    assert_eq!(r["B"], 1.0);
    assert_eq!(r["parseval"], true);
    assert_eq!(r["tol"], 1e-8);
    assert!(r["anchor"].as_str().unwrap().contains("B‖u‖²"));
}

#[test]
fn numbers_carry_seventeen_digits() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.json", BASIS2);
    let text = String::from_utf8(qframe(&["bounds", "--frame", &f]).stdout).unwrap();
    assert!(text.contains("\"A\":1.0000000000000000"), "{text}");
}

#[test]
fn deficient_sequence_is_not_a_frame() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.json", r#"{"dim":2,"vectors":[[[1,0,0,0],[0,0,0,0]]]}"#);
    let out = qframe(&["bounds", "--frame", &f]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["frame"], false);
}

#[test]
fn tolerance_flag_and_environment() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.json", BASIS2);
    let exe = env!("CARGO_BIN_EXE_qframe");
    let from_env = Command::new(exe).args(["bounds", "--frame", &f]).env("QFRAME_TOL", "1e-3").output().unwrap();
    assert_eq!(report(&from_env)["tol"], 1e-3);
    let flag =
        Command::new(exe).args(["bounds", "--frame", &f, "--tol", "1e-5"]).env("QFRAME_TOL", "1e-3").output().unwrap();
    assert_eq!(report(&flag)["tol"], 1e-5);
    let bad = Command::new(exe).args(["bounds", "--frame", &f]).env("QFRAME_TOL", "-1").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn outside_range_kframe_fails_with_residual() {
    let dir = tempfile::tempdir().unwrap();
    let g = generated(dir.path(), "3");
    let out = qframe(&[
        "check-kframe",
        "--frame",
        &format!("{g}/lowrank_frame.json"),
        "--op",
        &format!("{g}/op_outside.json"),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["is_kframe"], false);
    assert!(r["range_residual"].as_f64().unwrap() > 0.1);
}

#[test]
fn generated_instance_is_a_kframe() {
    let dir = tempfile::tempdir().unwrap();
    let g = generated(dir.path(), "4");
    let out = qframe(&["check-kframe", "--frame", &format!("{g}/frame.json"), "--op", &format!("{g}/op.json")]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["is_kframe"], true);
    assert_eq!(r["bound_verified"], true);
    assert!(r["lower_bound"].as_f64().unwrap() > 0.0);
}

#[test]
fn malformed_json_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.json", "{\"dim\": 2,\n \"vectors\": [[[1, 0, 0, 0], [0, 0 0, 0]]]}");
    let out = qframe(&["bounds", "--frame", &f]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2 column"), "{err}");
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.json", BASIS2);
    let k3 = write(dir.path(), "k.json", &serde_json::to_string(&QMatrix::identity(3)).unwrap());
    assert_eq!(qframe(&["check-kframe", "--frame", &f, "--op", &k3]).status.code(), Some(2));
    let short = write(dir.path(), "s.json", r#"{"dim":3,"vectors":[[[1,0,0,0],[0,0,0,0]]]}"#);
    assert_eq!(qframe(&["bounds", "--frame", &short]).status.code(), Some(2));
    assert_eq!(qframe(&["bounds", "--frame", "/nonexistent/f.json"]).status.code(), Some(2));
    assert_eq!(qframe(&["bounds", "--frame", &f, "--bogus"]).status.code(), Some(2));
    assert_eq!(qframe(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(qframe(&["gen"]).status.code(), Some(2));
    assert_eq!(qframe(&["verify-all", "--trials", "0"]).status.code(), Some(2));
}

#[test]
fn douglas_on_generated_pair() {
    let dir = tempfile::tempdir().unwrap();
    let g = generated(dir.path(), "5");
    let out = qframe(&["douglas", "--op", &format!("{g}/op.json"), "--op2", &format!("{g}/synthesis.json")]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["consistent"], true);
    assert!(r["constant"].as_f64().unwrap() > 0.0);
}

#[test]
fn kdual_report_feeds_kdual_verify() {
    let dir = tempfile::tempdir().unwrap();
    let g = generated(dir.path(), "6");
    let (frame, op) = (format!("{g}/frame.json"), format!("{g}/op.json"));
    let d = dir.path().join("d.json");
    let out = qframe(&["kdual", "--frame", &frame, "--op", &op, "--out", d.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = qframe(&["kdual-verify", "--frame", &frame, "--op", &op, "--dual", d.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["holds"], true);

    // perturb one dual vector
    let mut dual: FrameSystem = json::load(&dir.path().join("dual.json")).unwrap();
    let mut vs = dual.vectors().to_vec();
    vs[0][0].a0 += 1e-3;
    dual = FrameSystem::new(dual.dim(), vs).unwrap();
    let p = dir.path().join("perturbed.json");
    json::save(&p, &dual).unwrap();
    let out = qframe(&["kdual-verify", "--frame", &frame, "--op", &op, "--dual", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(report(&out)["residual"].as_f64().unwrap() >= 1e-4);
}

#[test]
fn kdual_of_non_kframe_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let g = generated(dir.path(), "7");
    let out =
        qframe(&["kdual", "--frame", &format!("{g}/lowrank_frame.json"), "--op", &format!("{g}/op_outside.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["is_kframe"], false);
}

#[test]
fn minimality_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let g = generated(dir.path(), "8");
    let out = qframe(&["minimal", "--frame", &format!("{g}/frame.json"), "--op", &format!("{g}/op.json")]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["minimal"], false);
    assert!(r["witness_distance"].as_f64().unwrap() > 1e-3);

    let f = write(dir.path(), "f.json", BASIS2);
    let k = write(dir.path(), "k.json", &serde_json::to_string(&QMatrix::identity(2)).unwrap());
    let out = qframe(&["minimal", "--frame", &f, "--op", &k]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["minimal"], true);
}

#[test]
fn k_orthonormal_basis_dual() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.json", BASIS2);
    // K = diag(i, j) is unitary, so the standard basis is a K-orthonormal basis
    let k = write(dir.path(), "k.json", r#"{"rows":2,"cols":2,"data":[[0,1,0,0],[0,0,0,0],[0,0,0,0],[0,0,1,0]]}"#);
    let out = qframe(&["konb", "--frame", &f, "--op", &k]);
    assert_eq!(out.status.code(), Some(0));
    let dual: FrameSystem = serde_json::from_value(report(&out)["dual"].clone()).unwrap();
    // K* e_1 = −i e_1, K* e_2 = −j e_2
    assert_eq!(dual.vectors()[0][0], -qframe_core::Quaternion::I);
    assert_eq!(dual.vectors()[1][1], -qframe_core::Quaternion::J);

    let half = write(dir.path(), "h.json", &serde_json::to_string(&QMatrix::identity(2).scale(0.5)).unwrap());
    assert_eq!(qframe(&["konb", "--frame", &f, "--op", &half]).status.code(), Some(1));
}

#[test]
fn super_verbs_on_generated_instance() {
    let dir = tempfile::tempdir().unwrap();
    let g = generated(dir.path(), "9");
    let (sf, op) = (format!("{g}/super.json"), format!("{g}/super_op.json"));
    let out = qframe(&["super-check", "--frame", &sf, "--op", &op]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let r = report(&out);
    assert_eq!(r["is_kframe"], true);
    assert_eq!(r["range_condition"]["cond1"], true);
    assert_eq!(r["range_condition"]["cond2"], true);

    let out = qframe(&["super-dual", "--frame", &sf, "--op", &op, "--dual", &format!("{g}/super_dual.json")]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["split"]["left"], true);
    assert_eq!(r["combine"]["agree"], true);

    let computed = dir.path().join("sd.json");
    let out = qframe(&["super-dual", "--frame", &sf, "--op", &op, "--out", computed.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = qframe(&["super-dual", "--frame", &sf, "--op", &op, "--dual", computed.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    // a full operator is not a block pair
    assert_eq!(
        qframe(&[
            "super-dual",
            "--frame",
            &sf,
            "--op",
            &format!("{g}/op.json"),
            "--dual",
            &format!("{g}/super_dual.json")
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn super_check_from_components_and_duplicate() {
    let dir = tempfile::tempdir().unwrap();
    let g = generated(dir.path(), "10");
    let frame = format!("{g}/frame.json");
    let blocks = OperatorFile::Blocks { k1: QMatrix::identity(4), k2: QMatrix::identity(4) };
    let op = dir.path().join("kk.json");
    json::save(&op, &blocks).unwrap();
    let out = qframe(&["super-check", "--frame", &frame, "--frame2", &frame, "--op", op.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["is_kframe"], false);
    assert_eq!(r["left"]["is_kframe"], true);
}

#[test]
fn gen_round_trips_bit_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let g = generated(dir.path(), "11");
    let p = |name: &str| Path::new(&g).join(name);
    let text = |name: &str| fs::read_to_string(p(name)).unwrap();
    let again = |s: String| s + "\n";

    for name in ["frame.json", "dual.json", "lowrank_frame.json"] {
        let f: FrameSystem = json::load_frame(&p(name)).unwrap();
        assert_eq!(again(json::to_string(&f).unwrap()), text(name), "{name}");
    }
    for name in ["op.json", "synthesis.json", "op_outside.json"] {
        let k: QMatrix = json::load(&p(name)).unwrap();
        assert_eq!(again(json::to_string(&k).unwrap()), text(name), "{name}");
    }
    for name in ["super.json", "super_dual.json"] {
        let s: SuperFrame = json::load_super_frame(&p(name)).unwrap();
        assert_eq!(again(json::to_string(&s).unwrap()), text(name), "{name}");
    }
    let ops = json::load_operator(&p("super_op.json")).unwrap();
    assert!(matches!(ops, OperatorFile::Blocks { .. }));
    assert_eq!(again(json::to_string(&ops).unwrap()), text("super_op.json"));

    // same seed, same bytes
    let dir2 = tempfile::tempdir().unwrap();
    let g2 = generated(dir2.path(), "11");
    for entry in fs::read_dir(&g).unwrap() {
        let name = entry.unwrap().file_name();
        assert_eq!(fs::read(Path::new(&g).join(&name)).unwrap(), fs::read(Path::new(&g2).join(&name)).unwrap());
    }
}

#[test]
fn verify_all_small_run_is_deterministic() {
    let a = qframe(&["verify-all", "--seed", "5", "--trials", "2"]);
    let b = qframe(&["verify-all", "--seed", "5", "--trials", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let r = report(&a);
    assert_eq!(r["overall"], true);
    assert_eq!(r["config"]["trials"], 2);
    assert!(r["entries"].as_array().unwrap().iter().all(|e| e["anchor"].is_string()));
}
