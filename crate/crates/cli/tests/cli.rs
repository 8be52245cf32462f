use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn hopf_join(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopf-join"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_fixture(args: &[&str], name: &str) -> Output {
    let path = fixture(name);
    let mut all = args.to_vec();
    all.push(path.to_str().unwrap());
    hopf_join(&all)
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn valid_hopf_file_passes() {
    let out = run_fixture(&["check"], "fun_z2_hopf.json");
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(json(&out)["verdicts"]["hopf axioms"], true);
}

#[test]
fn nonassociative_product_names_the_triple() {
    let out = run_fixture(&["check", "--format", "text"], "nonassociative.json");
    assert_eq!(code(&out), 1);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("associativity (triple (a, a, a))"), "{text}");
}

#[test]
fn truncated_file_is_malformed() {
    let out = run_fixture(&["check"], "truncated.json");
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line"), "{}", stderr(&out));
}

#[test]
fn solve_connection_exit_codes() {
    let out = run_fixture(&["solve-connection"], "regular_z3.json");
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let cert = json(&out);
    assert!(cert["matrices"]["ell"].is_object());
    assert_eq!(cert["verdicts"]["can∘L = id"], true);

    let out = run_fixture(&["solve-connection", "--unital"], "regular_z3.json");
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(json(&out)["verdicts"]["ℓ(1) = 1⊗1"], true);

    let out = run_fixture(&["solve-connection"], "point_z2.json");
    assert_eq!(code(&out), 3);
    assert!(json(&out)["matrices"]["ell infeasibility"].is_object());
}

#[test]
fn fusion_scenarios() {
    let out = run_fixture(&["fusion"], "theorem_z2.json");
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let cert = json(&out);
    assert!(cert["verdicts"].as_object().unwrap().values().all(|v| v == true));
    for k in ["ell", "lifted", "L", "can"] {
        assert!(cert["matrices"][k].is_object(), "{k}");
    }

    let out = run_fixture(&["fusion"], "pullback_z2.json");
    assert_eq!(code(&out), 0, "{}", stderr(&out));

    let out = run_fixture(&["fusion"], "bad_profile.json");
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("not a perfect square"), "{}", stderr(&out));
}

#[test]
fn classical_scenarios() {
    let out = run_fixture(&["classical"], "free_z4.json");
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["answers"]["free"], true);

    let out = run_fixture(&["classical"], "join_vs_fusion.json");
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(json(&out)["verdicts"]["algebra isomorphism"], true);

    let out = run_fixture(&["classical"], "nonfree_diagonal.json");
    assert_eq!(code(&out), 4);
    assert!(stderr(&out).contains("precondition failed"), "{}", stderr(&out));
}

#[test]
fn scenario_in_the_wrong_command_is_rejected() {
    let out = run_fixture(&["classical"], "theorem_z2.json");
    assert_eq!(code(&out), 2);
}

#[test]
fn certificates_replay_and_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.json");
    let second = dir.path().join("b.json");
    for (path, flag) in [(&first, "--sequential"), (&second, "--format=json")] {
        let out = run_fixture(&["fusion", "--output", path.to_str().unwrap(), flag], "theorem_z2.json");
        assert_eq!(code(&out), 0, "{}", stderr(&out));
    }
    let strip = |p: &PathBuf| {
        let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
        v.as_object_mut().unwrap().remove("timing");
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(strip(&first), strip(&second));

    let out = hopf_join(&["verify-certificate", first.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).contains("reproduced"));

    // a tampered connection no longer reproduces
    let text = std::fs::read_to_string(&first).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let entry = &mut v["matrices"]["ell"]["entries"][0][2];
    *entry = serde_json::Value::String("7".into());
    let tampered = dir.path().join("bad.json");
    std::fs::write(&tampered, serde_json::to_string(&v).unwrap()).unwrap();
    let out = hopf_join(&["verify-certificate", tampered.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
}

#[test]
fn infeasibility_certificate_replays() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("point.json");
    let out = run_fixture(
        &["solve-connection", "--output", path.to_str().unwrap()],
        "point_z2.json",
    );
    assert_eq!(code(&out), 3);
    let out = hopf_join(&["verify-certificate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn scenario_batch_emits_one_certificate_each() {
    let a = fixture("free_z4.json");
    let b = fixture("join_vs_fusion.json");
    let out = hopf_join(&["classical", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(json(&out).as_array().unwrap().len(), 2);
}
