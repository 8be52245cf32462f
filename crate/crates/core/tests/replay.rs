use hopf_join::certificate::{replay, run, run_scenario, Certificate, Outcome, Request};
use hopf_join::io::{parse_document, Document, Loader, ScenarioFile};
use hopf_join::Exec;

fn scenario(json: &str) -> ScenarioFile {
    match parse_document(json, "inline").unwrap() {
        Document::Scenario(s) => s,
        other => panic!("expected a scenario, got {}", other.kind()),
    }
}

fn roundtrip(cert: &Certificate) {
    let back = Certificate::from_json(&cert.to_json()).unwrap();
    let r = replay(&back).unwrap();
    assert!(r.reproduced(), "{}: {:?}", cert.id, r.differences);
    assert_eq!(r.replayed.canonical_json(), cert.canonical_json());
}

#[test]
fn every_operation_replays() {
    let loader = Loader::new(".");
    let scenarios = [
        r#"{"kind": "scenario", "id": "f", "operation": "fusion", "a1": "builtin:Fun(2)", "a2": "builtin:M(2)", "m": 2}"#,
        r#"{"kind": "scenario", "id": "ef", "operation": "equivariant-fusion", "comodule": "builtin:regular(Z/3)", "m": 2}"#,
        r#"{"kind": "scenario", "id": "t", "operation": "theorem-main", "comodule": "builtin:free(Z/2,2)", "m": 1, "profile": ["0", "1"], "unital": true}"#,
        r#"{"kind": "scenario", "id": "p", "operation": "pullback", "comodule": "builtin:regular(Z/2)", "m_a": 1, "m_b": 2}"#,
        r#"{"kind": "scenario", "id": "free", "operation": "is-free", "gset": "builtin:trivial(Z/2,3)"}"#,
        r#"{"kind": "scenario", "id": "dj", "operation": "discrete-join", "x": 2, "y": 3, "m": 3}"#,
        r#"{"kind": "scenario", "id": "gj", "operation": "gauged-join-iso", "gset": "builtin:regular(S3)", "m": 2}"#,
        r#"{"kind": "scenario", "id": "jf", "operation": "fun-of-join-vs-fusion", "x": 3, "y": 1, "m": 2}"#,
        r#"{"kind": "scenario", "id": "d", "operation": "diagonal-join-freeness", "gset": "builtin:free(Z/2,2)", "m": 2}"#,
    ];
    for text in scenarios {
        let cert = run_scenario(&scenario(text), &loader, Exec::Parallel).unwrap();
        assert_eq!(cert.outcome, Outcome::Pass, "{}", cert.to_text());
        roundtrip(&cert);
    }
}

#[test]
fn check_certificates_replay_including_failures() {
    let broken = r#"{"kind": "algebra", "basis": ["1", "a"], "products": [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"], [1, 1, 1, "2"]], "unit": ["0", "1"]}"#;
    let cert = run(
        &Request::Check {
            document: parse_document(broken, "inline").unwrap(),
        },
        &Loader::new("."),
        Exec::Sequential,
    )
    .unwrap();
    assert_eq!(cert.outcome, Outcome::AxiomFailure);
    roundtrip(&cert);
}

#[test]
fn unital_request_on_a_non_free_action_is_infeasible() {
    let point = parse_document(
        r#"{"kind": "gset", "group": "builtin:Z/3", "action": [[0, 0, 0], [1, 1, 1]]}"#,
        "inline",
    )
    .unwrap();
    let cert = run(
        &Request::SolveConnection {
            comodule: point,
            unital: true,
        },
        &Loader::new("."),
        Exec::Parallel,
    )
    .unwrap();
    assert_eq!(cert.outcome, Outcome::Infeasible);
    assert!(!cert.answers["principal"]);
    roundtrip(&cert);
}
