//! Integration tests for the command-line surface: subcommands, exit codes,
//! output modes, and the bundled scenario fixtures.

use std::path::PathBuf;
use std::process::Command;

use hopf_forge_cli::{run, RunOptions};

fn scenario_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name)
}

fn scenario_text(name: &str) -> String {
    std::fs::read_to_string(scenario_path(name)).expect("fixture exists")
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hopf-forge"))
}

#[test]
fn cocycle_order_reports_m_and_witness() {
    let cert = run::cocycle_order(&scenario_text("f7z3.json"), &RunOptions::default()).unwrap();
    assert!(cert.passed());
    let stage = &cert.stages[0];
    assert_eq!(stage.dims.get("class_order"), Some(&3));
    // f(1) = 1, f(sigma) = 3, f(sigma^2) = 3^2 = 2 mod 7.
    assert_eq!(
        stage.notes,
        vec!["f(0) = 1", "f(1) = 3", "f(2) = 2"]
    );
}

#[test]
fn construct_a_and_h_pipelines() {
    let a_scenario = r#"{
        "schema": "hopf-forge/1",
        "name": "quaternion_a",
        "pipeline": "a",
        "field": {"kind": "rational"},
        "group": {"kind": "abelian", "invariants": [2]},
        "cocycle": {"value_subgroup": {"zeta_order": 2},
                    "entries": [{"row": "1", "col": "1", "value": "-1"}],
                    "default": "1"}
    }"#;
    let cert = run::construct(a_scenario, &RunOptions::default()).unwrap();
    assert!(cert.passed(), "{}", cert.summary());
    let object = cert.object.as_ref().expect("construct emits the object");
    assert_eq!(object.algebra.basis.len(), 4);

    let h_scenario = r#"{
        "schema": "hopf-forge/1",
        "name": "gaussian_h",
        "pipeline": "h",
        "field": {"kind": "rational"},
        "group": {"kind": "abelian", "invariants": [2]},
        "extension": {
            "minpoly": ["1", "0", "1"],
            "automorphisms": {"id": ["0", "1"], "conj": ["0", "-1"]},
            "group_action": {"0": "id", "1": "conj"}
        }
    }"#;
    let cert = run::construct(h_scenario, &RunOptions::default()).unwrap();
    assert!(cert.passed(), "{}", cert.summary());
    assert_eq!(cert.object.as_ref().unwrap().algebra.basis.len(), 4);
}

#[test]
fn verify_round_trip_and_mutation() {
    // Construct A, verify the emitted object: exit 0 semantics.
    let cert = run::construct(
        &scenario_text("quaternion.json").replace("\"realize\"", "\"x\""),
        &RunOptions::default(),
    )
    .unwrap();
    let object = cert.object.clone().unwrap();
    let text = serde_json::to_string(&object).unwrap();
    let verified = run::verify(&text, &RunOptions::default()).unwrap();
    assert!(verified.passed(), "{}", verified.summary());

    // Corrupt one comultiplication coefficient: caught, axiom named.
    let mut bad = object.clone();
    let term = &mut bad.delta[5][0];
    term.c = format!("-{}", term.c).replace("--", "");
    let text = serde_json::to_string(&bad).unwrap();
    let verified = run::verify(&text, &RunOptions::default()).unwrap();
    assert!(!verified.passed());
    let failing: Vec<&str> = verified.stages[0]
        .checks
        .iter()
        .filter(|c| !c.status.is_pass())
        .map(|c| c.name.as_str())
        .collect();
    assert!(!failing.is_empty(), "{}", verified.summary());
}

#[test]
fn exit_codes_and_output_modes() {
    let dir = tempfile::tempdir().unwrap();

    // Exit 0 with --out and --json-only.
    let out = dir.path().join("cert.json");
    let status = binary()
        .args(["realize", scenario_path("trivial.json").to_str().unwrap()])
        .args(["--out", out.to_str().unwrap(), "--json-only"])
        .output()
        .unwrap();
    assert!(status.status.success());
    let stdout = String::from_utf8(status.stdout).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&stdout).expect("json-only prints JSON");
    assert_eq!(parsed["verdict"], "pass");
    let written: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written["schema"], "hopf-forge/1");

    // Exit 2 on malformed input, without a certificate.
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let status = binary()
        .args(["realize", bad.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2));

    // Exit 1 on a failing mathematical check (corrupted object).
    let cert = run::construct(
        &scenario_text("quaternion.json").replace("\"realize\"", "\"x\""),
        &RunOptions::default(),
    )
    .unwrap();
    let mut object = cert.object.unwrap();
    let term = &mut object.delta[5][0];
    term.c = format!("-{}", term.c).replace("--", "");
    let corrupted = dir.path().join("corrupted_x.json");
    std::fs::write(&corrupted, serde_json::to_string(&object).unwrap()).unwrap();
    let status = binary()
        .args(["verify", corrupted.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(1));
}

#[test]
fn no_parallel_and_depth_flags_accepted() {
    let status = binary()
        .args(["realize", scenario_path("trivial.json").to_str().unwrap()])
        .args(["--no-parallel", "--depth", "sampled"])
        .output()
        .unwrap();
    assert!(status.status.success());
}

#[test]
fn every_bundled_fixture_passes() {
    for fixture in [
        "quaternion.json",
        "f7z3.json",
        "trivial.json",
        "gf2_trivial.json",
        "klein4.json",
    ] {
        let cert = run::realize(&scenario_text(fixture), &RunOptions::default()).unwrap();
        assert!(cert.passed(), "{fixture}: {}", cert.summary());
    }
}
