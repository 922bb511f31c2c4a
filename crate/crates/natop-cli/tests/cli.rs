//! End-to-end tests of the command-line surface: exit codes, report
//! round-trips, and the shipped fixture store.

use std::path::{Path, PathBuf};
use std::process::Command;

use natop_cli::report::ClassificationReport;

fn natop() -> Command {
    Command::new(env!("CARGO_BIN_EXE_natop"))
}

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

#[test]
fn classify_succeeds_and_reports_dimension() {
    let out = natop()
        .args(["classify", "--phi", "0", "--psi", "1,0"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("nullspace dimension 1"), "{text}");
    assert!(text.contains("lie_bracket"));
}

#[test]
fn classify_rejects_bad_flag_combinations() {
    // closed does not apply to a (1,0) second field
    let out = natop()
        .args(["classify", "--phi", "0", "--psi", "1,0", "--sym-psi", "closed"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // malformed valence
    let out = natop()
        .args(["classify", "--phi", "0", "--psi", "banana"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identities_all_pass_and_unknown_suite_is_usage_error() {
    let out = natop().args(["identities", "--suite", "all"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().filter(|l| l.starts_with("pass")).count() >= 16);
    assert!(!text.contains("FAIL"));

    let out = natop().args(["identities", "--suite", "nonsense"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_passes_on_natural_and_fails_on_the_counterexample() {
    let out = natop()
        .args(["verify", "--op", "froelicher_nijenhuis", "--trials", "6", "--seed", "7"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));

    let out = natop()
        .args(["verify", "--op", "nonexample_a2", "--trials", "6", "--seed", "7"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("witness"), "{text}");

    let out = natop()
        .args(["verify", "--op", "no_such_op", "--trials", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn homogeneity_refuses_degenerate_unrestricted_search() {
    let out = natop()
        .args(["homogeneity", "--phi", "0", "--psi", "1,1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("p > 1"), "{err}");

    let out = natop()
        .args(["homogeneity", "--phi", "0", "--psi", "1,1", "--bilinear"])
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn classification_report_round_trips_identical_basis_expressions() {
    let dir = tempdir();
    let path = dir.join("report.json");
    let out = natop()
        .args([
            "classify",
            "--phi",
            "1",
            "--psi",
            "0,1",
            "--json",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: ClassificationReport =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let loaded = report.basis_expressions().unwrap();

    // Recompute in process and compare the expressions exactly.
    let sig = report.signature_struct();
    let outcome = natop_core::pipeline::classify(&sig, &[], None).unwrap();
    let direct = outcome.basis.expressions();
    assert_eq!(loaded, direct);

    // Writing the loaded report back out is byte-identical modulo timing.
    let second = dir.join("report2.json");
    let out = natop()
        .args([
            "classify",
            "--phi",
            "1",
            "--psi",
            "0,1",
            "--json",
            second.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(
        normalize(&std::fs::read_to_string(&path).unwrap()),
        normalize(&std::fs::read_to_string(&second).unwrap())
    );
}

#[test]
fn verify_basis_from_report_file() {
    let dir = tempdir();
    let path = dir.join("basis.json");
    assert!(natop()
        .args(["classify", "--phi", "0", "--psi", "0,1", "--json", path.to_str().unwrap()])
        .output()
        .unwrap()
        .status
        .success());
    let out = natop()
        .args([
            "verify",
            "--basis-from",
            path.to_str().unwrap(),
            "--trials",
            "6",
            "--seed",
            "3",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().filter(|l| l.starts_with("pass")).count(), 2);
}

/// The shipped fixtures reproduce bit-identically (timing aside).
#[test]
fn fixture_store_regression() {
    let dir = fixtures_dir();
    let mut checked = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        let name = path.file_stem().unwrap().to_str().unwrap().to_string();
        let fixture: ClassificationReport =
            serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let mut args = vec![
            "classify".to_string(),
            "--phi".into(),
            fixture.signature.phi_p.to_string(),
            "--psi".into(),
            format!("{},{}", fixture.signature.psi_r, fixture.signature.psi_s),
        ];
        if let Some(s) = &fixture.constraints.sym_psi {
            args.push("--sym-psi".into());
            args.push(s.clone());
        }
        if fixture.constraints.alt_phi {
            args.push("--alt-phi".into());
        }
        if fixture.constraints.alt_output {
            args.push("--alt-output".into());
        }
        let tmp = tempdir().join(format!("{name}.json"));
        args.push("--json".into());
        args.push(tmp.to_str().unwrap().into());
        let out = natop().args(&args).output().unwrap();
        assert!(out.status.success(), "{name}");
        let fresh = std::fs::read_to_string(&tmp).unwrap();
        let stored = std::fs::read_to_string(&path).unwrap();
        assert_eq!(normalize(&stored), normalize(&fresh), "fixture {name} drifted");
        checked += 1;
    }
    assert!(checked >= 18, "only {checked} fixtures found");
}

#[test]
fn ansatz_and_system_dumps_are_valid_json() {
    let dir = tempdir();
    let ansatz = dir.join("ansatz.json");
    let system = dir.join("system.json");
    let out = natop()
        .args([
            "classify",
            "--phi",
            "0",
            "--psi",
            "0,2",
            "--ansatz-json",
            ansatz.to_str().unwrap(),
            "--system-json",
            system.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let a: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&ansatz).unwrap()).unwrap();
    assert_eq!(a["terms"].as_array().unwrap().len(), 12);
    assert_eq!(a["terms"][0]["id"], "a1");
    let s: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&system).unwrap()).unwrap();
    let rows = s["rows"].as_array().unwrap();
    assert!(!rows.is_empty());
    assert!(rows[0]["k_monomial"].as_str().unwrap().contains('K'));
}

#[test]
fn catalog_listing_emits_valid_json() {
    let out = natop().args(["catalog", "--json"]).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let entries = v.as_array().unwrap();
    assert!(entries.len() > 60);
}

fn tempdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!(
        "natop-cli-test-{}-{:?}",
        std::process::id(),
        std::thread::current().id()
    ));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

/// Strips the volatile timing field before comparing reports.
fn normalize(text: &str) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_str(text).unwrap();
    if let Some(obj) = v.as_object_mut() {
        obj.remove("timing_ms");
    }
    v
}
