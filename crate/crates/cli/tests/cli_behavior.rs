//! End-to-end checks of the binary's contract: exit codes, error wording,
//! stream separation, flag handling, and artifact layout.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn scenario(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name)
}

fn run(args: &[&str], out_dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cas"))
        .args(args)
        .arg("--out")
        .arg(out_dir)
        .output()
        .expect("binary runs")
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn passing_scenario_exits_zero_and_writes_artifacts() {
    let dir = tempfile::tempdir().expect("temp dir");
    let out = run(
        &["powerlaw", "verify", scenario("zipf.json").to_str().unwrap()],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(stderr(&out).contains("zipf: PASS"));
    assert!(dir.path().join("zipf/report.json").is_file());
    assert!(dir.path().join("zipf/distribution.csv").is_file());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("stdout is JSON");
    assert_eq!(report["pass"], serde_json::Value::Bool(true));
}

#[test]
fn failed_check_exits_one_but_still_reports() {
    let dir = tempfile::tempdir().expect("temp dir");
    let out = run(
        &["powerlaw", "verify", scenario("alphabet.json").to_str().unwrap()],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("alphabet: FAIL"));
    assert!(stderr(&out).contains("hypotheses"));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("alphabet/report.json"))
            .expect("report written"))
        .expect("valid JSON");
    assert_eq!(report["pass"], serde_json::Value::Bool(false));
}

#[test]
fn counterexample_reports_no_exact_rent_configuration() {
    let dir = tempfile::tempdir().expect("temp dir");
    let out = run(
        &[
            "vonthunen",
            "verify",
            scenario("counterexample.json").to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("stdout is JSON");
    assert_eq!(report["summary"], "no VT configuration exists");
    assert_eq!(report["vt_exists"], serde_json::Value::Bool(false));
}

#[test]
fn wrong_kind_is_an_input_error() {
    let dir = tempfile::tempdir().expect("temp dir");
    let out = run(
        &["vonthunen", "verify", scenario("zipf.json").to_str().unwrap()],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("/kind"), "missing pointer: {err}");
    assert!(err.contains("\"powerlaw\""), "missing found kind: {err}");
}

#[test]
fn unknown_fields_are_rejected_with_a_pointer() {
    let dir = tempfile::tempdir().expect("temp dir");
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"kind":"powerlaw","d":3,"cost":{"kind":"fixed","gammas":[1.0,2.0,3.0]},"extra":1}"#,
    )
    .expect("write");
    let out = run(&["powerlaw", "verify", bad.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown field `extra`"));
}

#[test]
fn restated_unit_tags_must_match_the_declaration() {
    let dir = tempfile::tempdir().expect("temp dir");
    let text = std::fs::read_to_string(scenario("counterexample.json")).expect("read");
    let mangled = text.replace("\"rents_unit\": \"EUR/m2\"", "\"rents_unit\": \"USD/acre\"");
    assert_ne!(text, mangled, "fixture lost its rents_unit tag");
    let bad = dir.path().join("mismatch.json");
    std::fs::write(&bad, mangled).expect("write");
    let out = run(&["vonthunen", "verify", bad.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("/rents_unit"), "missing pointer: {err}");
    assert!(err.contains("USD/acre") && err.contains("EUR/m2"), "tags not named: {err}");
}

#[test]
fn duplicate_scenario_stems_are_rejected_up_front() {
    let dir = tempfile::tempdir().expect("temp dir");
    let path = scenario("flux.json");
    let out = run(
        &[
            "vonthunen",
            "verify",
            path.to_str().unwrap(),
            path.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("share the output name"));
    assert!(!dir.path().join("flux").exists(), "no partial output");
}

#[test]
fn seed_flag_overrides_the_scenario_seed() {
    let dir = tempfile::tempdir().expect("temp dir");
    let out = run(
        &[
            "vonthunen",
            "run",
            scenario("adapt.json").to_str().unwrap(),
            "--seed",
            "99",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("stdout is JSON");
    assert_eq!(report["seed"], serde_json::json!(99));
}

#[test]
fn csv_format_echoes_the_table_instead_of_the_report() {
    let dir = tempfile::tempdir().expect("temp dir");
    let out = run(
        &[
            "powerlaw",
            "verify",
            scenario("zipf.json").to_str().unwrap(),
            "--format",
            "csv",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("k,y_k,q_hat_k"), "unexpected stdout: {text}");
    // The JSON report still lands on disk.
    assert!(dir.path().join("zipf/report.json").is_file());
}

#[test]
fn explain_lists_operations_and_answers_known_ones() {
    let known = Command::new(env!("CARGO_BIN_EXE_cas"))
        .args(["--explain", "flux_entropy"])
        .output()
        .expect("binary runs");
    assert_eq!(known.status.code(), Some(0));
    assert!(stdout(&known).contains("entropy"));

    let unknown = Command::new(env!("CARGO_BIN_EXE_cas"))
        .args(["--explain", "nonsense"])
        .output()
        .expect("binary runs");
    assert_eq!(unknown.status.code(), Some(2));
    assert!(stderr(&unknown).contains("available:"));
}

#[test]
fn parallel_jobs_match_serial_artifacts() {
    let serial = tempfile::tempdir().expect("temp dir");
    let parallel = tempfile::tempdir().expect("temp dir");
    let names = ["flux.json", "rings.json", "tiny_vt.json", "counterexample.json"];
    let paths: Vec<PathBuf> = names.iter().map(|n| scenario(n)).collect();
    let mut serial_args = vec!["vonthunen", "verify"];
    serial_args.extend(paths.iter().map(|p| p.to_str().unwrap()));
    let mut parallel_args = serial_args.clone();
    parallel_args.extend(["--jobs", "4"]);

    let a = run(&serial_args, serial.path());
    let b = run(&parallel_args, parallel.path());
    assert_eq!(a.status.code(), Some(0), "stderr: {}", stderr(&a));
    assert_eq!(b.status.code(), Some(0), "stderr: {}", stderr(&b));
    for name in names {
        let stem = Path::new(name).file_stem().unwrap().to_str().unwrap();
        for artifact in ["report.json", "locations.csv"] {
            let x = std::fs::read(serial.path().join(stem).join(artifact)).expect("serial");
            let y = std::fs::read(parallel.path().join(stem).join(artifact)).expect("parallel");
            assert_eq!(x, y, "{stem}/{artifact} differs between serial and parallel runs");
        }
    }
}
