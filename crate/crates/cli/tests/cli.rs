use std::process::{Command, Output};
use std::time::Duration;

use latgenus_cli::report::{Reference, Report, Status, VerificationItem};
use serde_json::Value;

fn latgenus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latgenus"))
        .args(args)
        .env_remove("LATGENUS_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn item(status: Status) -> VerificationItem {
    VerificationItem {
        id: "x".into(),
        criterion: None,
        module: "genus",
        description: "d".into(),
        expected: "1".into(),
        reference: Reference::Derived,
        computed: (status != Status::Skipped).then(|| "1".into()),
        status,
        note: None,
        elapsed: Duration::ZERO,
    }
}

#[test]
fn empty_report_is_valid() {
    let r = Report::new("desk", vec![]);
    let v: Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(v["items"], Value::Array(vec![]));
    assert_eq!(v["summary"]["pass"], 0);
    assert_eq!(r.exit_code(true), 0);
    assert!(r.to_text().contains("0 passed, 0 failed, 0 skipped"));
}

#[test]
fn single_pass_item_serializes_as_pass() {
    let r = Report::new("desk", vec![item(Status::Pass)]);
    let v: Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(v["items"][0]["status"], "pass");
    assert_eq!(v["items"][0]["reference"], "derived");
}

#[test]
fn exit_code_follows_worst_status() {
    let mixed = Report::new("desk", vec![item(Status::Pass), item(Status::Skipped), item(Status::Fail)]);
    assert_eq!(mixed.worst(), Status::Fail);
    assert_eq!(mixed.exit_code(false), 1);
    let skipped = Report::new("desk", vec![item(Status::Pass), item(Status::Skipped)]);
    assert_eq!(skipped.exit_code(false), 0);
    assert_eq!(skipped.exit_code(true), 3);
}

#[test]
fn corrupted_catalog_names_the_entry() {
    let text = include_str!("../../core/data/catalog.json");
    let needle = r#"{"det": 1, "even": true, "a2": 384}"#;
    assert!(text.contains(needle));
    let bad = text.replacen(needle, r#"{"det": 1, "even": false, "a2": 384}"#, 1);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("catalog.json");
    std::fs::write(&path, bad).unwrap();
    let out = latgenus(&["verify-paper", "--catalog", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("A15D9"), "{err}");

    std::fs::write(&path, "{ not json").unwrap();
    let out = latgenus(&["zoo", "list", "--catalog", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_input_is_a_configuration_error() {
    assert_eq!(latgenus(&["eta", "A24", "--w", "(1^4"]).status.code(), Some(2));
    assert_eq!(latgenus(&["theta", "NoSuchLattice"]).status.code(), Some(2));
    assert_eq!(latgenus(&["munoz", "sweep", "--mod", "6"]).status.code(), Some(2));
}

#[test]
fn eta_command_reports_both_routes() {
    let out = latgenus(&["--format", "json", "eta", "A24", "--w", "(1^4,-1^4,0^17)"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["eta"], "52");
    assert_eq!(v["eta_direct"], "52");
    assert_eq!(v["s_counts"]["2"], 16);
    let text = String::from_utf8(latgenus(&["eta", "A24", "--w", "(1^4,-1^4,0^17)"]).stdout).unwrap();
    assert!(text.contains("eta: 52"), "{text}");
}

#[test]
fn lattice_files_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e8.json");
    let l = latgenus::zoo::NamedLatticeCatalog::builtin().lattice("E8").unwrap();
    std::fs::write(&path, latgenus::exact::io::LatticeFile::from_lattice(&l).unwrap().to_json()).unwrap();
    let v = json_of(&latgenus(&["--format", "json", "theta", path.to_str().unwrap(), "--up-to", "4"]));
    assert_eq!(v["theta"]["2"], 240);
    assert_eq!(v["theta"]["4"], 2160);
}

#[test]
fn certificate_and_bound_commands() {
    let v = json_of(&latgenus(&["--format", "json", "f-cert", "D24", "--n", "2", "--w", "(1/2^24)"]));
    assert_eq!(v["certificate"]["value"], 5);
    let v = json_of(&latgenus(&["--format", "json", "g4", "A24", "--w", "(1^4,-1^4,0^17)"]));
    assert_eq!(v["g4_lower_bound"], 6);
    assert_eq!(v["delta"], 3);
    let v = json_of(&latgenus(&["--format", "json", "delta", "E8"]));
    assert_eq!(v["delta"], 1);
    let v = json_of(&latgenus(&["--format", "json", "f-search", "E8", "--n", "2", "--exhaustive", "--norm-cap", "8"]));
    assert_eq!(v["exhaustive"], true);
    assert_eq!(v["classes_total"], 256);
}

#[test]
fn lorentzian_commands() {
    let out = latgenus(&["--format", "json", "complement", "(8|4,3,2^8,1^6)"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["lattice"], "D8^2");
    assert_eq!(v["genus"], 4);
    assert_eq!(v["roots"], "D8+D8");
    let v = json_of(&latgenus(&["--format", "json", "genus", "(11|3^12,1^12)"]));
    assert_eq!(v["genus"], 9);
    let out = latgenus(&["plumbing", "verify", "--builtin"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 6, "{text}");
}

#[test]
fn munoz_commands() {
    let v = json_of(&latgenus(&["--format", "json", "munoz", "sweep", "--rmax", "8", "--mod", "4,8"]));
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    assert_eq!(rows[4]["reductions"]["8"], "-a^4");
    assert_eq!(rows[2]["reductions"]["8"], Value::Null);
    let v = json_of(&latgenus(&["--format", "json", "munoz", "table", "--gmax", "8"]));
    assert_eq!(v["rows"].as_array().unwrap().len(), 8);
}

#[test]
fn zoo_commands() {
    let v = json_of(&latgenus(&["--format", "json", "zoo", "list"]));
    assert!(v.as_array().unwrap().iter().any(|r| r["name"] == "Leech"));
    let out = latgenus(&["--format", "json", "zoo", "check", "A24"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["a2"], 600);
    assert_eq!(v["roots"], "A24");
}

fn without_timestamp(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("generated_at");
    v
}

#[test]
fn verify_paper_is_idempotent_and_cache_sound() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let cold = latgenus(&["--format", "json", "verify-paper"]);
    let warm1 = latgenus(&["--format", "json", "--cache-dir", cache, "verify-paper"]);
    let warm2 = latgenus(&["--format", "json", "--cache-dir", cache, "verify-paper"]);
    assert_eq!(cold.status.code(), warm2.status.code());
    let a = without_timestamp(json_of(&cold));
    let b = without_timestamp(json_of(&warm1));
    let c = without_timestamp(json_of(&warm2));
    assert_eq!(b, c);
    assert_eq!(a, c);
    assert!(std::fs::read_dir(dir.path()).unwrap().next().is_some(), "cache stays empty");
    let strict = latgenus(&["--strict", "--format", "json", "verify-paper"]);
    assert_eq!(strict.status.code(), cold.status.code());
}
