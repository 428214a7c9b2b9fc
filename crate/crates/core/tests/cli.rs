use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

use semigroup_lab::report::{Report, CACHE_ENV, SCHEMA};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_semigroup-lab"));
    c.env_remove(CACHE_ENV);
    c
}

fn schema_file() -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schema/report.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn analyze(dir: &Path, name: &str, args: &[&str]) -> (Output, PathBuf) {
    let out = dir.join(name);
    let o = bin()
        .arg("analyze")
        .args(args)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    (o, out)
}

#[test]
fn definite_run_writes_a_v1_report() {
    let dir = tempfile::tempdir().unwrap();
    let (o, out) = analyze(dir.path(), "r.json", &["--model", "free_abelian:2", "--analyses", "ideals,ore"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let schema = schema_file();
    assert_eq!(schema["properties"]["schema"]["const"], SCHEMA);
    assert_eq!(report["schema"], SCHEMA);
    let mut required: Vec<&str> = schema["required"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    let mut keys: Vec<&str> = report.as_object().unwrap().keys().map(String::as_str).collect();
    required.sort();
    keys.sort();
    assert_eq!(keys, required);
    for a in report["analyses"].as_array().unwrap() {
        assert!(a["operation"].as_str().unwrap().contains("::"));
        assert!(a["parameters"].is_object());
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(
        &cfg,
        r#"{"model":{"family":"free_monoid","rank":2},"analyses":["freeness"],"freeness_g":["BB"]}"#,
    )
    .unwrap();
    let (o, _) = analyze(dir.path(), "i.json", &["--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let (o, _) = analyze(dir.path(), "e.json", &["--model", "torus:1"]);
    assert_eq!(o.status.code(), Some(1));
    let (o, _) = analyze(dir.path(), "d.json", &["--model", "free_abelian:1", "--depth", "0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn canonical_output_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--model", "numerical:2,3", "--analyses", "fock,boundary", "--seed", "11", "--canonical"];
    let (_, a) = analyze(dir.path(), "a.json", &args);
    let (_, b) = analyze(dir.path(), "b.json", &args);
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn cache_directory_is_reused() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = bin()
            .env(CACHE_ENV, &cache)
            .args(["analyze", "--model", "free_monoid:2", "--analyses", "ore", "--out"])
            .arg(&out)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0));
        Report::load(&out).unwrap()
    };
    let first = run("1.json");
    let second = run("2.json");
    assert!(!first.timings.as_ref().unwrap().cache_hit);
    assert!(second.timings.as_ref().unwrap().cache_hit);
    assert_eq!(first.canonical_json(), second.canonical_json());
    assert!(cache.join(format!("{}.json", first.config_hash)).exists());
}

#[test]
fn explain_reads_a_saved_report() {
    let dir = tempfile::tempdir().unwrap();
    let (_, out) = analyze(dir.path(), "r.json", &["--model", "numerical:2,3", "--analyses", "independence"]);
    let o = bin()
        .args(["explain", "--topic", "independence", "--report"])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("independence"));
}
