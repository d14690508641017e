use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn drugwatch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_drugwatch")).args(args).output().expect("binary runs")
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn ingest_reproduces_golden_records() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("records.jsonl");
    let d = data();
    let o = drugwatch(&["ingest", "--corpus", arg(&d.join("corpus/case_reports_50.jsonl")), "--out", arg(&out), "--data-dir", arg(&d)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(std::fs::read(&out).unwrap(), std::fs::read(d.join("golden/records.jsonl")).unwrap());
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let expected: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(d.join("golden/run_report.json")).unwrap()).unwrap();
    assert_eq!(report, expected);
}

#[test]
fn append_replaces_reingested_articles() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("records.jsonl");
    let d = data();
    let small = d.join("corpus/case_reports_small.jsonl");
    let run = |append: bool| {
        let mut args = vec!["ingest", "--corpus", arg(&small), "--out", arg(&out), "--data-dir", arg(&d)];
        if append {
            args.push("--append");
        }
        assert!(drugwatch(&args).status.success());
        std::fs::read(&out).unwrap()
    };
    let first = run(false);
    assert!(!first.is_empty());
    assert_eq!(run(true), first);
}

#[test]
fn unreadable_input_exits_2() {
    let o = drugwatch(&["ingest", "--corpus", "/nonexistent/corpus.jsonl", "--out", "/tmp/never.jsonl"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("/nonexistent/corpus.jsonl"));
    let o = drugwatch(&["eval", "--gold", "/nonexistent/gold.jsonl", "--pred", "/nonexistent/pred.jsonl"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_threshold_exits_1() {
    let d = data();
    let o = drugwatch(&["ingest", "--corpus", arg(&d.join("corpus/case_reports_small.jsonl")), "--out", "/tmp/x.jsonl", "--threshold", "1.5"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn eval_prints_flat_json_then_table() {
    let d = data();
    let o = drugwatch(&["eval", "--gold", arg(&d.join("eval/gold.jsonl")), "--pred", arg(&d.join("eval/pred_flan_t5.jsonl")), "--per-role"]);
    assert!(o.status.success());
    let stdout = String::from_utf8(o.stdout).unwrap();
    let mut lines = stdout.lines();
    let flat: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    for key in ["em_main_f1", "em_sub_f1", "em_overall_f1", "token_main_f1", "token_sub_f1", "token_overall_f1"] {
        let v = flat[key].as_f64().unwrap();
        assert!((0.0..=100.0).contains(&v) && (v * 100.0 - (v * 100.0).round()).abs() < 1e-6, "{key}={v}");
    }
    assert!(stdout.contains("overall"));
}

#[test]
fn faers_url_and_fixture_fetch() {
    let o = drugwatch(&["faers", "url", "--kind", "generic-name", "--term", "aspirin", "--count", "patient-sex"]);
    assert!(o.status.success());
    let stdout = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(
        lines[0],
        "https://api.fda.gov/drug/event.json?search=patient.drug.openfda.generic_name:\"aspirin\"&count=patient.patientsex"
    );
    assert!(data().join("faers").join(lines[1]).exists());

    let fixtures = data().join("faers");
    let o = drugwatch(&[
        "faers", "fetch", "--mode", "fixture", "--fixtures", arg(&fixtures), "--kind", "generic-name", "--term", "aspirin",
        "--count", "patient-sex",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let entries = v["entries"].as_array().unwrap();
    let sum: u64 = entries.iter().map(|e| e["count"].as_u64().unwrap()).sum();
    assert_eq!(v["total"].as_u64().unwrap(), sum);
}

#[test]
fn synthetic_recording_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let o = drugwatch(&["faers", "record", "--kind", "effect", "--term", "Rash", "--out", arg(dir.path()), "--synthetic"]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let names = |d: &Path| {
        let mut v: Vec<_> = std::fs::read_dir(d).unwrap().map(|e| e.unwrap().file_name()).collect();
        v.sort();
        v
    };
    assert_eq!(names(a.path()), names(b.path()));
    for n in names(a.path()) {
        assert_eq!(std::fs::read(a.path().join(&n)).unwrap(), std::fs::read(b.path().join(&n)).unwrap());
        assert_eq!(std::fs::read(a.path().join(&n)).unwrap(), std::fs::read(data().join("faers").join(&n)).unwrap());
    }
}
