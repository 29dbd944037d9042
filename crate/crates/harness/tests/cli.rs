use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rlab_core::field::{FieldKind, CSV_HEADER};
use rlab_harness::io::{read_records, read_report};
use rlab_harness::Outcome;
use tempfile::TempDir;

fn rlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rlab"))
        .args(args)
        .env_remove("RLAB_THREADS")
        .output()
        .expect("spawn rlab")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn write_config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const SMALL_FLUCTS: &str = r#"{"experiment": "flucts-hyperbolic", "n": 128, "replicas": 40, "seed": 11, "tolerance": {"z": 4}}"#;

#[test]
fn simulate_writes_all_outputs() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "c.json", SMALL_FLUCTS);
    let out = dir.path().join("out");
    let res = rlab(&["simulate", "--config", s(&cfg), "--out", s(&out)]);
    assert!(code(&res) == 0 || code(&res) == 1, "{}", String::from_utf8_lossy(&res.stderr));
    let csv = fs::read_to_string(out.join("samples.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), CSV_HEADER.join(","));
    let records = read_records(&out.join("samples.csv")).unwrap();
    assert!(records.iter().any(|r| r.kind == FieldKind::Fluctuation));
    assert!(records.iter().all(|r| r.experiment == "flucts-hyperbolic" && r.seed == 11 && r.beta == 1));
    let report = read_report(&out.join("report.json")).unwrap();
    assert_eq!(report.schema_version, 1);
    assert_eq!(report.replicas, 40);
    // the archived configuration is complete and reproduces the run
    let archived = fs::read_to_string(out.join("config.json")).unwrap();
    for field in ["\"scheme\"", "\"profile\"", "\"times\"", "\"tolerance\""] {
        assert!(archived.contains(field), "{field} missing from archive");
    }
    let again = dir.path().join("again");
    rlab(&["simulate", "--config", s(&out.join("config.json")), "--out", s(&again)]);
    assert_eq!(fs::read(out.join("samples.csv")).unwrap(), fs::read(again.join("samples.csv")).unwrap());
}

#[test]
fn csv_is_byte_identical_across_threads_and_runs() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "c.json", SMALL_FLUCTS);
    let mut outputs = Vec::new();
    for threads in ["1", "2", "4", "4"] {
        let out = dir.path().join(format!("t{threads}-{}", outputs.len()));
        rlab(&["simulate", "--config", s(&cfg), "--out", s(&out), "--threads", threads]);
        outputs.push(fs::read(out.join("samples.csv")).unwrap());
    }
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn threads_from_environment() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "c.json", SMALL_FLUCTS);
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    rlab(&["simulate", "--config", s(&cfg), "--out", s(&a), "--threads", "1"]);
    let res = Command::new(env!("CARGO_BIN_EXE_rlab"))
        .args(["simulate", "--config", s(&cfg), "--out", s(&b)])
        .env("RLAB_THREADS", "3")
        .output()
        .unwrap();
    assert!(code(&res) <= 1);
    assert_eq!(fs::read(a.join("samples.csv")).unwrap(), fs::read(b.join("samples.csv")).unwrap());
    let bad = Command::new(env!("CARGO_BIN_EXE_rlab"))
        .args(["simulate", "--config", s(&cfg), "--out", s(&b)])
        .env("RLAB_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(code(&bad), 2);
}

#[test]
fn seed_flag_overrides_config() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "c.json", SMALL_FLUCTS);
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    rlab(&["simulate", "--config", s(&cfg), "--out", s(&a)]);
    rlab(&["simulate", "--config", s(&cfg), "--out", s(&b), "--seed", "12"]);
    assert_ne!(fs::read(a.join("samples.csv")).unwrap(), fs::read(b.join("samples.csv")).unwrap());
    assert!(read_records(&b.join("samples.csv")).unwrap().iter().all(|r| r.seed == 12));
}

#[test]
fn oracle_subcommand_passes() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("oracle");
    let res = rlab(&["oracle", "--out", s(&out)]);
    assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stdout));
    let text = fs::read_to_string(out.join("oracle_report.json")).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["pass"], true);
    assert!(value["max_residual"].as_f64().unwrap() <= 1e-12);
}

#[test]
fn spde_subcommand_passes() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "c.json", r#"{"experiment": "flucts-diffusive", "seed": 3}"#);
    let out = dir.path().join("spde");
    let res = rlab(&["spde", "--config", s(&cfg), "--out", s(&out), "--replicas", "2000"]);
    assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stdout));
    let records = read_records(&out.join("samples.csv")).unwrap();
    assert!(records.iter().all(|r| r.kind == FieldKind::Spde && r.experiment == "spde-reference"));
}

#[test]
fn compare_reproduces_the_report() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "c.json", SMALL_FLUCTS);
    let out = dir.path().join("out");
    let first = rlab(&["simulate", "--config", s(&cfg), "--out", s(&out)]);
    let again = dir.path().join("again");
    let res = rlab(&["compare", "--config", s(&cfg), "--input", s(&out.join("samples.csv")), "--out", s(&again)]);
    assert_eq!(code(&res), code(&first));
    assert_eq!(read_report(&out.join("report.json")).unwrap(), read_report(&again.join("report.json")).unwrap());
}

#[test]
fn report_subcommand_reflects_outcome() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("oracle");
    rlab(&["oracle", "--out", s(&out)]);
    let res = rlab(&["report", "--input", s(&out.join("report.json"))]);
    assert_eq!(code(&res), 0);
    assert!(String::from_utf8_lossy(&res.stdout).contains("-> PASS"));

    let mut report = read_report(&out.join("report.json")).unwrap();
    report.outcome = Outcome::Fail;
    let failed = dir.path().join("failed.json");
    fs::write(&failed, serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(code(&rlab(&["report", "--input", s(&failed)])), 1);
    report.outcome = Outcome::Inconclusive;
    fs::write(&failed, serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(code(&rlab(&["report", "--input", s(&failed)])), 5);
}

#[test]
fn usage_errors() {
    assert_eq!(code(&rlab(&["simulate"])), 2);
    assert_eq!(code(&rlab(&["no-such-command"])), 2);
    assert_eq!(code(&rlab(&["simulate", "--config", "x.json", "--threads", "two"])), 2);
    assert_eq!(code(&rlab(&["--help"])), 0);
}

#[test]
fn configuration_errors() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&rlab(&["simulate", "--config", s(&missing)])), 3);
    let cases = [
        "not json",
        r#"{"experiment": "hydro-hyperbolic", "scheme": {"mode": "fixed", "a": 0.5, "b": -0.25, "c": 0, "d": 0}}"#,
        r#"{"experiment": "hydro-hyperbolic", "scheme": {"mode": "fixed", "a": 0, "b": 0, "c": 0, "d": 0}}"#,
        r#"{"experiment": "flucts-diffusive", "scheme": {"preset": "rudvalis"}}"#,
        r#"{"experiment": "hydro-hyperbolic", "typo": true}"#,
    ];
    for (i, text) in cases.iter().enumerate() {
        let cfg = write_config(dir.path(), &format!("bad{i}.json"), text);
        let res = rlab(&["simulate", "--config", s(&cfg), "--out", s(&dir.path().join("o"))]);
        assert_eq!(code(&res), 3, "{text}: {}", String::from_utf8_lossy(&res.stderr));
    }
    assert!(!dir.path().join("o").exists(), "no output on configuration errors");
}

#[test]
fn output_errors() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "c.json", SMALL_FLUCTS);
    let blocker = dir.path().join("file");
    fs::write(&blocker, "not a directory").unwrap();
    let res = rlab(&["simulate", "--config", s(&cfg), "--out", s(&blocker.join("sub"))]);
    assert_eq!(code(&res), 4);
}

#[test]
fn input_errors() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "c.json", SMALL_FLUCTS);
    let bad_header = dir.path().join("bad.csv");
    fs::write(&bad_header, "a,b,c\n1,2,3\n").unwrap();
    let out = s(&dir.path().join("o")).to_string();
    assert_eq!(code(&rlab(&["compare", "--config", s(&cfg), "--input", s(&bad_header), "--out", &out])), 7);
    let absent = dir.path().join("absent.csv");
    assert_eq!(code(&rlab(&["compare", "--config", s(&cfg), "--input", s(&absent), "--out", &out])), 7);
    // a valid header with no rows leaves every comparison without data
    let empty = dir.path().join("empty.csv");
    fs::write(&empty, format!("{}\n", CSV_HEADER.join(","))).unwrap();
    assert_eq!(code(&rlab(&["compare", "--config", s(&cfg), "--input", s(&empty), "--out", &out])), 7);
    assert_eq!(code(&rlab(&["report", "--input", s(&absent)])), 7);
}
