use std::fs;
use std::path::Path;
use std::process::Command;

use sha2::{Digest, Sha256};
use wspectra_cli::acceptance::run_criterion;
use wspectra_cli::config::RunConfig;
use wspectra_cli::manifest::hex;

fn wspectra(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_wspectra")).args(args).output().unwrap()
}

fn run_config(dir: &Path, name: &str, text: &str) -> std::process::Output {
    let cfg = dir.join(format!("{name}.ini"));
    fs::write(&cfg, text).unwrap();
    let out = dir.join(name);
    wspectra(&["run", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()])
}

fn manifest(dir: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap()
}

const GAUSSIAN: &str = "[run]\nexperiment = spectrum\n[symbol]\nfamily = gaussian\nr = 1\n";

#[test]
fn gaussian_spectrum_starts_at_one_half() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run_config(tmp.path(), "g", GAUSSIAN);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(tmp.path().join("g/spectrum.csv")).unwrap();
    let first: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    let s: f64 = first[3].parse().unwrap();
    assert!((s - 0.5).abs() < 1e-3, "{s}");
}

#[test]
fn prufer_row_carries_main_term() {
    let tmp = tempfile::tempdir().unwrap();
    let text = "[run]\nexperiment = prufer\ng = 1e4\n[symbol]\nfamily = power_decay\nalpha = 2\nbeta = 0\n";
    let o = run_config(tmp.path(), "p", text);
    assert_eq!(o.status.code(), Some(0));
    let csv = fs::read_to_string(tmp.path().join("p/scan.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "g,lambda,count,main_term,lower,upper");
    let row: Vec<f64> = csv.lines().nth(1).unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert!((row[3] - 293.2).abs() < 0.05, "{}", row[3]);
    assert!(row[4] <= row[2] && row[2] <= row[5]);
}

#[test]
fn invalid_config_exits_two_without_artifacts() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run_config(tmp.path(), "bad", "[run]\nexperiment = spectrum\n[symbol]\nfamily = gaussian\nr = 1\n[grid]\nn = -4\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(!tmp.path().join("bad").exists());

    let o = run_config(tmp.path(), "typo", "[run]\nexperiment = spectrum\n[symbol]\nfamily = gaussian\nr = 1\n[grid]\nnn = 64\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nn"));
    assert!(!tmp.path().join("typo").exists());
}

#[test]
fn runs_are_byte_identical_and_manifest_matches() {
    let tmp = tempfile::tempdir().unwrap();
    let a = run_config(tmp.path(), "a", GAUSSIAN);
    let b = run_config(tmp.path(), "b", GAUSSIAN);
    assert!(a.status.success() && b.status.success());
    let read = |d: &str| fs::read(tmp.path().join(d).join("spectrum.csv")).unwrap();
    assert_eq!(read("a"), read("b"));

    let m = manifest(&tmp.path().join("a"));
    for f in m["outputs"].as_array().unwrap() {
        let data = fs::read(tmp.path().join("a").join(f["file"].as_str().unwrap())).unwrap();
        assert_eq!(f["sha256"].as_str().unwrap(), hex(&Sha256::digest(&data)));
    }
    let echo = RunConfig::parse(m["config"].as_str().unwrap()).unwrap();
    assert_eq!(echo, RunConfig::parse(GAUSSIAN).unwrap());
}

#[test]
fn strict_policy_escalates_quality_flags() {
    let tmp = tempfile::tempdir().unwrap();
    // n_ξ = 64 over [-16, 16] aliases the kernel
    let text = "[run]\nexperiment = quantize\npolicy = strict\n[symbol]\nfamily = gaussian\nr = 0.01\n[grid]\nL = 16\nn = 64\n";
    let o = run_config(tmp.path(), "s", text);
    assert_eq!(o.status.code(), Some(3));
    let m = manifest(&tmp.path().join("s"));
    assert_eq!(m["exit_status"], 3);
    assert!(!m["quality_flags"].as_array().unwrap().is_empty());

    let o = run_config(tmp.path(), "w", &text.replace("strict", "warn"));
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn suite_entries_are_deterministic() {
    for id in [1, 12] {
        assert_eq!(run_criterion(id, 5), run_criterion(id, 5));
    }
    assert!(run_criterion(99, 0).is_none());
}

#[test]
fn seed_flag_overrides_config() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("g.ini");
    fs::write(&cfg, GAUSSIAN).unwrap();
    let out = tmp.path().join("o");
    let o = wspectra(&["run", cfg.to_str().unwrap(), "--out", out.to_str().unwrap(), "--seed", "42", "--threads", "1"]);
    assert!(o.status.success());
    let echo = RunConfig::parse(manifest(&out)["config"].as_str().unwrap()).unwrap();
    assert_eq!(echo.run.seed, 42);
}
