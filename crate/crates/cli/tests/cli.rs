use std::path::PathBuf;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubic-sections")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp(name: &str, contents: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("cubic-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn dynatomic_period_two() {
    let o = bin(&["dynatomic", "--N", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("Phi_2 = z^6 + 2*a*z^4"));
    let j: serde_json::Value = serde_json::from_str(&stdout(&bin(&["dynatomic", "--N", "2", "--format", "json"]))).unwrap();
    assert_eq!(j["degree_z"], 6);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(bin(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(bin(&["height", "--points", "Q"]).status.code(), Some(2));
    assert_eq!(bin(&["verify-all", "--only", "11"]).status.code(), Some(2));
    assert_eq!(bin(&["sections", "mw", "--coeffs", "1,2"]).status.code(), Some(2));
    assert_eq!(bin(&["modspace", "recover", "--spec", "/nonexistent.json"]).status.code(), Some(2));
}

#[test]
fn tables() {
    let md = stdout(&bin(&["genus", "table", "--max-N", "8", "--markdown"]));
    assert!(md.contains("| 309 |"));
    let j: serde_json::Value = serde_json::from_str(&stdout(&bin(&["tate", "--curve", "e0", "--format", "json"]))).unwrap();
    let types: Vec<&str> = j["fibres"].as_array().unwrap().iter().map(|f| f["kodaira"].as_str().unwrap()).collect();
    assert_eq!(types, ["I1", "I2", "III*"]);
    let h = stdout(&bin(&["height", "--points", "R1,R2", "--base-exp", "3"]));
    assert!(h.contains("det = 1/12"), "{h}");
}

#[test]
fn section_files_round_trip() {
    let o = bin(&["sections", "example", "--format", "json"]);
    assert!(o.status.success());
    let j: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let p = temp("triple.json", &j["triple"].to_string());
    let v = bin(&["verify-section", "--file", p.to_str().unwrap()]);
    assert!(v.status.success(), "{}", stdout(&v));
    // the triple fails as a period-one point
    let v1 = bin(&["verify-section", "--file", p.to_str().unwrap(), "--N", "1"]);
    assert_eq!(v1.status.code(), Some(1));
}

#[test]
fn modspace_recover() {
    let p = temp("spec.json", r#"{"d":3,"cycle_lengths":[2],"points":[[0,1],[1,1]],"tail":[[0,1],[1,1]]}"#);
    let o = bin(&["modspace", "recover", "--spec", p.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("a_0..a_3 = [1, -2, 0, 1]"));
}

#[test]
fn certify_single_cases() {
    let ok = bin(&["certify", "case", "--kind", "dup", "--coeffs", "1,0,0,0,0", "--mode", "strict"]);
    assert!(ok.status.success(), "{}", stdout(&ok));
    assert!(stdout(&ok).contains("certified"));
    let bad = bin(&["certify", "case", "--kind", "trip", "--coeffs", "0,1,0"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("linear factor z - (6)"));
}

#[test]
fn output_is_deterministic_and_config_is_read() {
    let args = ["verify-all", "--only", "1,7,8,10", "--format", "json"];
    let (a, b) = (bin(&args), bin(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let cfg = temp("config.json", r#"{"seed": 5, "format": "json"}"#);
    let c = bin(&["verify-all", "--only", "10", "--config", cfg.to_str().unwrap()]);
    let j: serde_json::Value = serde_json::from_str(&stdout(&c)).unwrap();
    assert_eq!(j["seed"], 5);
    assert_eq!(j["criteria"].as_array().unwrap().len(), 1);
    // flags override the file
    let d = bin(&["verify-all", "--only", "10", "--config", cfg.to_str().unwrap(), "--seed", "7"]);
    let j: serde_json::Value = serde_json::from_str(&stdout(&d)).unwrap();
    assert_eq!(j["seed"], 7);
}
