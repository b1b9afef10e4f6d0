use omegacat::fixtures;
use omegacat::io::{category_to_string, CategoryFile};
use serde_json::Value;
use std::path::Path;
use std::process::Command;

fn run(dir: &Path, args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_omegacat")).current_dir(dir).args(args).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), json, String::from_utf8(out.stderr).unwrap())
}

fn corpus() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = run(dir.path(), &["fixtures", "--out", "."]);
    assert_eq!(code, 0);
    dir
}

#[test]
fn validate_exit_codes() {
    let dir = corpus();
    let d = dir.path();
    let (code, rep, _) = run(d, &["validate", "bz2.json"]);
    assert_eq!((code, rep["status"].as_str()), (0, Some("pass")));

    std::fs::write(d.join("bad.json"), category_to_string(&fixtures::bz2_with("BZ2bad", "t"))).unwrap();
    let (code, rep, _) = run(d, &["validate", "bad.json"]);
    assert_eq!(code, 1);
    let laws: Vec<&str> = rep["violations"].as_array().unwrap().iter().filter_map(|v| v["law"].as_str()).collect();
    assert!(laws.contains(&"interchange"), "{laws:?}");

    let mut file = CategoryFile::from_category(&fixtures::iso1());
    file.cells[4].cod = Some("nowhere".into());
    std::fs::write(d.join("dangling.json"), serde_json::to_string(&file).unwrap()).unwrap();
    let (code, _, err) = run(d, &["validate", "dangling.json"]);
    assert_eq!(code, 2);
    assert!(err.contains("nowhere"), "{err}");

    let mut file = CategoryFile::from_category(&fixtures::iso1());
    let dup = file.cells[0].clone();
    file.cells.push(dup);
    std::fs::write(d.join("dup.json"), serde_json::to_string(&file).unwrap()).unwrap();
    assert_eq!(run(d, &["validate", "dup.json"]).0, 2);

    std::fs::write(d.join("junk.json"), "{ not json").unwrap();
    assert_eq!(run(d, &["validate", "junk.json"]).0, 2);
    assert_eq!(run(d, &["validate", "missing.json"]).0, 2);
}

#[test]
fn usage_errors_exit_2() {
    let dir = corpus();
    assert_eq!(run(dir.path(), &["frobnicate"]).0, 2);
    assert_eq!(run(dir.path(), &["equiv", "iso1.json", "a"]).0, 2);
    assert_eq!(run(dir.path(), &["equiv", "iso1.json", "a", "zz"]).0, 2);
}

#[test]
fn equivalence_and_classification() {
    let dir = corpus();
    let d = dir.path();
    let (code, rep, _) = run(d, &["equiv", "walkeq2.json", "a", "b", "--degree"]);
    assert_eq!(code, 0);
    assert_eq!(rep["witnesses"]["degree"], 2);
    let (_, rep, _) = run(d, &["equiv", "walking2.json", "a", "b"]);
    assert_eq!(rep["witnesses"]["equivalent"], false);
    let (code, rep, _) = run(d, &["classify", "iso1.json", "f"]);
    assert_eq!(code, 0);
    assert!(rep["witnesses"].to_string().contains("equivalence"), "{rep}");
}

#[test]
fn pi_on_bz2() {
    let dir = corpus();
    let (code, rep, _) = run(dir.path(), &["pi", "bz2.json", "--I", "*", "--a", "*", "--x", "id", "--n", "1"]);
    assert_eq!(code, 0, "{rep}");
    let elements = rep["witnesses"]["group"]["elements"].as_array().unwrap();
    assert_eq!(elements.len(), 2);
    let (_, rep, _) = run(dir.path(), &["pi", "bz2.json", "--I", "*", "--a", "*", "--x", "id", "--n", "2"]);
    assert_eq!(rep["witnesses"]["group"]["elements"].as_array().unwrap().len(), 1);
}

#[test]
fn duality_round_trip_and_tamper() {
    let dir = corpus();
    let d = dir.path();
    let (code, _, _) = run(d, &["duality", "synth", "duality_vecf2.json", "-o", "w.json"]);
    assert_eq!(code, 0);
    assert_eq!(run(d, &["duality", "check", "w.json"]).0, 0);

    let mut w: Value = serde_json::from_str(&std::fs::read_to_string(d.join("w.json")).unwrap()).unwrap();
    let unit = w["unit"].as_array_mut().unwrap();
    let v2 = unit.iter_mut().find(|c| c["at"] == "V2").unwrap();
    v2["cell"] = Value::from("V2->V2[0110]");
    std::fs::write(d.join("bad.json"), w.to_string()).unwrap();
    let (code, rep, _) = run(d, &["duality", "check", "bad.json"]);
    assert_eq!(code, 1, "{rep}");
    assert!(!rep["violations"].as_array().unwrap().is_empty());
}

#[test]
fn limits_are_decided() {
    let dir = corpus();
    let (code, rep, _) = run(dir.path(), &["limit", "diagram_product.json"]);
    assert_eq!(code, 0);
    assert_eq!(rep["witnesses"]["exists"], true);
    assert_eq!(rep["witnesses"]["certificate"]["vertex"], "4");
}

#[test]
fn fixtures_write_checksums() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = run(dir.path(), &["fixtures", "--out", "fx", "--d", "1"]);
    assert_eq!(code, 0);
    let v1: CategoryFile = serde_json::from_str(&std::fs::read_to_string(dir.path().join("fx/vecf2_d1.json")).unwrap()).unwrap();
    assert_eq!(v1.cells.iter().filter(|c| c.degree == 0).count(), 2);
    let sums = std::fs::read_to_string(dir.path().join("fx/SHA256SUMS")).unwrap();
    assert!(sums.lines().all(|l| l.len() > 66));
    assert!(!dir.path().join("fx/vecf2_d2.json").exists());
}
