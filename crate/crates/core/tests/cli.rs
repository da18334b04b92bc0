use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use regdil::gradedspace::{lambda_table, ProductSystem};
use regdil::io::{write_json, RepresentationFile, SystemFile};
use regdil::linalg::{c, CMatrix, ZERO};
use regdil::representation::Representation;
use tempfile::TempDir;

fn regdil(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regdil"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_rep(dir: &TempDir, name: &str, rep: &Representation) -> PathBuf {
    let path = dir.path().join(name);
    write_json(&path, &RepresentationFile::from_representation(rep)).unwrap();
    path
}

fn write_system(dir: &TempDir, name: &str, sys: &ProductSystem) -> PathBuf {
    let path = dir.path().join(name);
    write_json(&path, &SystemFile::from_system(sys)).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn scalar(t: f64) -> CMatrix {
    CMatrix::from_element(1, 1, c(t, 0.0))
}

fn nilpotent_triple() -> Representation {
    let sys = ProductSystem::untwisted(vec![1, 1, 1]).unwrap();
    let n = CMatrix::from_row_slice(2, 2, &[ZERO, c(0.9, 0.0), ZERO, ZERO]);
    Representation::new(sys, 2, vec![vec![n.clone()], vec![n.clone()], vec![n]]).unwrap()
}

#[test]
fn validate_exit_codes() {
    let dir = TempDir::new().unwrap();
    let zero = write_rep(
        &dir,
        "zero.json",
        &Representation::zero(ProductSystem::untwisted(vec![2, 1]).unwrap(), 2),
    );
    assert_eq!(code(&regdil(&["validate", "--rep", s(&zero)])), 0);

    // A commuting scalar pair read against λ₁₂ = −1 violates the twisted relation.
    let pair = Representation::new(
        ProductSystem::untwisted(vec![1, 1]).unwrap(),
        1,
        vec![vec![scalar(0.5)], vec![scalar(0.5)]],
    )
    .unwrap();
    let rep = write_rep(&dir, "pair.json", &pair);
    let sys = write_system(
        &dir,
        "minus.json",
        &ProductSystem::scalar(&lambda_table(2, |_, _| c(-1.0, 0.0))).unwrap(),
    );
    let out = regdil(&["validate", "--system", s(&sys), "--rep", s(&rep)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("commutation (1,2) residual"));

    let corrupt = dir.path().join("corrupt.json");
    std::fs::write(&corrupt, "{\"h\": 1, \"blocks\": [[[[1").unwrap();
    assert_eq!(code(&regdil(&["validate", "--rep", s(&corrupt)])), 2);
    assert_eq!(
        code(&regdil(&["validate", "--rep", s(&dir.path().join("missing.json"))])),
        2
    );
    assert_eq!(code(&regdil(&["validate"])), 2);
}

#[test]
fn brehmer_exit_codes() {
    let dir = TempDir::new().unwrap();
    let rep = write_rep(&dir, "nil.json", &nilpotent_triple());
    let out = regdil(&["brehmer", "--rep", s(&rep)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("v={1,2,3}  min eig -1.430000e0"));

    let single = Representation::new(ProductSystem::untwisted(vec![1]).unwrap(), 1, vec![vec![scalar(0.9)]]).unwrap();
    let rep = write_rep(&dir, "single.json", &single);
    assert_eq!(code(&regdil(&["brehmer", "--rep", s(&rep)])), 0);
}

#[test]
fn dilate_exit_codes() {
    let dir = TempDir::new().unwrap();
    let single = Representation::new(ProductSystem::untwisted(vec![1]).unwrap(), 1, vec![vec![scalar(0.5)]]).unwrap();
    let rep = write_rep(&dir, "half.json", &single);
    let out = regdil(&["dilate", "--rep", s(&rep), "--box", "4", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report.is_object());

    assert_eq!(
        code(&regdil(&["dilate", "--rep", s(&rep), "--box", "4", "--cap", "3"])),
        3
    );
    let nil = write_rep(&dir, "nil.json", &nilpotent_triple());
    assert_eq!(code(&regdil(&["dilate", "--rep", s(&nil)])), 1);
    assert_eq!(code(&regdil(&["dilate", "--rep", s(&rep), "--box", "1,1"])), 2);
}

#[test]
fn search_exit_codes() {
    assert_eq!(code(&regdil(&["search", "--trials", "0"])), 2);
    let out = regdil(&[
        "search", "--family", "scalar", "--k", "3", "--h", "1", "--trials", "1000", "--format", "json",
    ]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["theorem_violations"].as_array().unwrap().len(), 0);

    let out = regdil(&[
        "search",
        "--family",
        "commuting",
        "--k",
        "3",
        "--h",
        "2",
        "--seed",
        "0",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report["counterexample_count"].as_u64().unwrap() > 0);
}

#[test]
fn reports_are_byte_stable() {
    let dir = TempDir::new().unwrap();
    let rep = write_rep(&dir, "nil.json", &nilpotent_triple());
    for args in [
        vec![
            "search", "--family", "twisted", "--trials", "30", "--seed", "4", "--format", "json",
        ],
        vec!["brehmer", "--rep", s(&rep), "--format", "json"],
        vec!["comp-identities", "--rep", s(&rep), "--box", "1,1,2"],
    ] {
        let a = regdil(&args);
        let b = regdil(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(code(&a), code(&b));
    }
}

#[test]
fn out_flag_writes_the_report() {
    let dir = TempDir::new().unwrap();
    let rep = write_rep(&dir, "nil.json", &nilpotent_triple());
    let target = dir.path().join("report.json");
    let out = regdil(&["dcheck", "--rep", s(&rep), "--format", "json", "--out", s(&target)]);
    assert!(out.stdout.is_empty());
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert!(report.is_object());
    assert_eq!(code(&out), 1);
}

#[test]
fn chars_and_fock() {
    let dir = TempDir::new().unwrap();
    let sys = write_system(
        &dir,
        "i.json",
        &ProductSystem::scalar(&lambda_table(2, |_, _| c(0.0, 1.0))).unwrap(),
    );
    assert_eq!(code(&regdil(&["chars", "--system", s(&sys), "--t", "0.5,0", "0,0"])), 0);
    assert_eq!(
        code(&regdil(&["chars", "--system", s(&sys), "--t", "0.5,0", "0.1,-0.2"])),
        1
    );
    assert_eq!(code(&regdil(&["fock", "--system", s(&sys), "--box", "3,3"])), 0);
}
