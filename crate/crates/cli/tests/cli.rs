use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const M3: &str = r#"{"name":"M3","elements":["0","a","b","c","1"],"covers":[["0","a"],["0","b"],["0","c"],["a","1"],["b","1"],["c","1"]]}"#;
const N5: &str = r#"{"name":"N5","elements":["0","a","b","c","1"],"covers":[["0","a"],["a","c"],["0","b"],["c","1"],["b","1"]]}"#;
const B4: &str = r#"{"name":"B4","elements":["0","a","b","1"],"covers":[["0","a"],["0","b"],["a","1"],["b","1"]]}"#;
const TWO: &str = r#"{"name":"two","elements":["0","1"],"covers":[["0","1"]]}"#;

fn latkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latkit")).args(args).env_remove("LATKIT_BUDGET").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn file(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn props_ndistr_on_m3() {
    let dir = TempDir::new().unwrap();
    let m3 = file(&dir, "m3.json", M3);
    let out = latkit(&["props", s(&m3), "--ndistr", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "n-distributive(2): VALID\n");
    let out = latkit(&["props", s(&m3), "--ndistr", "1"]);
    assert!(stdout(&out).starts_with("n-distributive(1): INVALID ("));
}

#[test]
fn dot_on_the_two_chain() {
    let dir = TempDir::new().unwrap();
    let two = file(&dir, "two.json", TWO);
    let text = stdout(&latkit(&["dot", s(&two)]));
    assert!(text.starts_with("digraph"));
    assert!(text.contains("rankdir=BT"));
    assert_eq!(text.matches("->").count(), 1);
    assert!(text.contains("\"0\" -> \"1\""));
}

#[test]
fn refute_distributivity() {
    let out = latkit(&["refute", "--lhs", "x&(y|z)", "--rhs", "(x&y)|(x&z)", "--max-size", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("counterexample in "));
    assert!(text.contains("x="));
    let out = latkit(&["refute", "--lhs", "x", "--rhs", "x", "--max-size", "6"]);
    assert!(stdout(&out).starts_with("no counterexample"));
}

#[test]
fn kd_output_round_trips_through_props() {
    let dir = TempDir::new().unwrap();
    let b4 = file(&dir, "b4.json", B4);
    let out = latkit(&["kd", "--dist", s(&b4)]);
    assert!(out.status.success());
    let kd = file(&dir, "kd.json", &stdout(&out));
    assert!(stdout(&latkit(&["validate", s(&kd)])).contains("21 elements"));

    let flags = ["--sdj", "2", "--jsd", "--ndistr", "2", "--modular"];
    let direct = latkit(&[&["props", s(&kd)][..], &flags].concat());
    // reformatted copy of the same file must give the same verdicts
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let again = file(&dir, "kd2.json", &value.to_string());
    let reread = latkit(&[&["props", s(&again)][..], &flags].concat());
    assert_eq!(stdout(&direct), stdout(&reread));
    assert!(stdout(&direct).contains("sdj(2): INVALID"));
    assert!(stdout(&direct).contains("join-semidistributive: VALID"));
}

#[test]
fn kd_rejects_non_distributive_input() {
    let dir = TempDir::new().unwrap();
    let m3 = file(&dir, "m3.json", M3);
    let out = latkit(&["kd", "--dist", s(&m3)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_output_is_stable() {
    let dir = TempDir::new().unwrap();
    let n5 = file(&dir, "n5.json", N5);
    for args in [
        vec!["--format", "json", "props", s(&n5), "--modular", "--jsd"],
        vec!["--format", "json", "congruences", s(&n5), "--si"],
        vec!["--format", "json", "covers", s(&n5), "--element", "1"],
        vec!["--format", "json", "enumerate", "--size", "5", "--filter", "si"],
    ] {
        let a = stdout(&latkit(&args));
        let b = stdout(&latkit(&args));
        assert_eq!(a, b);
        serde_json::from_str::<serde_json::Value>(&a).unwrap();
    }
}

#[test]
fn congruences_of_n5() {
    let dir = TempDir::new().unwrap();
    let n5 = file(&dir, "n5.json", N5);
    let text = stdout(&latkit(&["congruences", s(&n5)]));
    assert_eq!(text.lines().count(), 5);
    let text = stdout(&latkit(&["congruences", s(&n5), "--si", "--principal", "a,c"]));
    assert!(text.contains("con(a,c): {0}{a,c}{b}{1}"));
    assert!(text.contains("subdirectly irreducible: yes"));
}

#[test]
fn covers_and_seeds() {
    let dir = TempDir::new().unwrap();
    let m3 = file(&dir, "m3.json", M3);
    let text = stdout(&latkit(&["covers", s(&m3), "--element", "1", "--minimal"]));
    assert_eq!(text.lines().count(), 3);
    let text = stdout(&latkit(&["covers", s(&m3), "--element", "1", "--refine", "b,1"]));
    assert!(text.contains("minimal: a,b"));
    let out = latkit(&["seeds", s(&m3), "--subset", "a,b,c", "--seed"]);
    assert_eq!(stdout(&out), "seed: VALID\n");
}

#[test]
fn enumerate_emits_files() {
    let dir = TempDir::new().unwrap();
    let out_dir = dir.path().join("out");
    let out = latkit(&["enumerate", "--size", "5", "--emit-dir", s(&out_dir)]);
    assert!(out.status.success());
    let mut names: Vec<String> =
        std::fs::read_dir(&out_dir).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    names.sort();
    assert_eq!(names, ["lat5_1.json", "lat5_2.json", "lat5_3.json", "lat5_4.json", "lat5_5.json"]);
    assert_eq!(stdout(&latkit(&["enumerate", "--size", "7", "--count-only"])), "53\n");
    assert_eq!(stdout(&latkit(&["enumerate", "--size", "5", "--filter", "distributive", "--count-only"])), "3\n");
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = file(&dir, "bad.json", r#"{"name":"x","elements":["0","a","b"],"covers":[["0","a"],["0","b"]]}"#);
    let out = latkit(&["validate", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("latkit:"));
    let m3 = file(&dir, "m3.json", M3);
    assert_eq!(latkit(&["covers", s(&m3), "--element", "zz"]).status.code(), Some(2));
    assert_eq!(latkit(&["enumerate", "--size", "8"]).status.code(), Some(2));
    assert_eq!(latkit(&["--no-guard", "enumerate", "--size", "8", "--count-only"]).status.code(), Some(0));
    assert_eq!(latkit(&["enumerate", "--size", "4", "--filter", "nope"]).status.code(), Some(2));
}

#[test]
fn budget_env_var_is_honoured() {
    let dir = TempDir::new().unwrap();
    let m3 = file(&dir, "m3.json", M3);
    let out = Command::new(env!("CARGO_BIN_EXE_latkit"))
        .args(["props", s(&m3), "--ndistr", "2"])
        .env("LATKIT_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_paper_passes() {
    let out = latkit(&["--format", "json", "verify-paper"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let claims = report["claims"].as_array().unwrap();
    assert_eq!(claims.len(), 16);
    assert!(claims.iter().all(|c| c["status"] == "pass"));
}
