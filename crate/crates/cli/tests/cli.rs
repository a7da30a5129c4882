use std::process::{Command, Output};

use bms_core::characters::QSeries;
use bms_core::vector::ModuleVector;

fn bms(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bms"))
        .args(args)
        .output()
        .expect("run bms")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = bms(&a);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn singular_p2() {
    let o = bms(&["singular", "--p", "2", "--k", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("M[-2] + (6/cM) M[-1]^2"));
}

#[test]
fn singular_p3_is_r() {
    let o = bms(&["singular", "--p", "3"]);
    assert_eq!(
        stdout(&o).lines().next(),
        Some("Q[-3/2] + (3/cM) M[-1]Q[-1/2]")
    );
}

#[test]
fn singular_k0_is_usage_error() {
    let o = bms(&["singular", "--p", "2", "--k", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("k must be ≥ 1"));
}

#[test]
fn subsingular_examples() {
    let o = bms(&["subsingular", "--p", "1", "--r", "2"]);
    assert_eq!(stdout(&o), "L[-1]^2 + (6/cM) M[-2]\nhL = -1/2\n");
    let o = bms(&["subsingular", "--p", "1", "--r", "1", "--mode", "w22"]);
    assert_eq!(stdout(&o), "L[-1]\nhL = 0\n");
    let j = json(&["subsingular", "--p", "2"]);
    let hl: bms_core::Scalar = j["hL"].as_str().unwrap().parse().unwrap();
    assert_eq!(hl, "-cL/8+21/16".parse().unwrap());
    assert_eq!(ModuleVector::from_json(&j["vector"]).unwrap().len(), 4);
}

#[test]
fn kernel_level_one_is_empty() {
    let j = json(&["kernel", "--p", "2", "--level2", "2"]);
    assert_eq!(j["singular"]["dim"], 0);
    let j = json(&["kernel", "--p", "2", "--level2", "4"]);
    assert_eq!(j["singular"]["dim"], 1);
}

#[test]
fn char_series() {
    let j = json(&["char", "--p", "2", "--levels", "8"]);
    let s = QSeries::from_json(&j["formula"]).unwrap();
    let c: Vec<i64> = (0..=8).map(|n| s.coeff(n)).collect();
    assert_eq!(c, vec![1, 1, 2, 3, 5, 7, 11, 15, 23]);
    let j = json(&[
        "char", "--p", "1", "--r", "1", "--levels", "6", "--cL", "7", "--cM", "2",
    ]);
    assert_eq!(j["agree"], true);
}

#[test]
fn json_round_trips() {
    let j = json(&["singular", "--p", "3", "--k", "2"]);
    let v = ModuleVector::from_json(&j["vector"]).unwrap();
    assert_eq!(v.to_json(), j["vector"]);
    let j = json(&["char", "--p", "2", "--levels", "6"]);
    let s = QSeries::from_json(&j["formula"]).unwrap();
    assert_eq!(s.to_json(), j["formula"]);
}

#[test]
fn hpr_prints_both_loci() {
    let o = bms(&["hpr", "--p", "2", "--r", "2"]);
    let out = stdout(&o);
    assert!(out.starts_with("h_{2,2} = (-2*cL+5)/16\n"), "{out}");
    let o = bms(&["hpr", "--p", "2", "--r", "1", "--cL", "1/2"]);
    assert!(stdout(&o).starts_with("h_{2,1} = 5/4\n"));
}

#[test]
fn verify_suites_pass_and_are_reproducible() {
    for suite in ["paper-examples", "properties", "characters", "composition"] {
        let a = bms(&["verify", "--suite", suite, "--seed", "11"]);
        assert_eq!(a.status.code(), Some(0), "{suite}: {}", stdout(&a));
        let b = bms(&["verify", "--suite", suite, "--seed", "11"]);
        assert_eq!(a.stdout, b.stdout);
        let lines: Vec<&str> = std::str::from_utf8(&a.stdout).unwrap().lines().collect();
        let names: Vec<&str> = lines[..lines.len() - 1].iter().map(|l| &l[5..]).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
    }
}

#[test]
fn usage_errors() {
    assert_eq!(bms(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(
        bms(&["singular", "--p", "2", "--cM", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(bms(&["singular", "--p", "0"]).status.code(), Some(2));
    assert_eq!(
        bms(&["singular", "--p", "2", "--cL", "x"]).status.code(),
        Some(2)
    );
}
