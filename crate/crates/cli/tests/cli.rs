use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};
use tamegamma::{AbsElt, FieldSpec, MultChar, Root, WeilRep};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_tamegamma"));
    c.env_remove("TAMEGAMMA_P").env_remove("TAMEGAMMA_PRECISION");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn body(path: &Path) -> Value {
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    v.as_object_mut().unwrap().remove("timing");
    v
}

#[test]
fn noncusp_passes_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let o = run(&["verify", "noncusp", "--N", "3", "--p", "5", "--out", a.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(&["verify", "noncusp", "--N", "3", "--p", "5", "--out", b.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let (va, vb) = (body(&a), body(&b));
    assert_eq!(va, vb);
    assert_eq!(va["verdict"], "pass");
    assert!(va["data"].as_array().is_some_and(|d| !d.is_empty()));
}

#[test]
fn so6_needs_p_three_mod_four() {
    assert_eq!(code(&run(&["verify", "so6", "--p", "5"])), 2);
    assert_eq!(code(&run(&["verify", "so6", "--p", "7"])), 0);
}

#[test]
fn perturbed_input_exits_one() {
    let o = run(&["verify", "so6", "--p", "7", "--perturb"]);
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let failed: Vec<&str> = v["checks"].as_array().unwrap().iter().filter(|c| c["verdict"] == "fail").map(|c| c["name"].as_str().unwrap()).collect();
    assert!(failed.contains(&"∧³± weight multisets equal over L"));
}

#[test]
fn ramakrishnan_at_13() {
    assert_eq!(code(&run(&["verify", "ramakrishnan", "--p", "13", "--beta", "deep"])), 0);
}

#[test]
fn excess_precision_exits_three() {
    assert_eq!(code(&run(&["verify", "so2n", "--precision", "99"])), 3);
}

#[test]
fn bad_flags_are_config_errors() {
    assert_eq!(code(&run(&["verify", "so2n", "--M", "8"])), 2);
    assert_eq!(code(&run(&["verify", "nonsense"])), 2);
    assert_eq!(code(&run(&["verify", "noncusp", "--p", "9"])), 2);
}

#[test]
fn config_file_and_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "p = 7\nN = 4\nM = 11\n").unwrap();
    let o = run(&["verify", "so2n", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["config"]["params"]["M"], 11);
    // flags win over the file
    assert_eq!(code(&run(&["verify", "so2n", "--config", cfg.to_str().unwrap(), "--p", "5"])), 2);
    let o = bin().args(["verify", "so6"]).env("TAMEGAMMA_P", "11").output().unwrap();
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["config"]["p"], 11);
    std::fs::write(&cfg, "bogus = 1\n").unwrap();
    assert_eq!(code(&run(&["verify", "so6", "--config", cfg.to_str().unwrap()])), 2);
}

#[test]
fn family_dump() {
    let o = run(&["family", "--p", "5", "--max-dim", "1", "--max-depth", "1", "--max-order", "4"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["size"].as_u64().unwrap() as usize, v["members"].as_array().unwrap().len());
    assert!(v["size"].as_u64().unwrap() > 0);
}

#[test]
fn gamma_of_a_serialized_pair() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.json");
    let spec = FieldSpec { f: 1, e: 2, c: 0 };
    let rep = WeilRep::new([MultChar::new(5, spec, Root::one(), 1, AbsElt::unif_pow(-3))]);
    let twist = MultChar::trivial(FieldSpec::base());
    std::fs::write(&input, json!({"rep": rep, "twist": twist}).to_string()).unwrap();
    let o = run(&["gamma", input.to_str().unwrap(), "--p", "5"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["lambdas"].as_array().unwrap().len(), 1);
    assert!(v["factor"].as_str().unwrap().contains("X^3"));
}

#[test]
fn selftest_passes() {
    let o = run(&["selftest", "--seed", "7"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}
