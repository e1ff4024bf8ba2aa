use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superrough"))
        .args(args)
        .env_remove("SUPERROUGH_CAP_CO")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn space_file(dir: &Path, json: &str) -> String {
    let p = dir.join("space.json");
    std::fs::write(&p, json).unwrap();
    p.display().to_string()
}

fn build(space: &Path, out: &Path) {
    let o = run(&[
        "build",
        "--space",
        space.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn approx_queries() {
    let s = data("four.json");
    let s = s.to_str().unwrap();
    assert_eq!(
        stdout(&run(&["approx", "--space", s, "--lower", "1,3"])),
        "lower({1,3}) = {3}\n"
    );
    assert_eq!(
        stdout(&run(&["approx", "--space", s, "--lower", ""])),
        "lower({}) = {}\n"
    );
    let o = run(&["approx", "--space", s, "--between", "3", "1,2,3", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let sets: Vec<&Value> = v["between"]["witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| &w["set"])
        .collect();
    assert!(sets.contains(&&serde_json::json!(["1", "3"])));
}

#[test]
fn approx_error_codes() {
    let s = data("four.json");
    assert_eq!(
        run(&["approx", "--space", s.to_str().unwrap(), "--lower", "9"])
            .status
            .code(),
        Some(3)
    );
    let dir = tempfile::tempdir().unwrap();
    let bad = space_file(dir.path(), "{\"universe\": [");
    assert_eq!(run(&["approx", "--space", &bad, "--lower", "1"]).status.code(), Some(2));
    let overlapping = space_file(
        dir.path(),
        r#"{"universe": ["1", "2"], "partition": [["1"], ["1", "2"]]}"#,
    );
    assert_eq!(
        run(&["approx", "--space", &overlapping, "--lower", "1"]).status.code(),
        Some(2)
    );
}

#[test]
fn build_writes_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    build(&data("discrete2.json"), dir.path());
    for f in [
        "rough_algebra.json",
        "tolerance.json",
        "blocks.json",
        "co_lattice.dot",
        "model.json",
    ] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    assert_eq!(
        read_json(&dir.path().join("model.json"))["carrier"]
            .as_array()
            .unwrap()
            .len(),
        10
    );
    let ind = tempfile::tempdir().unwrap();
    build(&data("indiscrete2.json"), ind.path());
    assert_eq!(
        read_json(&ind.path().join("model.json"))["carrier"]
            .as_array()
            .unwrap()
            .len(),
        7
    );
}

#[test]
fn build_respects_the_co_cap() {
    let dir = tempfile::tempdir().unwrap();
    let s = space_file(
        dir.path(),
        r#"{"universe": ["1","2","3","4","5","6"], "partition": [["1"],["2"],["3"],["4"],["5"],["6"]]}"#,
    );
    let o = run(&["build", "--space", &s, "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("64 elements"), "{}", stderr(&o));
}

#[test]
fn build_is_byte_identical() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    build(&data("four.json"), a.path());
    build(&data("four.json"), b.path());
    for f in [
        "rough_algebra.json",
        "tolerance.json",
        "blocks.json",
        "co_lattice.dot",
        "model.json",
    ] {
        assert_eq!(
            std::fs::read(a.path().join(f)).unwrap(),
            std::fs::read(b.path().join(f)).unwrap(),
            "{f}"
        );
    }
}

#[test]
fn verify_suites() {
    let dir = tempfile::tempdir().unwrap();
    build(&data("discrete2.json"), dir.path());
    let rough = dir.path().join("rough_algebra.json");
    let o = run(&["verify", "--suite", "prerough", "--model", rough.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("9/9 clauses hold"));

    let s = data("indiscrete2.json");
    let o = run(&["verify", "--suite", "blocks", "--space", s.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let o = run(&[
        "verify",
        "--suite",
        "set-algebra",
        "--space",
        s.to_str().unwrap(),
        "--weak",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = run(&["verify", "--suite", "set-algebra", "--space", s.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(5));
    assert!(stderr(&o).contains("set-algebra 7, 8, 12, 13, 16"), "{}", stderr(&o));
}

#[test]
fn verify_reports_mutated_clause() {
    let dir = tempfile::tempdir().unwrap();
    build(&data("indiscrete2.json"), dir.path());
    let path = dir.path().join("model.json");
    let mut model = read_json(&path);
    let ops = model["operations"].as_array_mut().unwrap();
    let neg = ops.iter_mut().find(|o| o["name"] == "neg").unwrap();
    neg["table"][0] = neg["table"][1].clone();
    let mutated = dir.path().join("mutated.json");
    std::fs::write(&mutated, serde_json::to_string(&model).unwrap()).unwrap();
    let o = run(&[
        "verify",
        "--suite",
        "super-rough",
        "--model",
        mutated.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(5));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(!v["suites"][0]["failing"].as_array().unwrap().is_empty());
    assert!(stderr(&o).contains("super-rough"));
}

#[test]
fn verify_custom_theory() {
    let dir = tempfile::tempdir().unwrap();
    build(&data("indiscrete2.json"), dir.path());
    let thy = dir.path().join("t.thy");
    std::fs::write(
        &thy,
        "[c] meet commutes\n  (= (meet a b) (meet b a))\n[d] lt is total\n  (= (lt a) (lt a))\n",
    )
    .unwrap();
    let model = dir.path().join("model.json");
    let o = run(&[
        "verify",
        "--model",
        model.to_str().unwrap(),
        "--theory",
        thy.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(5));
    assert!(stderr(&o).contains("theory d"), "{}", stderr(&o));
}

#[test]
fn represent_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    build(&data("discrete2.json"), dir.path());
    let out = dir.path().join("rep");
    let model = dir.path().join("model.json");
    let o = run(&[
        "represent",
        "--model",
        model.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let space = read_json(&out.join("space.json"));
    assert_eq!(space["partition"], serde_json::json!([["1"], ["2"]]));
    assert_eq!(
        read_json(&out.join("certificate.json"))["certificate"]
            .as_array()
            .unwrap()
            .len(),
        10
    );

    let ind = tempfile::tempdir().unwrap();
    build(&data("indiscrete2.json"), ind.path());
    let o = run(&[
        "represent",
        "--model",
        ind.path().join("model.json").to_str().unwrap(),
        "--format",
        "json",
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["space"]["partition"].as_array().unwrap().len(), 1);
}

#[test]
fn represent_rejects_junk() {
    let dir = tempfile::tempdir().unwrap();
    build(&data("indiscrete2.json"), dir.path());
    let path = dir.path().join("model.json");
    let mut model = read_json(&path);
    let ops = model["operations"].as_array_mut().unwrap();
    let meet = ops.iter_mut().find(|o| o["name"] == "meet").unwrap();
    meet["table"][0][1] = meet["table"][1][1].clone();
    std::fs::write(&path, serde_json::to_string(&model).unwrap()).unwrap();
    let o = run(&["represent", "--model", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(6));
    assert!(stderr(&o).contains("stage axioms"), "{}", stderr(&o));
}

#[test]
fn co_and_conditions() {
    assert!(stdout(&run(&["co", "--chain", "3"])).starts_with("Co: 7 convex sublattices"));
    let v: Value = serde_json::from_str(&stdout(&run(&["co", "--boolean", "2", "--format", "json"]))).unwrap();
    assert_eq!(v["size"], 10);
    assert_eq!(v["facts"]["join_semidistributive"], false);
    let sweep = stdout(&run(&["conditions", "--sweep", "20", "--seed", "5"]));
    assert!(sweep.starts_with("seed 5: 20 random lattices"));
    assert_eq!(sweep, stdout(&run(&["conditions", "--sweep", "20", "--seed", "5"])));
    assert_eq!(run(&["co"]).status.code(), Some(2));
}
