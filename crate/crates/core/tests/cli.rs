use std::path::PathBuf;
use std::process::{Command, Output};

fn pivhopf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pivhopf"))
        .args(args)
        .output()
        .expect("run pivhopf")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn hopf_verify_identity_passes() {
    let out = pivhopf(&["hopf", "verify", "--n", "1", "--Q", "identity", "--degree", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.iter().any(|n| n.starts_with("(e)")));
}

#[test]
fn corrupted_pair_exits_one_and_names_the_snake() {
    let good = pivhopf(&["pivotal", "from-matrix", "--Q", "diag:2"]);
    assert_eq!(good.status.code(), Some(0));
    let mut pair = json(&good)["pair"].clone();
    pair["evr"] = serde_json::json!([["5"]]);
    let path = scratch("corrupted_pair.json", &pair.to_string());
    let out = pivhopf(&["pivotal", "check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let failed: Vec<String> = json(&out)["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap().to_string())
        .collect();
    assert!(failed.iter().all(|n| n.starts_with("right snake")), "{failed:?}");
    assert!(!failed.is_empty());
}

#[test]
fn input_errors_exit_two() {
    let out = pivhopf(&["monad", "truncate", "--n", "2", "--Q", "diag:1,2,3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("shape mismatch"));
    assert_eq!(pivhopf(&["pivotal", "check", "/nonexistent/pair.json"]).status.code(), Some(2));
    assert_eq!(pivhopf(&["hopf"]).status.code(), Some(2));
    let table = scratch("bad_group.json", r#"{"elements":["a","b"],"mul":[[0,0],[0,1]]}"#);
    let out = pivhopf(&["gvec", "enumerate", "--group", table.to_str().unwrap(), "--g", "a"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn object_commands() {
    let obj = scratch("scalar_object.json", r#"{"dimX":1,"sigma":[["2"]],"Q":[["3"]]}"#);
    let o = obj.to_str().unwrap();
    for cmd in [vec!["cpq", "check", o], vec!["cpq", "tensor", o, o], vec!["cpq", "hom-left", o, o], vec!["cpq", "hom-right", o, o], vec!["cpq", "dual", o]] {
        let out = pivhopf(&cmd);
        assert_eq!(out.status.code(), Some(0), "{cmd:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let t = json(&pivhopf(&["cpq", "tensor", o, o]));
    assert_eq!(t["object"]["sigma"]["entries"][0], "4");
}

#[test]
fn group_table_from_file() {
    let z3 = scratch("z3.json", r#"{"elements":["e","a","b"],"mul":[[0,1,2],[1,2,0],[2,0,1]]}"#);
    let out = pivhopf(&["gvec", "enumerate", "--group", z3.to_str().unwrap(), "--g", "a", "--max-dim", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["objects"].as_array().unwrap().len(), 3);
}

#[test]
fn report_written_to_file() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("augment.json");
    let out = pivhopf(&["--json", path.to_str().unwrap(), "monad", "augment", "--n", "2", "--degree", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn prime_field_runs() {
    let out = pivhopf(&["--field", "fp:5", "hopf", "verify", "--Q", "diag:2", "--degree", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let out = pivhopf(&["--field", "fp:5", "pivotal", "from-matrix", "--Q", "diag:5"]);
    assert_eq!(out.status.code(), Some(2));
}
