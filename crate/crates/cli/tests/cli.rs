use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clusterchar")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn fpoly_prints_canonical_string() {
    let o = run(&["fpoly", "--rep", data("kronecker_v.json").to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "y1^2*y2^2 + 2*y1*y2^2 + y1*y2 + y2^2 + 2*y2 + 1");
    let o = run(&["fpoly", "--rep", data("loop_v2.json").to_str().unwrap(), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["poly"], "y1^2 + y1 + 1");
}

#[test]
fn grassmannian_table_in_lexicographic_order() {
    let o = run(&["grassmannian", "--rep", data("kronecker_v.json").to_str().unwrap()]);
    assert!(o.status.success());
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 9);
    assert_eq!(lines[0], "(0,0)\t1");
    assert_eq!(lines[1], "(0,1)\t2");
    assert_eq!(lines[8], "(2,2)\t1");
    let o = run(&["grassmannian", "--rep", data("kronecker_v.json").to_str().unwrap(), "--e", "1,2"]);
    assert_eq!(stdout(&o), "(1,2)\t2\n");
}

#[test]
fn characters_and_indices() {
    let a4 = data("a4.json");
    let a4 = a4.to_str().unwrap();
    let o = run(&["cc", "--quiver", a4, "--object", "T2"]);
    assert_eq!(stdout(&o).trim(), "x2");
    let o = run(&["index", "--quiver", a4, "--object", "[1,3]"]);
    assert_eq!(stdout(&o).trim(), "(-1,0,0,1)");
    let o = run(&["cc-table", "--quiver", a4, "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["entries"].as_array().unwrap().len(), 14);
}

#[test]
fn ar_quiver_document() {
    let o = run(&["ar-quiver", "--quiver", data("a4.json").to_str().unwrap(), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 10);
    assert_eq!(v["arrows"].as_array().unwrap().len(), 12);
    assert_eq!(v["meshes"].as_array().unwrap().len(), 6);
}

#[test]
fn mutation_and_enumeration() {
    let a4 = data("a4.json");
    let o = run(&["mutate", "--quiver", a4.to_str().unwrap(), "--seq", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["seed"]["fractions"][1], "(x1 + x3)/x2");
    assert_eq!(v["ct_object"][1], "[2,2]");
    let o = run(&["mutate", "--quiver", a4.to_str().unwrap(), "--seq", "2,2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["seed"]["cluster"], serde_json::json!(["x1", "x2", "x3", "x4"]));

    let o = run(&["enumerate", "--quiver", a4.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("seeds\t42\nvariables\t14\n"));
    let o = run(&["enumerate", "--quiver", data("kronecker.json").to_str().unwrap(), "--max-depth", "8"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("variables\t18"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "--suite", "grass"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "--suite", "char", "--flip-b-sign"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["cc", "--quiver", data("malformed.json").to_str().unwrap(), "--object", "T1"]).status.code(), Some(2));
    assert_eq!(run(&["cc", "--quiver", data("a4.json").to_str().unwrap(), "--object", "[3,9]"]).status.code(), Some(2));
    assert_eq!(run(&["fpoly"]).status.code(), Some(2));
    assert_eq!(run(&["fpoly", "--rep", data("loop_violated.json").to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["cc", "--quiver", "/nonexistent.json", "--object", "T1"]).status.code(), Some(2));
}

#[test]
fn verify_all_passes_with_report() {
    let o = run(&["verify", "--suite", "all", "--json"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}
