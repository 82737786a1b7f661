use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxbrauer")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn g2_tree_json() {
    let out = run(&["tree", "--fixture", "2g2", "--qsq", "27", "--ell", "19", "--out", "-"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["h0"], 6);
    assert_eq!(v["multiplicity"], 3);
    assert_eq!(v["cyclic_order"], serde_json::json!([0, 2, 3, 4, 5]));
    assert_eq!(v["labels"]["0"], "St");
    let again = run(&["tree", "--fixture", "2g2", "--qsq", "27", "--ell", "19"]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn star_verify() {
    let out = run(&["star", "--d", "7", "--e", "3", "--n", "2", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["match"], true);
    assert_eq!(v["decomposition"][3], serde_json::json!([1, 1, 1]));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["rickard", "--fixture", "line3", "--vertex", "5"]).status.code(), Some(1));
    assert_eq!(run(&["validate", "--type", "A2", "--qsq", "2", "--ell", "3"]).status.code(), Some(2));
    assert_eq!(run(&["validate", "--type", "A2", "--qsq", "2", "--ell", "7"]).status.code(), Some(0));
    assert_eq!(run(&["star", "--d", "7", "--e", "3", "--n", "3"]).status.code(), Some(1));
    assert_eq!(run(&["tree", "--fixture", "2g2", "--series", "x.json"]).status.code(), Some(1));
    assert_eq!(run(&["nonsense"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn validate_report() {
    let v = json(&run(&["validate", "--type", "2G2", "--qsq", "27", "--ell", "19"]));
    assert_eq!(v["valid"], true);
    assert_eq!(v["eigenvalue_table"], serde_json::json!([1, 8, 7, 18, 11, 12]));
    assert_eq!(v["multiplicity"], 3);
    let bad = json(&run(&["validate", "--type", "A2", "--qsq", "2", "--ell", "3"]));
    assert_eq!(bad["valid"], false);
    assert_eq!(bad["reason"], "DividesWeylOrder");
}

#[test]
fn precision_env() {
    let out = Command::new(env!("CARGO_BIN_EXE_coxbrauer"))
        .args(["validate", "--type", "A2", "--qsq", "2", "--ell", "7"])
        .env("COXBRAUER_PRECISION", "5")
        .output()
        .unwrap();
    assert_eq!(json(&out)["precision"], 5);
    let bad = Command::new(env!("CARGO_BIN_EXE_coxbrauer"))
        .args(["validate", "--type", "A2", "--qsq", "2", "--ell", "7"])
        .env("COXBRAUER_PRECISION", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn tree_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("coxbrauer-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t.json");
    let p = path.to_str().unwrap();
    assert!(run(&["tree", "--fixture", "line3", "--mu", "2", "--out", p]).status.success());
    let rick = json(&run(&["rickard", "--tree", p, "--vertex", "2", "--check-tilting"]));
    assert_eq!(rick["degrees"], serde_json::json!([2, 4]));
    assert_eq!(rick["tilting"]["end_dim"], 21);
    let alg = json(&run(&["algebra", "--tree", p]));
    assert_eq!(alg["dim"], 11);
    let dec = json(&run(&["decmatrix", "--tree", p]));
    assert_eq!(dec["unitriangular"]["ok"], true);
    let collapsed = json(&run(&["decmatrix", "--tree", p, "--collapsed"]));
    assert_eq!(collapsed["matrix"].as_array().unwrap().len(), 4);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn selftest_filter_and_table() {
    let out = run(&["selftest", "--filter", "tilting"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1);
    assert!(text.contains("tilting"));

    let dump = run(&["selftest", "--dump-table"]);
    let mut rows: Value = serde_json::from_slice(&dump.stdout).unwrap();
    rows[5]["delta"] = Value::from(7);
    let path = std::env::temp_dir().join(format!("coxbrauer-table-{}.json", std::process::id()));
    std::fs::write(&path, rows.to_string()).unwrap();
    let bad = run(&["selftest", "--filter", "coxeter", "--table", path.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8(bad.stdout).unwrap().contains("checksum"));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn info_json() {
    let v = json(&run(&["info", "--type", "2B2"]));
    assert_eq!(v["h"], 8);
    assert_eq!(v["torus_order"], "1 - sqrt(2)*q + q^2");
    assert_eq!(run(&["info", "--type", "A"]).status.code(), Some(1));
}
