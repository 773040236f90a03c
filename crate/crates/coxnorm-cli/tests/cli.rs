use std::process::{Command, Output};

fn coxnorm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxnorm")).args(args).env_remove("COXNORM_CACHE").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn decompose_json_record() {
    let o = coxnorm(&["decompose", "E6", "A5", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["D_order"], 1);
    assert_eq!(v["Q_shape"], 2);
    let o = coxnorm(&["decompose", "A7", "[2222]", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["D_order"].as_u64(), v["A_type"].as_str()), (Some(24), Some("A3")));
    let o = coxnorm(&["decompose", "H3", "∅", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["Q_shape"].as_u64(), v["D_order"].as_u64()), (Some(6), Some(1)));
}

#[test]
fn subset_selector() {
    let a = stdout(&coxnorm(&["decompose", "A9", "s5,s7,s9", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["D_order"], 6);
}

#[test]
fn table_and_concepts_counts() {
    let o = coxnorm(&["table", "F4", "--format", "csv"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 13);
    let o = coxnorm(&["concepts", "H4"]);
    assert_eq!(stdout(&o).lines().count(), 5);
}

#[test]
fn exit_codes() {
    let o = coxnorm(&["decompose", "D5", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("[3 1 1]"));
    assert_eq!(coxnorm(&["table", "X9"]).status.code(), Some(2));
    assert_eq!(coxnorm(&["table", "E8"]).status.code(), Some(3));
    assert_eq!(coxnorm(&["shapes", "A3", "--format", "dot"]).status.code(), Some(2));
    assert_eq!(coxnorm(&["verify", "D6", "--suite", "fixtures"]).status.code(), Some(0));
    assert_eq!(coxnorm(&["verify", "E7", "--suite", "howlett"]).status.code(), Some(3));
}

#[test]
fn verification_failure_exits_one() {
    // The bundled D5 table carries a known blank cell that the computation fills.
    let o = coxnorm(&["verify", "D5", "--suite", "fixtures"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn deterministic_output() {
    let a = coxnorm(&["table", "B4", "--format", "json", "--jobs", "1"]);
    let b = coxnorm(&["table", "B4", "--format", "json", "--jobs", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let g = stdout(&coxnorm(&["graph", "E6", "--format", "dot"]));
    assert!(g.starts_with("digraph") && g.contains("color=blue"));
}

#[test]
fn cache_round_trip_and_version_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let plain = stdout(&coxnorm(&["shapes", "D6"]));
    let first = stdout(&coxnorm(&["shapes", "D6", "--cache-dir", d]));
    let file = dir.path().join("catalog-D6.json");
    assert!(file.exists());
    let second = stdout(&coxnorm(&["shapes", "D6", "--cache-dir", d]));
    assert_eq!(plain, first);
    assert_eq!(first, second);
    let text = std::fs::read_to_string(&file).unwrap().replace("\"version\":1", "\"version\":0");
    std::fs::write(&file, text).unwrap();
    assert_eq!(stdout(&coxnorm(&["shapes", "D6", "--cache-dir", d])), plain);
    assert!(std::fs::read_to_string(&file).unwrap().contains("\"version\":1"));
    std::fs::write(&file, "garbage").unwrap();
    assert_eq!(stdout(&coxnorm(&["shapes", "D6", "--cache-dir", d])), plain);
}
