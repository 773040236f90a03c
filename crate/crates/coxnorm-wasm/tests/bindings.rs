use coxnorm_wasm::{concepts_json, decompose_json, shapes_json};
use serde_json::Value;

#[test]
fn shapes_of_d5() {
    let v: Value = serde_json::from_str(&shapes_json("D5").unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 14);
    assert_eq!(v[0]["index"], 1);
}

#[test]
fn decomposition_record() {
    let v: Value = serde_json::from_str(&decompose_json("E7", "A2A1").unwrap()).unwrap();
    assert_eq!((v["D_order"].as_u64(), v["C_order"].as_u64()), (Some(2), Some(2)));
}

#[test]
fn concepts_of_h3() {
    let v: Value = serde_json::from_str(&concepts_json("H3").unwrap()).unwrap();
    let pairs: Vec<(String, String)> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["left"].as_str().unwrap().into(), c["right"].as_str().unwrap().into()))
        .collect();
    assert_eq!(pairs.len(), 2);
    assert!(pairs.contains(&("∅".into(), "H3".into())));
}

#[test]
fn errors_are_messages() {
    assert!(shapes_json("Q3").is_err());
    assert!(decompose_json("A3", "nonsense").unwrap_err().contains("nonsense"));
}
