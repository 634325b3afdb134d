use incidence_web::{
    analyze_document, grid_document, partition_document, random_document, theorem1_document,
};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn analyze_grid() {
    let v = parse(&analyze_document(&grid_document(2).unwrap()).unwrap());
    assert_eq!(v["stats"]["n_incidences"], 16);
    assert_eq!(v["monitor"]["status"], "ok");
    assert!(v["svg"].as_str().unwrap().starts_with("<svg"));
}

#[test]
fn partition_grid() {
    let v = parse(&partition_document(&grid_document(3).unwrap(), 4, 5).unwrap());
    let t = v["partition"]["t"].as_u64().unwrap();
    assert!((4..=8).contains(&t));
    assert_eq!(v["partition"]["covers"], true);
    let svg = v["svg"].as_str().unwrap();
    assert_eq!(svg.matches(r#"class="cell""#).count() as u64, t);
    assert_eq!(svg.matches(r#"class="line""#).count(), 5);
}

#[test]
fn theorem1_grid() {
    let v = parse(&theorem1_document(&grid_document(5).unwrap(), 4).unwrap());
    assert_eq!(v["status"], "found");
    assert_eq!(v["certificate"]["points"].as_array().unwrap().len(), 4);
    assert_eq!(v["svg"].as_str().unwrap().matches("tuple-point").count(), 4);
}

#[test]
fn errors_are_messages() {
    assert!(analyze_document("nope")
        .unwrap_err()
        .contains("parse error"));
    assert!(theorem1_document(&grid_document(2).unwrap(), 2).is_err());
    assert!(partition_document(&grid_document(2).unwrap(), 0, 0).is_err());
    assert!(grid_document(0).is_err());
    assert!(random_document(1, 10, 5, 0).is_err());
    let big = random_document(1, 6000, 1, 1000).unwrap();
    assert!(analyze_document(&big).unwrap_err().contains("at most"));
}
