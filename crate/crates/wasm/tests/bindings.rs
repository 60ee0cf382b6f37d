use meshknit_wasm::{diamond_json, knit_json, sign_check_json};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn knit_artifact() {
    let v = parse(&knit_json("tube:4", "J2", 6, 1).unwrap());
    assert_eq!(v["schema"], "meshknit/1");
    assert_eq!(v["result"]["truncated"], true);
    assert_eq!(v["result"]["valid_through"], 3);
}

#[test]
fn diamond_artifact() {
    let v = parse(&diamond_json(3, "0,0", 3).unwrap());
    assert_eq!(v["result"]["factor_count"], 9);
}

#[test]
fn sign_artifact() {
    let v = parse(&sign_check_json("4,4", "0,0", 2).unwrap());
    assert_eq!(v["result"]["ok"], true);
    assert_eq!(v["result"]["paths"].as_array().unwrap().len(), 6);
}

#[test]
fn errors_are_messages() {
    let e = knit_json("dihedral", "9,9", 2, 1).unwrap_err();
    assert!(e.to_string().contains("invalid vertex"));
    assert!(diamond_json(2, "0,0", 1).unwrap_err().to_string().contains("window"));
}
