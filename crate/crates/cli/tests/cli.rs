use std::process::{Command, Output};

use serde_json::Value;

fn meshknit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_meshknit"))
        .args(args)
        .env_remove("MESHKNIT_WINDOW")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = meshknit(&all);
    serde_json::from_slice(&out.stdout).expect("json artifact")
}

#[test]
fn knit_dihedral_layer_two() {
    let v = json(&["knit", "--quiver", "dihedral", "--vertex", "0,0", "--kmax", "4"]);
    assert_eq!(v["schema"], "meshknit/1");
    let rows = v["result"]["rows"].as_array().unwrap();
    let layer2: Vec<&str> = rows
        .iter()
        .filter(|r| r["layers"][2] != 0)
        .map(|r| r["vertex"].as_str().unwrap())
        .collect();
    assert_eq!(layer2, ["0,4", "2,2", "4,0"]);
    assert!(rows.iter().all(|r| r["layers"][2].as_i64().unwrap() <= 1));
}

#[test]
fn knit_tube_truncates() {
    let out = meshknit(&["knit", "--quiver", "tube:4", "--vertex", "J2", "--kmax", "6", "--format", "json"]);
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["truncated"], true);
    let j2 = v["result"]["rows"].as_array().unwrap().iter().find(|r| r["vertex"] == "J2").unwrap();
    assert_eq!(j2["layers"], serde_json::json!([1, 0, 1, 0]));
}

#[test]
fn knit_layer_zero_only() {
    let v = json(&["knit", "--kmax", "0"]);
    let rows = v["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["layers"], serde_json::json!([1]));
}

#[test]
fn diamond_lists_four_factors() {
    let v = json(&["diamond", "--n", "2", "--vertex", "0,0"]);
    assert_eq!(v["result"]["factor_count"], 4);
    assert_eq!(v["result"]["rows"].as_array().unwrap().len(), 4);
}

#[test]
fn center_mu_one() {
    let v = json(&["center", "--mu", "1", "--report"]);
    let r = &v["result"];
    let per_vertex = r["per_vertex"].as_object().unwrap();
    assert!(per_vertex.values().all(|w| w.as_array().unwrap().len() == 1));
    assert_eq!(r["conclusion"], true);
    assert_eq!(r["hypotheses"]["4b_support_at_least_2"], false);
    // the whole windowed even component: |i|,|j| <= 4, both even
    assert_eq!(r["support"].as_array().unwrap().len(), 25);
}

#[test]
fn oracle_suite_passes() {
    let out = meshknit(&["oracle", "--n", "4", "--check", "all"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.contains("\ttrue\t")).count(), 9);
    assert_eq!(meshknit(&["oracle", "--n", "4", "--check", "nope"]).status.code(), Some(4));
}

#[test]
fn signcheck_is_clean() {
    let v = json(&["signcheck", "--from", "4,4", "--to", "0,0"]);
    assert_eq!(v["result"]["ok"], true);
    assert_eq!(v["result"]["paths"].as_array().unwrap().len(), 6);
}

#[test]
fn exit_codes() {
    assert_eq!(meshknit(&["knit", "--vertex", "8,8"]).status.code(), Some(2));
    assert_eq!(meshknit(&["knit", "--vertex", "1,0"]).status.code(), Some(4));
    assert_eq!(meshknit(&["knit", "--field", "p:6"]).status.code(), Some(4));
    assert_eq!(meshknit(&["knit", "--format", "xml"]).status.code(), Some(4));
    assert_eq!(meshknit(&["frobnicate"]).status.code(), Some(4));
    assert_eq!(meshknit(&["--help"]).status.code(), Some(0));
    assert_eq!(meshknit(&["--version"]).status.code(), Some(0));
    assert_eq!(meshknit(&["center", "--orbit", "0,0", "--degree", "2"]).status.code(), Some(4));
}

#[test]
fn window_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_meshknit"))
        .args(["knit", "--vertex", "8,8", "--kmax", "1"])
        .env("MESHKNIT_WINDOW", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("\"window\":4"));
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("meshknit-cli-{}.tsv", std::process::id()));
    let p = path.to_str().unwrap();
    let out = meshknit(&["diamond", "--n", "1", "--out", p]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(text.starts_with("# schema: meshknit/1"));
}

#[test]
fn repeated_runs_are_identical() {
    let commands: [&[&str]; 3] = [
        &["knit", "--quiver", "tube:5", "--vertex", "J2", "--kmax", "10", "--format", "json"],
        &["knit", "--quiver", "dihedral", "--vertex", "2,0", "--kmax", "4"],
        &["diamond", "--n", "3", "--vertex", "0,0", "--window", "3", "--format", "json"],
    ];
    for args in commands {
        let first = meshknit(args);
        for _ in 0..2 {
            let again = meshknit(args);
            assert_eq!(first.stdout, again.stdout, "{args:?}");
            assert_eq!(first.status.code(), again.status.code());
        }
    }
}
