use std::process::{Command, Output};

use serde_json::Value;

fn curcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curcoh")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = curcoh(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn text(args: &[&str]) -> String {
    let out = curcoh(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn gl_predict_sl2_degree_two() {
    let v = json(&["gl-predict", "--type", "A1", "--degree", "2"]);
    assert_eq!(v["schema"], "v1");
    assert_eq!(v["factors"], serde_json::json!([{"weight": [4], "mult": 1, "t_degree": 3}]));
    assert_eq!(v["params"]["type"], "A1");
}

#[test]
fn table1_g2() {
    assert_eq!(text(&["table1", "--type", "G2"]).lines().next(), Some("j = 2"));
    assert_eq!(json(&["table1", "--type", "A4"])["j"], serde_json::json!([1, 4]));
}

#[test]
fn gis_cohomology_has_five_pair_factors() {
    let v = json(&["cohomology", "--algebra", "gIs", "--type", "A1", "--points", "0,1", "--s", "3", "--degree", "2", "--arity", "2"]);
    let f = v["factors"].as_array().unwrap();
    assert_eq!(f.len(), 5);
    let pairs: Vec<(i64, i64)> =
        f.iter().map(|x| (x["weight"][0].as_i64().unwrap(), x["weight2"][0].as_i64().unwrap())).collect();
    assert_eq!(pairs, vec![(0, 2), (0, 4), (2, 0), (2, 2), (4, 0)]);
    assert!(f.iter().all(|x| x["mult"] == 1 && x.get("t_degree").is_none()));
    assert_eq!(v["truncation_level"], 3);
    assert_eq!(v["stabilization"]["stable"], true);
    assert_eq!(v["params"]["points"], serde_json::json!(["0", "1"]));
}

#[test]
fn gtp_defaults_to_level_five() {
    let v = json(&["cohomology", "--algebra", "gtp", "--type", "A1", "--degree", "2"]);
    assert_eq!(v["params"]["s"], 5);
    let f = v["factors"].as_array().unwrap();
    assert!(f.iter().any(|x| x["weight"] == serde_json::json!([4]) && x["t_degree"] == 3));
    assert!(f.iter().any(|x| x["weight"] == serde_json::json!([2]) && x["t_degree"] == 5));
    assert_eq!(json(&["cohomology", "--algebra", "gIs", "--type", "A1", "--points", "0,1", "--degree", "1", "--arity", "2"])["params"]["s"], 4);
}

#[test]
fn cyclic_commands() {
    let v = json(&["hc1", "--points", "0,1"]);
    assert_eq!(v["params"]["cutoff"], 12);
    assert_eq!(v["dim"], 2);
    assert_eq!(json(&["hc1", "--points", "0,1", "--cutoff", "5"])["survivors"], serde_json::json!(["(2,1)∧(1,1)"]));
    assert_eq!(json(&["detm", "--D", "6"])["det"], -13);
    let a = json(&["hc1-finite", "--points", "0,1", "--s", "3", "--unital"]);
    let b = json(&["hc1-finite", "--points", "0,1", "--s", "3"]);
    assert!(a["dim"].is_u64() && b["dim"].is_u64());
}

#[test]
fn ext_commands() {
    let v = json(&["ext1", "--type", "A1", "--pi", "0:[2];1:[1]", "--pi2", "0:[4];1:[1]", "--crosscheck", "2"]);
    assert_eq!(v["dim"], 1);
    assert!(v["annotations"].as_array().unwrap().iter().any(|a| a.as_str().unwrap().contains("s = 2")));
    assert_eq!(json(&["ext2-sl2", "--lams", "1,2", "--mus", "3,0", "--points", "0,1"])["method"], "closed form");
    assert_eq!(json(&["self-ext2-sl2", "--lams", "2,0", "--points", "0,1"])["dim"], 1);
    let r = json(&["ext2-report", "--type", "A1", "--pi", "0:[1];1:[3]", "--pi2", "", "--points", "0,1", "--s", "3"]);
    assert_eq!(r["dim"], 0);
    assert_eq!(r["truncation_level"], 3);
    assert!(r["stabilization"]["stable"].is_boolean());
}

#[test]
fn verify_suites_pass() {
    for suite in ["whitehead", "fgt", "hc1"] {
        let out = text(&["verify", suite]);
        assert!(out.lines().all(|l| !l.starts_with("FAIL")), "{out}");
    }
    assert!(text(&["verify", "fgt"]).contains("A1 dim H^3(g[t]_3): expected 3, computed 3"));
}

#[test]
fn exit_codes() {
    assert_eq!(curcoh(&["detm", "--D", "3"]).status.code(), Some(2));
    assert_eq!(curcoh(&["detm", "--D", "5", "--bogus"]).status.code(), Some(2));
    assert_eq!(curcoh(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(curcoh(&["gl-predict", "--type", "Z3", "--degree", "1"]).status.code(), Some(2));
    assert_eq!(curcoh(&["ext2-sl2", "--lams", "1,1", "--mus", "1,1", "--points", "0,1"]).status.code(), Some(2));
    assert_eq!(curcoh(&["hc1", "--points", "0,0"]).status.code(), Some(2));
}

#[test]
fn json_is_deterministic() {
    let args = ["cohomology", "--algebra", "gIs", "--type", "A2", "--points", "0,1", "--s", "2", "--degree", "2", "--arity", "2", "--json"];
    assert_eq!(curcoh(&args).stdout, curcoh(&args).stdout);
}
