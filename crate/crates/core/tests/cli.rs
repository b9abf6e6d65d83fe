use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn kx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kxcount"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const TR_1212: &str = r#"{"signature":[[1,1],[1,1]],
  "vertices":[{"id":0,"color":1},{"id":1,"color":2},{"id":2,"color":1},{"id":3,"color":2}],
  "edges":[{"src":0,"dst":1,"out":1,"in":1},{"src":1,"dst":2,"out":1,"in":1},
           {"src":2,"dst":3,"out":1,"in":1},{"src":3,"dst":0,"out":1,"in":1}]}"#;

const BOUQUET_2: &str = r#"{"signature":[[2,2]],"vertices":[{"id":0,"color":1}],
  "edges":[{"src":0,"dst":0,"out":1,"in":1},{"src":0,"dst":0,"out":2,"in":2}]}"#;

#[test]
fn hilbert_all_methods_agree() {
    let out = kx(&["hilbert", "--m", "2", "--N", "6", "--method", "all"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let rows = v["results"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r["coefficients"] == rows[0]["coefficients"]));
    assert_eq!(v["results"]["verdict"], "agree");
}

#[test]
fn klein_verify() {
    let out = kx(&["subgroups", "klein", "--n", "2", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["results"]["formula"], 3);
    assert_eq!(v["results"]["oracle"], 3);
}

#[test]
fn bs_and_oracle() {
    let v = json_of(&kx(&["subgroups", "bs", "--d", "2", "--n", "5", "--verify"]));
    assert_eq!(v["results"]["formula"], v["results"]["oracle"]);
    let v = json_of(&kx(&["subgroups", "oracle", "--relators", "aba-b-b-", "--n", "3"]));
    assert_eq!(v["results"]["count"], 2);
    let v = json_of(&kx(&["subgroups", "abelian", "--torsion", "2", "--rank", "1", "--n", "2"]));
    assert_eq!(v["results"]["count"], "3");
}

#[test]
fn invalid_graph_exits_one_with_violations() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"signature":[[1,1]],"vertices":[{"id":0,"color":2}],"edges":[{"src":0,"dst":0,"out":1,"in":1}]}"#,
    );
    let out = kx(&["graph", "minimize", &bad]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["results"]["valid"], false);
    assert!(v["results"]["violations"].as_array().unwrap().iter().any(|x| x["rule"] == "color out of range"));
}

#[test]
fn graph_commands() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", TR_1212);
    let v = json_of(&kx(&["graph", "validate", &g]));
    assert_eq!(v["results"]["valid"], true);
    assert_eq!(v["results"]["cycle_rank"], 1);

    let v = json_of(&kx(&["graph", "minimize", &g]));
    let row = &v["results"]["rows"][0];
    assert_eq!(row["base_vertices"], 2);
    assert_eq!(row["fiber_size"], 2);

    let out = kx(&["graph", "deck", &g]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["results"]["deck_group_order"], 2);

    let base = write(dir.path(), "base.json", BOUQUET_2);
    let v = json_of(&kx(&["graph", "tuple", &base, &base]));
    assert_eq!(v["results"]["degree"], 1);
    assert_eq!(v["results"]["multidegree"], serde_json::json!([1]));
}

#[test]
fn group_commands() {
    let dir = tempfile::tempdir().unwrap();
    // C_5 with inversion
    let table: Vec<Vec<usize>> = (0..5).map(|a| (0..5).map(|b| (a + b) % 5).collect()).collect();
    let file = write(
        dir.path(),
        "c5.json",
        &serde_json::json!({"table": table, "automorphism": {"images": [0, 4, 3, 2, 1]}}).to_string(),
    );
    let v = json_of(&kx(&["group", "classes", &file]));
    assert_eq!(v["results"]["class_count"], 5);
    let out = kx(&["group", "twisted-orbits", &file]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["results"]["twisted_orbits"], 1);
    let out = kx(&["group", "irr-orbits", "--numeric", &file]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json_of(&out)["results"]["rows"].clone();
    assert_eq!(rows, serde_json::json!([{"length": 1, "orbits": 1}, {"length": 2, "orbits": 2}]));

    // D_4 on a square, conjugated by a reflection
    let s4 = write(
        dir.path(),
        "d4.json",
        r#"{"degree":4,"generators":[[1,2,3,0],[0,3,2,1]],"automorphism":{"conjugate_by":[1,0,3,2]}}"#,
    );
    let v = json_of(&kx(&["group", "classes", &s4]));
    assert_eq!(v["results"]["order"], 8);
    assert_eq!(v["results"]["class_count"], 5);
}

#[test]
fn cuspidals_and_fm() {
    let v = json_of(&kx(&["cuspidals", "--m", "2", "--max-degree", "3", "--verify"]));
    assert_eq!(v["results"]["rows"][0]["cuspidals"], 1);
    assert_eq!(v["results"]["rows"][1]["cuspidals"], 2);
    assert!(v["cross_checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));

    let v = json_of(&kx(&["fm", "transitive", "--m", "2", "--n", "3", "--count-only"]));
    assert_eq!(v["results"]["count"], 7);
    let forward = json_of(&kx(&["fm", "sft", "--m", "2", "--max-degree", "4"]));
    let reverse = json_of(&kx(&["fm", "sft", "--m", "2", "--max-degree", "4", "--reverse"]));
    let stats = |v: &Value| -> Vec<(Value, Value, Value)> {
        let mut s: Vec<_> = v["results"]["rows"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| (r["orbit_size"].clone(), r["k"].clone(), r["irr_orbit_lengths"].clone()))
            .collect();
        s.sort_by_key(|x| format!("{x:?}"));
        s
    };
    assert_eq!(stats(&forward), stats(&reverse));

    let v = json_of(&kx(&["fm", "hall", "--m", "2", "--n", "4"]));
    assert_eq!(v["results"]["subgroups"], "71");
}

#[test]
fn multidegree_from_base() {
    let dir = tempfile::tempdir().unwrap();
    let base = write(dir.path(), "b.json", BOUQUET_2);
    let v = json_of(&kx(&["cuspidals", "--base", &base, "--max-degree", "2"]));
    assert_eq!(v["results"]["m"], 2);
    assert_eq!(v["results"]["rows"][1]["multidegree"], serde_json::json!([2]));
    let out = kx(&["hilbert", "--base", &base, "--m", "3", "--N", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn caps_exit_two_and_output_is_deterministic() {
    let out = kx(&["--max-n", "3", "fm", "transitive", "--m", "2", "--n", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let out = kx(&["--group-order-cap", "1", "hilbert", "--m", "2", "--N", "5", "--method", "cuspidal"]);
    assert_eq!(out.status.code(), Some(2));

    let a = kx(&["--jobs", "1", "fm", "transitive", "--m", "2", "--n", "4"]);
    let b = kx(&["--jobs", "4", "fm", "transitive", "--m", "2", "--n", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn other_formats() {
    let out = kx(&["--format", "csv", "fm", "transitive", "--m", "2", "--n", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().next().unwrap().contains("deck_order"));
    assert_eq!(text.lines().count(), 4);
    let out = kx(&["--format", "table", "kron", "--lambdas", "2,1;2,1", "--mu", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("value: 1"));
}

#[test]
fn selftest_subset() {
    let out = kx(&["selftest", "--criteria", "4,6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["results"]["rows"].as_array().unwrap().len(), 2);
    assert!(String::from_utf8(out.stderr).unwrap().contains("criterion  4 PASS"));
}
