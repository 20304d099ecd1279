use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn hermeq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hermeq"))
        .args(args)
        .output()
        .expect("spawn hermeq")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hermeq-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

const TABLE1_POLY: &str = r#"{"coeffs":["1","2","-4","-1","1"]}"#;

#[test]
fn form_of_x2_plus_1() {
    let out = hermeq(&["form", "--poly", r#"{"coeffs":["1","0","1"]}"#]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    let terms: Vec<(Vec<u64>, String)> = v["form"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| {
            let e = t["exp"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
            (e, t["coeff"].as_str().unwrap().to_string())
        })
        .collect();
    assert_eq!(terms, vec![(vec![0, 2], "1".into()), (vec![2, 0], "1".into())]);
}

#[test]
fn disc_order_and_normform() {
    let out = hermeq(&["disc", "--poly", r#"{"coeffs":[1,-1,0,1]}"#]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["discriminant"], "-23");

    let out = hermeq(&["order", "--poly", r#"{"coeffs":[1,-1,0,2]}"#]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["is_order"], true);
    assert_eq!(v["trace_discriminant"], "-100");

    let out = hermeq(&["normform", "--poly", r#"{"coeffs":[1,-1,0,2]}"#, "--k", "1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["norm"], "1/2");
}

#[test]
fn partition_table_one() {
    let out = hermeq(&["partition", "--table", &fixture("table1.json")]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["class_count"], 3);
    assert_eq!(v["matches_printed"], true);
    let seq = hermeq(&["partition", "--table", "builtin:1", "--sequential"]);
    assert_eq!(stdout_json(&seq)["classes"], v["classes"]);
}

#[test]
fn partition_table_three_reports_diff() {
    let out = hermeq(&["partition", "--table", "builtin:3"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["class_count"], 11);
    assert_eq!(v["matches_printed"], false);
    assert_eq!(v["diff"]["only_computed"], serde_json::json!([[17, 25]]));
}

#[test]
fn check_gl2_exit_codes() {
    let none = hermeq(&["check-gl2", "--poly", TABLE1_POLY, "--beta", "[-2,1,0]", "--target", "[1,0,0]"]);
    assert_eq!(code(&none), 1);
    assert!(stdout_json(&none)["witness"].is_null());

    let some = hermeq(&["check-gl2", "--poly", TABLE1_POLY, "--beta", "[-4,0,1]", "--target", "[1,0,0]"]);
    assert_eq!(code(&some), 0);
    assert!(stdout_json(&some)["witness"]["gamma"].is_array());

    let direct = hermeq(&["check-gl2", "--poly", TABLE1_POLY, "--beta", r#"["1","0","0"]"#]);
    assert_eq!(code(&direct), 0);

    let bad = hermeq(&["check-gl2", "--poly", TABLE1_POLY, "--beta", "[1,0]"]);
    assert_eq!(code(&bad), 2);
}

#[test]
fn check_z_exit_codes() {
    let f = r#"{"coeffs":[1,-1,0,1]}"#;
    // f(X + 2) = X^3 + 6X^2 + 11X + 7
    let yes = hermeq(&["check-z", "--poly", f, "--other", r#"{"coeffs":[7,11,6,1]}"#]);
    assert_eq!(code(&yes), 0);
    assert_eq!(stdout_json(&yes)["a"], "2");
    let no = hermeq(&["check-z", "--poly", f, "--other", r#"{"coeffs":[1,1,0,1]}"#]);
    assert_eq!(code(&no), 1);
}

#[test]
fn check_hermite_explicit_pair() {
    // degree-4 explicit pair at s = t = 21
    let f = r#"{"coeffs":["2667","42","168","0","2"]}"#;
    let g = r#"{"coeffs":["57353835","3612882","78204","672","2"]}"#;
    let out = hermeq(&["check-hermite", "--poly", f, "--other", g, "--expr", r#"{"coeffs":[0,1,2]}"#]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout_json(&out)["det"], "1");

    let wrong = hermeq(&["check-hermite", "--poly", f, "--other", g, "--expr", r#"{"coeffs":[0,1]}"#]);
    assert_eq!(code(&wrong), 2);
}

#[test]
fn reducible_pair_command() {
    let out = hermeq(&["reducible-pair", "--poly", r#"{"coeffs":[1,-1,0,1]}"#]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["g"]["coeffs"], serde_json::json!(["0", "1", "-1", "0", "1"]));
    let bad = hermeq(&["reducible-pair", "--poly", r#"{"coeffs":[2,-1,0,1]}"#]);
    assert_eq!(code(&bad), 2);
}

#[test]
fn family_commands() {
    let kit = hermeq(&["family", "kit", "--n", "4"]);
    assert_eq!(code(&kit), 0);
    assert_eq!(stdout_json(&kit)["k"]["coeffs"], serde_json::json!(["1", "2", "2"]));

    let p = hermeq(&["family", "find-params", "--n", "4", "--monic"]);
    assert_eq!(code(&p), 0);
    let v = stdout_json(&p);
    assert_eq!((v["p"].as_u64(), v["c"].as_u64(), v["t"].as_u64()), (Some(11), Some(1), Some(2)));

    let dir = scratch("family");
    let path = dir.join("bundle.json");
    let out = hermeq(&["family", "gen", "--n", "4", "--c", "1", "--t", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written, stdout_json(&out));
    assert_eq!(written["f"]["coeffs"], serde_json::json!(["2", "4", "4", "0", "1"]));
    std::fs::remove_dir_all(dir).ok();

    let bad = hermeq(&["family", "gen", "--n", "4", "--c", "1", "--t", "3"]);
    assert_eq!(code(&bad), 2);
    assert!(String::from_utf8_lossy(&bad.stderr).contains("not 2 mod 11"));
}

#[test]
fn quartic_commands() {
    let ex = hermeq(&["quartic", "verify-example"]);
    assert_eq!(code(&ex), 0);
    assert_eq!(stdout_json(&ex)["passed"], true);

    let iota = hermeq(&["quartic", "iota", "--poly", r#"{"coeffs":[255,13,-62,-1,4]}"#]);
    assert_eq!(code(&iota), 0);
    assert_eq!(stdout_json(&iota)["b"][0], serde_json::json!(["8", "-1", "0"]));

    let f = hermeq(&["quartic", "principal-evidence", "--poly", r#"{"coeffs":[255,13,-62,-1,4]}"#]);
    assert_eq!(code(&f), 0);
    let g = hermeq(&["quartic", "principal-evidence", "--poly", r#"{"coeffs":[-6,-7,-2,-1,5]}"#, "--bound", "4"]);
    assert_eq!(code(&g), 1);
}

#[test]
fn bounds_command() {
    let out = hermeq(&["bounds", "--n", "4", "--disc", "3981"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["degree_cap"], 18);
    assert_eq!(v["split_bound"]["bound"], "10");
    assert_eq!(code(&hermeq(&["bounds", "--n", "4", "--disc", "0"])), 2);
}

#[test]
fn malformed_input_reports_position() {
    let out = hermeq(&["form", "--poly", r#"{"coeffs":[1,"#]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 1 column"), "{err}");
    assert_eq!(code(&hermeq(&["form", "--poly", r#"{"coeffs":["1x"]}"#])), 2);
    assert_eq!(code(&hermeq(&["no-such-command"])), 2);
    assert_eq!(code(&hermeq(&["form"])), 2);
}

#[test]
fn outputs_are_deterministic() {
    let a = hermeq(&["partition", "--table", "builtin:2"]);
    let b = hermeq(&["partition", "--table", "builtin:2"]);
    assert_eq!(a.stdout, b.stdout);
    let a = hermeq(&["family", "gen", "--n", "4", "--c", "89", "--t", "13"]);
    let b = hermeq(&["family", "gen", "--n", "4", "--c", "89", "--t", "13"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn manifest_is_written() {
    let dir = scratch("manifest");
    let path = dir.join("run.json");
    let out = hermeq(&["--manifest", path.to_str().unwrap(), "disc", "--poly", r#"{"coeffs":[1,0,1]}"#]);
    assert_eq!(code(&out), 0);
    let m: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(m["outputs"], stdout_json(&out));
    assert_eq!(m["exit_code"], 0);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn reproduce_all_passes_and_is_stable() {
    let a = hermeq(&["reproduce-all"]);
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stderr));
    let v = stdout_json(&a);
    assert_eq!(v["passed"], 15);
    let b = hermeq(&["reproduce-all"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn reproduce_all_names_corrupted_fixture() {
    let dir = scratch("fixtures");
    for i in 1..=3 {
        let name = format!("table{i}.json");
        let mut text = std::fs::read_to_string(fixture(&name)).unwrap();
        if i == 1 {
            text = text.replacen("\"-4\"", "\"-5\"", 1);
        }
        std::fs::write(dir.join(name), text).unwrap();
    }
    let out = hermeq(&["reproduce-all", "--fixtures", dir.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let v = stdout_json(&out);
    let failed: Vec<&Value> = v["criteria"].as_array().unwrap().iter().filter(|c| c["passed"] == false).collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0]["name"], "table 1 partition");
    assert!(failed[0]["detail"].as_str().unwrap().contains("checksum"));
    std::fs::remove_dir_all(dir).ok();
}
