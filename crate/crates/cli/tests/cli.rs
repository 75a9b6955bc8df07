use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn input(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../inputs")
        .join(format!("{name}.toml"))
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hochserre"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8 output"),
    )
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let (code, out) = run(&all);
    (code, serde_json::from_str(&out).expect("JSON output"))
}

fn temp_input(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hochserre-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

const QDS_HEADER: &str = "vars = [\"x1\", \"x2\", \"x3\", \"x4\", \"x5\"]\nweights = [1, 1, 1, 1, 2]\ndegree = 4\n";

#[test]
fn analyze_reports_the_sector_table() {
    let (code, j) = run_json(&["analyze", &input("qds_fermat")]);
    assert_eq!(code, 0);
    assert_eq!(j["schema_version"], 1);
    let r = &j["result"];
    assert_eq!(r["milnor_number"], 81);
    assert_eq!(r["socle_degree"], 8);
    let table: Vec<(i64, i64)> = r["sectors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| (s["rank_w"].as_i64().unwrap(), s["k_g"].as_i64().unwrap()))
        .collect();
    assert_eq!(table, [(0, 0), (5, -6), (4, -4), (5, -6)]);
    assert_eq!(r["sectors"][2]["omega_g"], "x5^2");
    assert_eq!(r["serre"]["twist"], -6);
    assert!(r["oracle"].as_array().unwrap().iter().all(|c| c["agrees"] == true));
}

#[test]
fn analyze_cubic() {
    let (code, j) = run_json(&["analyze", &input("cubic_fermat")]);
    assert_eq!(code, 0);
    assert_eq!(j["result"]["milnor_number"], 32);
    assert_eq!(j["result"]["socle_degree"], 5);
}

#[test]
fn exit_codes() {
    let (code, j) = run_json(&["analyze", &input("not_quasi_homogeneous")]);
    assert_eq!((code, j["error"]["kind"].as_str()), (2, Some("NotQuasiHomogeneous")));
    let (code, j) = run_json(&["gamma", &input("qds_singular")]);
    assert_eq!((code, j["error"]["kind"].as_str()), (3, Some("NonIsolatedSingularity")));
    let (code, j) = run_json(&["gamma", &input("wps11222_sextic")]);
    assert_eq!(code, 4);
    assert_eq!(j["error"]["details"]["terms"][0]["right_sector"], 3);
    let (code, _) = run(&["analyze", "/nonexistent/input.toml"]);
    assert_eq!(code, 2);
    let (code, _) = run(&["gamma", &input("qds_fermat"), "--modulus", "91"]);
    assert_eq!(code, 2);
    let (code, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn syntax_errors_carry_offsets() {
    let path = temp_input("syntax.toml", &format!("{QDS_HEADER}omega = \"x1^\"\n"));
    let (code, j) = run_json(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(j["error"]["kind"], "Syntax");
    assert_eq!(j["error"]["details"]["offset"], 3);
}

#[test]
fn degree_below_two_is_rejected() {
    let path = temp_input(
        "low.toml",
        "vars = [\"x1\"]\nweights = [1]\ndegree = 1\nomega = \"x1\"\n",
    );
    let (code, j) = run_json(&["analyze", path.to_str().unwrap()]);
    assert_eq!((code, j["error"]["kind"].as_str()), (2, Some("InvalidInput")));
}

#[test]
fn hh_dimensions() {
    let (code, j) = run_json(&["hh", &input("qds_fermat"), "--kmin", "-1", "--kmax", "2"]);
    assert_eq!(code, 0);
    let rows = j["result"]["rows"].as_array().unwrap();
    let homology: Vec<i64> = rows.iter().map(|r| r["homology"]["dim"].as_i64().unwrap()).collect();
    assert_eq!(homology, [10, 2, 10, 0]);
    assert_eq!(rows[3]["cohomology"]["dim"], 20);
    let (code, j) = run_json(&["hh", &input("cubic_fermat"), "--kmin", "2", "--kmax", "2"]);
    assert_eq!(code, 0);
    assert_eq!(j["result"]["rows"][0]["cohomology"]["dim"], 10);
    let (code, j) = run_json(&["hh", &input("cubic_fermat"), "--kmin", "3", "--kmax", "2"]);
    assert_eq!(code, 0);
    assert_eq!(j["result"]["rows"].as_array().unwrap().len(), 0);
}

#[test]
fn hom_lists_bases() {
    let (code, j) = run_json(&["hom", &input("qds_fermat"), "-m", "0", "-t", "2"]);
    assert_eq!(code, 0);
    let r = &j["result"];
    assert_eq!(r["dim"], 20);
    assert_eq!(r["periodicity_check"], true);
    assert_eq!(r["summands"][1]["basis"][0], "1");
    assert_eq!(r["summands"][0]["basis"].as_array().unwrap().len(), 19);
}

#[test]
fn pairing_ranks() {
    for (e1, e2, rank) in [("4", "2", 19), ("2", "6", 10), ("0", "0", 1)] {
        let (code, j) = run_json(&["pairing", &input("qds_fermat"), "--e1", e1, "--e2", e2]);
        assert_eq!(code, 0);
        assert_eq!(j["result"]["rank"], rank, "({e1}, {e2})");
    }
    let (_, j) = run_json(&["pairing", &input("qds_fermat"), "--e1", "4", "--e2", "2", "--show-matrix"]);
    assert!(!j["result"]["matrix"].as_array().unwrap().is_empty());
}

#[test]
fn gamma_reports_kernel_and_audit() {
    let (code, j) = run_json(&["gamma", &input("qds_fermat")]);
    assert_eq!(code, 0);
    let r = &j["result"];
    assert_eq!((r["hh2"]["dim"].as_i64(), r["rank"].as_i64(), r["kernel_dim"].as_i64()), (Some(20), Some(19), Some(1)));
    let kernel = &r["kernel_basis"][0];
    assert_eq!(kernel[1]["sector"], 2);
    assert_eq!(kernel[1]["coords"][0], "1");
    let rules: Vec<&str> = r["audit"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| a["rule"].as_str().unwrap())
        .collect();
    assert_eq!(rules, ["R1-untwisted-product", "R2-vanishing-target"]);
    let (_, j) = run_json(&["gamma", &input("cubic_fermat")]);
    assert_eq!(j["result"]["kernel_dim"], 0);
    let (_, j) = run_json(&["gamma", &input("qds_perturbed_a")]);
    assert_eq!(j["result"]["kernel_dim"], 1);
}

#[test]
fn modular_path_agrees() {
    let (code, j) = run_json(&["gamma", &input("qds_fermat"), "--modulus", "2305843009213693951"]);
    assert_eq!(code, 0);
    assert_eq!(j["result"]["rank"], 19);
    assert_eq!(j["input"]["options"]["modulus"], 2305843009213693951u64);
}

#[test]
fn restriction_extension_is_opt_in() {
    let (code, j) = run_json(&["gamma", &input("wps11222_sextic")]);
    assert_eq!(code, 4);
    let lefts = |j: &Value| -> Vec<i64> {
        j["error"]["details"]["terms"]
            .as_array()
            .unwrap()
            .iter()
            .map(|t| t["left_sector"].as_i64().unwrap())
            .collect()
    };
    assert!(lefts(&j).contains(&0));
    // the extension covers untwisted left factors only; twisted ones stay unresolved
    let (code, j) = run_json(&["gamma", &input("wps11222_sextic"), "--assume-restriction-action"]);
    assert_eq!(code, 4);
    let remaining = lefts(&j);
    assert!(!remaining.is_empty() && remaining.iter().all(|&l| l != 0));
}

#[test]
fn file_options_and_flags() {
    let omega = "omega = \"x1^4 + x2^4 + x3^4 + x4^4 + x5^2\"\n";
    let path = temp_input(
        "opts.toml",
        &format!("{QDS_HEADER}{omega}\n[options]\noracle = false\nformat = \"json\"\n"),
    );
    let (code, out) = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let j: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(j["input"]["options"]["oracle"], false);
    assert!(j["result"]["oracle"].is_null());
    let (_, j) = run_json(&["analyze", &input("qds_fermat"), "--no-oracle"]);
    assert_eq!(j["input"]["options"]["oracle"], false);
}

#[test]
fn timing_only_on_request() {
    let (_, j) = run_json(&["gamma", &input("qds_fermat")]);
    assert!(j.get("timing").is_none());
    let (_, j) = run_json(&["gamma", &input("qds_fermat"), "--timing"]);
    assert!(j["timing"]["elapsed_ms"].is_u64());
}

#[test]
fn json_contains_no_floats() {
    fn walk(v: &Value) {
        match v {
            Value::Number(n) => assert!(n.is_i64() || n.is_u64(), "float {n}"),
            Value::Array(a) => a.iter().for_each(walk),
            Value::Object(o) => o.values().for_each(walk),
            _ => {}
        }
    }
    for args in [
        vec!["analyze", "ARG"],
        vec!["gamma", "ARG", "--show-matrix"],
        vec!["hh", "ARG", "--kmin", "-2", "--kmax", "3"],
    ] {
        let input_path = input("qds_perturbed_mixed");
        let args: Vec<&str> = args.iter().map(|a| if *a == "ARG" { input_path.as_str() } else { a }).collect();
        let (code, j) = run_json(&args);
        assert_eq!(code, 0);
        walk(&j);
    }
}

#[test]
fn text_output_is_a_table() {
    let (code, out) = run(&["analyze", &input("qds_fermat")]);
    assert_eq!(code, 0);
    assert!(out.contains("Milnor number     81"));
    assert!(out.lines().any(|l| l.starts_with("2  x5")));
}
