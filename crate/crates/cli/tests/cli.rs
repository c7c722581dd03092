use std::path::PathBuf;
use std::process::{Command, Output};

use odt_core::quiver::builtin_a3;
use odt_core::{DimVector, GradedSeries};

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../../data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn odt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_odt")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

#[test]
fn orientifold_table_for_l3() {
    let out = odt(&["dt-orientifold", "--quiver", "loop:3", "--duality", "1,0,3", "--ximax", "9", "--format", "table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().skip(2).collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[0].starts_with("xi^1  1"));
    assert!(lines[1].starts_with("xi^3  q^{-3}"));
    assert!(lines[2].starts_with("xi^5  q^{-10}(1 + q^2 + 2q^4)"));
    assert!(lines[4].starts_with(
        "xi^9  q^{-36}(1 + q^2 + 2q^4 + 3q^6 + 5q^8 + 6q^{10} + 9q^{12} + 10q^{14} + 13q^{16} + 14q^{18} + 15q^{20} + 13q^{22} + 10q^{24} + 3q^{26})"
    ));
}

#[test]
fn orientifold_json_shape() {
    let out = odt(&["dt", "orientifold", "--m", "3", "--ximax", "5", "--betti"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = v["invariants"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[2]["e"], 5);
    assert_eq!(rows[2]["omega_bar"], serde_json::json!(["1", "0", "1", "0", "2"]));
    assert_eq!(rows[2]["betti"], rows[2]["omega_bar"]);
}

#[test]
fn enumerate_a3_file() {
    let out = odt(&["enumerate", "--quiver", &data("a3.json"), "--e", "1,2,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let types: Vec<(&str, i64)> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|t| (t["type"].as_str().unwrap(), t["codim"].as_i64().unwrap()))
        .collect();
    assert_eq!(
        types,
        [("((), (1,2,1))", 0), ("(((1,0,0)), (0,2,0))", 2), ("(((1,1,0)), (0,0,0))", 1)]
    );
}

#[test]
fn verify_loop2_passes() {
    let out = odt(&["verify", "--quiver", "loop:2", "--oracle", "3,5"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(!stdout(&out).contains("FAIL"));
}

#[test]
fn series_json_round_trips() {
    let out = odt(&["series", "--quiver", "a3", "--sigma", "--semistable", "--tmax", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let s: GradedSeries = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&s).unwrap() + "\n", text);
    let e = builtin_a3().self_dual(DimVector::new(vec![1, 2, 1]).unwrap()).unwrap();
    assert!(!s.coeff(e.as_dim()).is_zero());
}

#[test]
fn exit_codes() {
    let bad = odt(&["validate", "--quiver", &data("bad_tau.json")]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("tau_product"));
    assert_eq!(odt(&["validate", "--quiver", &data("a2.json")]).status.code(), Some(0));
    assert_eq!(odt(&["verify", "--quiver", "loop:1", "--oracle", "4"]).status.code(), Some(2));
    assert_eq!(odt(&["enumerate", "--quiver", "a3"]).status.code(), Some(2));
    assert_eq!(odt(&["dt-ordinary", "--quiver", "a3"]).status.code(), Some(1));
    assert_eq!(odt(&["dt-orientifold", "--m", "3", "--duality", "1,1,1"]).status.code(), Some(2));
}

#[test]
fn output_independent_of_thread_count() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_odt"))
            .args(["verify", "--quiver", "a3", "--oracle", "3", "--format", "json"])
            .env("ODT_THREADS", threads)
            .output()
            .unwrap()
    };
    let (one, four) = (run("1"), run("4"));
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}
