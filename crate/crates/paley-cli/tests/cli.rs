//! End-to-end tests of the CLI surface: subcommands, formats, exit codes,
//! env overrides, and the injected-fault hook for the verify failure path.

use std::process::{Command, Output};

fn paley(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_paley"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn info_reports_twenty_one() {
    let out = paley(&["info", "21"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("6-regular"));
    assert!(text.contains("classification case = P1P2"));
    assert!(text.contains("is_ramanujan        = true"));
    assert!(text.contains("alpha               = 2/1"));
    assert!(text.contains("spectrum vs circulant DFT (tol 1e-9): match"));
}

#[test]
fn info_rejects_non_fundamental_with_exit_two() {
    let out = paley(&["info", "6"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("not a fundamental discriminant"));

    assert_eq!(paley(&["info", "1"]).status.code(), Some(2));
    assert_eq!(paley(&["info", "45"]).status.code(), Some(2));
}

#[test]
fn info_negative_discriminant_is_spectrum_only() {
    let out = paley(&["info", "-4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("directed"));
    assert!(text.contains("spectrum"));
    assert!(!text.contains("cheeger:"));
    assert!(!text.contains("classification case"));
}

#[test]
fn export_edge_list_five_is_exact() {
    let out = paley(&["export", "5", "edge_list"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0 1\n0 4\n1 2\n2 3\n3 4\n");
}

#[test]
fn export_dot_twelve_is_a_cycle() {
    let out = paley(&["export", "12", "dot"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("graph \"P_12\" {"));
    assert_eq!(text.matches(" -- ").count(), 12);
}

#[test]
fn export_adjacency_json_negative_four() {
    let out = paley(&["export", "-4", "adjacency_json"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "{\"delta\":-4,\"D\":4,\"generator\":[0,1,0,0]}\n");
}

#[test]
fn export_writes_files() {
    let dir = std::env::temp_dir().join("paley-cli-test-export");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("p21.dot");
    let out = paley(&["export", "21", "dot", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("graph \"P_21\" {"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn scan_produces_thirty_rows_to_one_hundred() {
    let out = paley(&["scan", "3", "100"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 31, "header plus thirty rows");
    assert_eq!(
        lines[0],
        "delta,D,phi_D,degree,is_bipartite,ramanujan_case,is_ramanujan,lambda_g,alpha,alpha_numeric,brute_h"
    );
    assert!(lines[1].starts_with("5,5,4,2,false,PrimeP,true,"));
    // Rows are ordered by conductor.
    let ds: Vec<u64> = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert!(ds.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn scan_json_round_trips() {
    let out = paley(&["scan", "3", "40", "--format", "json"]);
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 12);
    let first = &rows[0];
    assert_eq!(first["delta"], 5);
    assert_eq!(first["D"], 5);
    assert_eq!(first["phi_D"], 4);
    assert_eq!(first["ramanujan_case"], "PrimeP");
    assert_eq!(first["alpha"], "1/1");
    assert_eq!(first["brute_h"], "1/1");
    // 21 is past the default brute cap.
    let row21 = rows.iter().find(|r| r["delta"] == 21).unwrap();
    assert_eq!(row21["brute_h"], serde_json::Value::Null);
}

#[test]
fn scan_check_passes_and_empty_range_is_fine() {
    let out = paley(&["scan", "3", "300", "--check"]);
    assert!(out.status.success());

    let out = paley(&["scan", "6", "7"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 1, "header only");

    let out = paley(&["scan", "9", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scan_deterministic_across_runs() {
    let a = stdout(&paley(&["scan", "3", "200"]));
    let b = stdout(&paley(&["scan", "3", "200"]));
    assert_eq!(a, b);
}

#[test]
fn brute_cap_env_override_fills_brute_column() {
    let out = Command::new(env!("CARGO_BIN_EXE_paley"))
        .args(["scan", "21", "21", "--format", "json"])
        .env("PALEY_BRUTE_CAP", "21")
        .output()
        .unwrap();
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // The half-interval bound is attained at 21: h = alpha = 2.
    assert_eq!(rows[0]["brute_h"], "2/1");
}

#[test]
fn verify_fast_passes() {
    let out = paley(&["verify", "fast"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.matches("[PASS]").count(), 10);
    assert!(text.contains("all criteria passed"));
}

#[test]
fn verify_injected_fault_exits_one() {
    let out = Command::new(env!("CARGO_BIN_EXE_paley"))
        .args(["verify", "fast"])
        .env("PALEY_VERIFY_INJECT_FAULT", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("injected-fault"));
}

#[test]
fn io_error_exits_three() {
    let out = paley(&[
        "export",
        "5",
        "dot",
        "--out",
        "/nonexistent-dir/paley-test/out.dot",
    ]);
    assert_eq!(out.status.code(), Some(3));
}
