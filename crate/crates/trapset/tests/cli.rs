//! End-to-end checks of the `trapset` binary: artifact contents and exit
//! codes (0 ok, 1 verification failure, 2 usage/input error, 3 budget).

use std::process::Command;

use trapset::alist::write_alist;
use trapset::reductions::build_min_a_lets_instance;
use trapset::sat::{triple_clause_formula, write_formula};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_trapset"))
}

fn write_running_example(dir: &tempfile::TempDir) -> std::path::PathBuf {
    let path = dir.path().join("psi.cnf");
    std::fs::write(&path, write_formula(&triple_clause_formula())).unwrap();
    path
}

#[test]
fn reduce_writes_lets_instance_alist() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_running_example(&dir);
    let out = bin()
        .args(["reduce", input.to_str().unwrap(), "--target", "min-a-lets"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("15 27\n"), "unexpected header: {stdout}");
}

#[test]
fn reduce_writes_trace_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_running_example(&dir);
    let alist = dir.path().join("g.alist");
    let trace = dir.path().join("trace.json");
    let out = bin()
        .args([
            "reduce",
            input.to_str().unwrap(),
            "--target",
            "min-a-eabs",
            "--out",
            alist.to_str().unwrap(),
            "--trace",
            trace.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(std::fs::read_to_string(&alist).unwrap().starts_with("21 48\n"));
    let trace: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&trace).unwrap()).unwrap();
    assert_eq!(trace["target"], "min-a-eabs");
    assert_eq!(trace["b"], 21);
}

#[test]
fn reduce_rejects_malformed_input_with_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("broken.cnf");
    std::fs::write(&input, "p monotone 3 1\nx x y\n").unwrap();
    let out = bin()
        .args(["reduce", input.to_str().unwrap(), "--target", "min-a-lets"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("line"), "stderr should carry line diagnostics: {stderr}");
}

#[test]
fn search_min_b_on_incidence_graph() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_running_example(&dir);
    let alist = dir.path().join("g.alist");
    let out = bin()
        .args([
            "reduce",
            input.to_str().unwrap(),
            "--target",
            "min-b",
            "--out",
            alist.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    // The chain output stays 3-regular; its target size is in the trace, but
    // the K_{3,3} shape of the direct incidence graph is simpler to probe.
    let k33 = dir.path().join("k33.alist");
    let step = trapset::reductions::step4_formula_to_tanner(&triple_clause_formula()).unwrap();
    std::fs::write(&k33, write_alist(&step.graph)).unwrap();
    let out = bin()
        .args([
            "search", k33.to_str().unwrap(), "--problem", "min-b", "--kind", "lets", "-a", "2",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "found");
    assert_eq!(v["optimum"], 0);
}

#[test]
fn search_size_one_is_infeasible() {
    let dir = tempfile::tempdir().unwrap();
    let k33 = dir.path().join("k33.alist");
    let step = trapset::reductions::step4_formula_to_tanner(&triple_clause_formula()).unwrap();
    std::fs::write(&k33, write_alist(&step.graph)).unwrap();
    let out = bin()
        .args([
            "search", k33.to_str().unwrap(), "--problem", "min-b", "--kind", "lets", "-a", "1",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "infeasible");
}

#[test]
fn search_budget_exhaustion_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let alist = dir.path().join("lets.alist");
    let inst = build_min_a_lets_instance(&triple_clause_formula()).unwrap();
    std::fs::write(&alist, write_alist(&inst.graph)).unwrap();
    let out = bin()
        .args([
            "search",
            alist.to_str().unwrap(),
            "--problem",
            "min-a",
            "--kind",
            "lets",
            "-b",
            "21",
            "--max-nodes",
            "1",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "budget_exceeded");
}

#[test]
fn verify_thm2_passes_on_running_example() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_running_example(&dir);
    let report_path = dir.path().join("report.json");
    let out = bin()
        .args([
            "verify",
            "--step",
            "thm2",
            "--input",
            input.to_str().unwrap(),
            "--json",
            report_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["pipeline"], "thm2");
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("[pass]"));
}

#[test]
fn verify_step1_runs_on_seeded_instance() {
    let out = bin().args(["verify", "--step", "1", "--beta", "4", "--seed", "5"]).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn sat_gen_validate_solve_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("gen.cnf");
    let out = bin()
        .args([
            "sat", "gen", "--n-vars", "6", "--alpha", "3", "--beta", "3", "--seed", "1", "--out",
            f.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let out = bin()
        .args(["sat", "validate", f.to_str().unwrap(), "--alpha", "3", "--beta", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let out = bin()
        .args(["sat", "solve", f.to_str().unwrap(), "--gamma", "1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["satisfiable"].is_boolean());
}

#[test]
fn sat_validate_reports_violations_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.cnf");
    std::fs::write(&f, "p monotone 3 1\nv x y z\nx y z\n").unwrap();
    let out = bin()
        .args(["sat", "validate", f.to_str().unwrap(), "--alpha", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["violations"].as_array().unwrap().len(), 3);
}
