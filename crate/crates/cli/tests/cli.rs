use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;
use ttu_core::fixtures::{self, Golden};
use ttu_core::Matrix;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
}

fn ttu(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ttu"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn golden_text(g: &Golden) -> String {
    let m: Matrix = g.to_matrix();
    m.to_text_ordered(&g.rows, &g.cols)
}

fn golden_json(dir: &TempDir, name: &str, g: &Golden) -> String {
    let m: Matrix = g.to_matrix();
    write(dir, name, &serde_json::to_string(&m.to_json()).unwrap())
}

#[test]
fn theta_of_running_example() {
    let input = fixture("running_example.json");
    let o = ttu(&[
        "construct",
        "--theta",
        "--e-base",
        "e8",
        "--input",
        input.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden_text(&fixtures::theta()));
}

#[test]
fn ias_from_euler_of_running_example() {
    let input = fixture("running_example.json");
    let o = ttu(&[
        "construct",
        "--ias-from-euler",
        "--e-base",
        "e8",
        "--input",
        input.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden_text(&fixtures::euler_ias()));
}

#[test]
fn malformed_input_exits_2_with_position() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", "{\"vertices\": [\"a\",\n  }");
    let o = ttu(&["construct", "--theta", "--input", &bad]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn unknown_flag_is_a_usage_error() {
    assert_eq!(ttu(&["construct", "--bogus"]).status.code(), Some(2));
}

#[test]
fn verify_product_passes_all_checks() {
    let dir = TempDir::new().unwrap();
    let input = fixture("running_example.json");
    let m = golden_json(&dir, "m.json", &fixtures::fundamental_product());
    let o = ttu(&[
        "verify",
        "--ttu",
        "--sheltering",
        "--input",
        &m,
        "--target",
        input.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["ttu"]["ttu"], true);
    assert_eq!(report["sheltering"]["subtransversals_checked"], 256);
}

#[test]
fn verify_parallel_a_reports_witness() {
    let dir = TempDir::new().unwrap();
    let m = golden_json(&dir, "a.json", &fixtures::parallel_product_a());
    let o = ttu(&["verify", "--ttu", "--input", &m]);
    assert_eq!(o.status.code(), Some(1));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let w = &report["ttu"]["witness"];
    assert_eq!(w["rows"], serde_json::json!(["C1B", "C3B"]));
    assert_eq!(w["cols"], serde_json::json!(["chi(v1)", "psi(v2)"]));
    assert_eq!(w["det"].to_string().trim_matches('"'), "2");
    let a2 = golden_json(&dir, "a2.json", &fixtures::parallel_product_a_prime());
    assert_eq!(ttu(&["verify", "--ttu", "--input", &a2]).status.code(), Some(0));
}

#[test]
fn verify_axioms_of_looped_graph() {
    let dir = TempDir::new().unwrap();
    let g = write(
        &dir,
        "g.json",
        r#"{"vertices": ["v1", "v2", "v3", "v4"], "adjacency": [["v1", "v2"], ["v2", "v3"], ["v2", "v4"]], "loops": ["v3"]}"#,
    );
    let o = ttu(&["verify", "--axioms", "--input", &g]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["axioms"]["violations"], serde_json::json!([]));
}

#[test]
fn z3_equals_qf_on_running_example() {
    let input = fixture("running_example.json");
    let o = ttu(&[
        "verify",
        "--z3-equals-qf",
        "--axioms",
        "--input",
        input.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn interlacement_is_adjacency_json() {
    let input = fixture("running_example.json");
    let o = ttu(&["interlacement", "--input", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let g = ttu_core::multimatroid::LoopedSimpleGraph::parse(&stdout(&o)).unwrap();
    assert_eq!(g.vertex_count(), 4);
}

#[test]
fn circle_check_exit_codes() {
    let dir = TempDir::new().unwrap();
    let c4 = write(
        &dir,
        "c4.json",
        &serde_json::to_string(&ttu_core::multimatroid::LoopedSimpleGraph::cycle(4).to_json()).unwrap(),
    );
    let o = ttu(&["circle-check", "--certificate", "--input", &c4]);
    assert_eq!(o.status.code(), Some(0));
    let cert: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(cert["outcome"], "certificate");
    let w5 = write(
        &dir,
        "w5.json",
        &serde_json::to_string(&ttu_core::multimatroid::LoopedSimpleGraph::wheel(5).to_json()).unwrap(),
    );
    assert_eq!(ttu(&["circle-check", "--input", &w5]).status.code(), Some(1));
    let c8 = write(
        &dir,
        "c8.json",
        &serde_json::to_string(&ttu_core::multimatroid::LoopedSimpleGraph::cycle(8).to_json()).unwrap(),
    );
    assert_eq!(ttu(&["circle-check", "--input", &c8]).status.code(), Some(3));
}

#[test]
fn demo_paper_passes_and_emits_json() {
    let o = ttu(&["demo-paper"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
    let j = ttu(&["demo-paper", "--json"]);
    let checks: Vec<Value> = serde_json::from_str(&stdout(&j)).unwrap();
    assert!(checks.iter().all(|c| c["pass"] == true));
}

#[test]
fn output_is_deterministic() {
    let input = fixture("running_example.json");
    let args = ["construct", "--product", "--json", "--input", input.to_str().unwrap()];
    assert_eq!(ttu(&args).stdout, ttu(&args).stdout);
    let o = ttu(&["demo-paper", "--json"]);
    assert_eq!(o.stdout, ttu(&["demo-paper", "--json"]).stdout);
}
