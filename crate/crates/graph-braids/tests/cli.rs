//! End-to-end tests of the binary against the committed graph files.

use std::path::PathBuf;
use std::process::{Command, Output};

use graph_braids::report::{Payload, Report};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graph-braids"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 output")
}

#[test]
fn betti_table_reads_like_a_table() {
    let path = data("tripod.graph");
    let text = stdout_of(&["betti", path.to_str().unwrap(), "--n", "2", "--brute"]);
    assert!(text.contains("cross-checked"), "{text}");
    assert!(text.lines().any(|l| l.starts_with("0") && l.contains('Z')), "{text}");
    assert!(text.lines().any(|l| l.starts_with("1") && l.contains('Z')), "{text}");
}

#[test]
fn betti_json_round_trips_and_shows_torsion() {
    let path = data("k5.graph");
    let args = ["betti", path.to_str().unwrap(), "--n", "2", "--i", "1", "--format", "json"];
    let first = stdout_of(&args);
    let second = stdout_of(&args);
    assert_eq!(first, second, "identical runs must emit identical bytes");
    let report = Report::from_json(&first).unwrap();
    let Payload::Betti(p) = &report.payload else { panic!("wrong payload kind") };
    assert_eq!(p.groups.len(), 1);
    assert_eq!(p.groups[0].free_rank, 6);
    assert_eq!(p.groups[0].torsion, vec!["2".to_string()]);
}

#[test]
fn poly_reports_the_two_branch_closed_forms() {
    let path = data("figtree.graph");
    let text = stdout_of(&["poly", path.to_str().unwrap(), "--i-max", "2"]);
    assert!(text.contains("P_0(n) = 1"), "{text}");
    assert!(text.contains("P_1(n) = 2 C(n, 2)"), "{text}");
    assert!(text.contains("P_2(n) = C(n, 4)"), "{text}");
}

#[test]
fn poly_csv_parses_back() {
    let path = data("figtree.graph");
    let text = stdout_of(&["poly", path.to_str().unwrap(), "--i-max", "1", "--format", "csv"]);
    let report = Report::from_csv(&text).unwrap();
    assert_eq!(report.to_csv(), text);
    let Payload::Poly(p) = &report.payload else { panic!("wrong payload kind") };
    assert_eq!(p.polys[1].binomial_form, "2 C(n, 2)");
}

#[test]
fn euler_warns_about_the_sign_choice() {
    let path = data("tripod.graph");
    let text = stdout_of(&["euler", path.to_str().unwrap(), "--n-max", "2", "--poly"]);
    assert!(text.contains("note:"), "{text}");
    assert!(text.contains("minus sign"), "{text}");
    let out = run(&["euler", path.to_str().unwrap()]);
    assert!(!out.status.success(), "euler needs --n-max or --poly");
}

#[test]
fn cells_filter_keeps_only_the_requested_class() {
    let path = data("tripod.graph");
    let text = stdout_of(&[
        "cells",
        path.to_str().unwrap(),
        "--n",
        "2",
        "--i",
        "1",
        "--class",
        "critical",
        "--format",
        "csv",
    ]);
    let report = Report::from_csv(&text).unwrap();
    let Payload::Cells(p) = &report.payload else { panic!("wrong payload kind") };
    assert_eq!(p.cells.len(), 1);
    assert!(p.cells.iter().all(|c| c.class == "critical"));
    assert!(p.total_cells > 1);
}

#[test]
fn layout_lists_the_deleted_edge_of_the_whisker_graph() {
    let path = data("whisker.graph");
    let text = stdout_of(&["layout", path.to_str().unwrap(), "--format", "json"]);
    let report = Report::from_json(&text).unwrap();
    let Payload::Layout(p) = &report.payload else { panic!("wrong payload kind") };
    assert!(!p.is_tree);
    assert_eq!(p.deleted_edges.len(), 1);
    assert_eq!(p.rows.len(), p.n_vertices);
}

#[test]
fn verify_exits_zero_and_writes_out_files() {
    let dir = std::env::temp_dir().join("graph-braids-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let out_path = dir.join("verify.json");
    let path = data("k33.graph");
    let out = run(&[
        "verify",
        path.to_str().unwrap(),
        "--n-max",
        "2",
        "--i-max",
        "1",
        "--format",
        "json",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty(), "output should go to the file");
    let written = std::fs::read_to_string(&out_path).unwrap();
    let report = Report::from_json(&written).unwrap();
    let Payload::Verify(p) = &report.payload else { panic!("wrong payload kind") };
    assert!(p.passed);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn probe_is_marked_experimental() {
    let path = data("tripod.graph");
    let text = stdout_of(&["probe", path.to_str().unwrap(), "--i", "1", "--n-max", "2"]);
    assert!(text.contains("EXPERIMENTAL"), "{text}");
    assert!(text.contains("0 mismatches"), "{text}");
}

#[test]
fn failures_use_distinct_exit_codes() {
    let missing = run(&["betti", "/no/such/file.graph", "--n", "2"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).starts_with("error:"));

    let dir = std::env::temp_dir().join("graph-braids-cli-bad");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.graph");
    std::fs::write(&bad, "adj 0: 1\nadj 1: 0\nnonsense\n").unwrap();
    let parse = run(&["betti", bad.to_str().unwrap(), "--n", "2"]);
    assert_eq!(parse.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&parse.stderr).contains("line 3"));
    std::fs::remove_dir_all(&dir).ok();

    let huge = run(&["betti", data("tripod.graph").to_str().unwrap(), "--n", "50"]);
    assert_eq!(huge.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&huge.stderr).contains("cap"));
}
