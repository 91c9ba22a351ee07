//! Golden-file tests for the command-line contract: output bytes and exit
//! codes. Run with `UPDATE_GOLDEN=1` to rewrite the expected files.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use asymhyp::format::parse_hypergraph;
use asymhyp::Engine;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_asymhyp"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn assert_golden(name: &str, actual: &str) {
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, actual).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(actual, expected, "output differs from {}", path.display());
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn construct_outputs() {
    let o = run(&["construct", "gk", "--k", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_golden("construct_gk_6.hg", &stdout(&o));

    let o = run(&["construct", "gkt-circ", "--k", "3", "--t", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_golden("construct_gkt_circ_3_1.hg", &stdout(&o));
    let h = parse_hypergraph(&stdout(&o)).unwrap();
    assert_eq!((h.n_vertices(), h.n_edges()), (7, 4));
}

#[test]
fn layered_construction_writes_address_map() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g60.hg");
    let o = run(&["construct", "gks", "--k", "6", "--s", "0", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let h = parse_hypergraph(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!((h.n_vertices(), h.n_edges()), (63, 35));
    let map = fs::read_to_string(dir.path().join("g60.hg.addr")).unwrap();
    assert_golden("gks_6_0.addr", &map);
}

#[test]
fn invalid_construction_parameters_are_input_errors() {
    let o = run(&["construct", "gkt", "--k", "5", "--t", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["construct", "gk"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--k"));
    let o = run(&["construct", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}

fn write_construction(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut all = vec!["construct"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let o = run(&all);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    path
}

#[test]
fn check_modes() {
    let dir = tempfile::tempdir().unwrap();
    let g6 = write_construction(dir.path(), "g6.hg", &["gk", "--k", "6"]);
    let o = run(&["check", g6.to_str().unwrap(), "--aut"]);
    assert_eq!(o.status.code(), Some(0));
    assert_golden("check_aut_gk_6.txt", &stdout(&o));
    let o = run(&["check", g6.to_str().unwrap(), "--aut", "--json"]);
    assert_golden("check_aut_gk_6.json", &stdout(&o));

    let s6 = write_construction(dir.path(), "s6.hg", &["gk-star", "--k", "6"]);
    let o = run(&["check", s6.to_str().unwrap(), "--asymmetric"]);
    assert_eq!(stdout(&o), "asymmetric: true\n");

    let two = dir.path().join("two.hg");
    fs::write(&two, "2\n").unwrap();
    let o = run(&["check", two.to_str().unwrap(), "--involution"]);
    assert_eq!(stdout(&o), "involution: true\nwitness: (0 1)\n");
}

#[test]
fn round_trip_matches_in_memory_results() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_construction(dir.path(), "c.hg", &["gkt", "--k", "4", "--t", "2"]);
    let from_file = parse_hypergraph(&fs::read_to_string(&path).unwrap()).unwrap();
    let in_memory = asymhyp::constructions::build_gkt(4, 2).unwrap();
    assert_eq!(from_file, in_memory);
    let o = run(&["check", path.to_str().unwrap(), "--aut", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let order = Engine::default().automorphism_group(&in_memory).unwrap().order;
    assert_eq!(v["order"], order.to_string());
}

#[test]
fn malformed_file_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.hg");
    fs::write(&bad, "3\n0 1\n0 5\n").unwrap();
    let o = run(&["check", bad.to_str().unwrap(), "--aut"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
    let o = run(&["check", dir.path().join("missing.hg").to_str().unwrap(), "--aut"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_exit_codes_and_reports() {
    let o = run(&["verify", "--strong", "--family", "gkt-circ", "--k", "4", "--t", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_golden("verify_strong_gkt_circ_4_2.txt", &stdout(&o));
    let o = run(&["verify", "--strong", "--family", "gkt-circ", "--k", "4", "--t", "2", "--json"]);
    assert_golden("verify_strong_gkt_circ_4_2.json", &stdout(&o));

    // symmetric subject
    let o = run(&["verify", "--strong", "--family", "gk", "--k", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("verdict: fails"));

    // the lemma-style bundle that does not hold as stated
    let o = run(&["verify", "--cyclic-structure", "--k", "4", "--t", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_golden("verify_cyclic_structure_4_2.txt", &stdout(&o));

    let o = run(&["verify", "--path-family", "--k", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_golden("verify_path_family_6.txt", &stdout(&o));

    let o = run(&["verify", "--lower-bound", "--k", "4"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn sampled_regime_needs_seed_and_is_worker_independent() {
    let o = run(&["verify", "--involution-free", "--family", "gks", "--k", "6", "--s", "0", "--regime", "sampled"]);
    assert_eq!(o.status.code(), Some(2));
    let args = [
        "verify",
        "--involution-free",
        "--family",
        "gks",
        "--k",
        "6",
        "--s",
        "0",
        "--regime",
        "sampled",
        "--trials",
        "500",
        "--seed",
        "9",
        "--json",
    ];
    let one = run(&args);
    assert_eq!(one.status.code(), Some(0));
    let mut with_workers = args.to_vec();
    with_workers.extend_from_slice(&["--workers", "3"]);
    let three = run(&with_workers);
    assert_eq!(one.stdout, three.stdout);
    assert_golden("verify_sampled_gks_6_0.json", &stdout(&one));
}

#[test]
fn budget_exceeded_has_its_own_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k8.hg");
    let h = asymhyp::Hypergraph::complete(8, 3);
    fs::write(&path, asymhyp::format::write_hypergraph(&h)).unwrap();
    let o = run(&["check", path.to_str().unwrap(), "--aut", "--budget", "3"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["check", path.to_str().unwrap(), "--aut", "--budget", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn search_and_exploration_tables() {
    let o = run(&["search", "--k", "2", "--max-n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_golden("search_k2_n6.txt", &stdout(&o));

    let dir = tempfile::tempdir().unwrap();
    let o = run(&["search", "--k", "4", "--max-n", "6", "--witness-dir", dir.path().to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let w = parse_hypergraph(&fs::read_to_string(dir.path().join("k4-n6.hg")).unwrap()).unwrap();
    assert!(Engine::default().is_asymmetric(&w).unwrap());

    let o = run(&["critical-oriented", "--max-n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_golden("critical_oriented_3.txt", &stdout(&o));
    assert!(stdout(&o).contains("no critical asymmetric oriented graph found"));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.txt");
    let o = run(&["verify", "--minimal", "--family", "x1", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(fs::read_to_string(&out).unwrap().contains("verdict: holds"));
}
