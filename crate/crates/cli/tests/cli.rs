//! End-to-end tests of the binary: output contracts and exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_onep");

const K5_ONE_CROSSING: &str = "\
c K5 drawn with one crossing
p onep 5 10 1
e 1 2 1
e 1 3 1
e 1 4 1
e 1 5 1
e 2 3 1
e 2 4 1
e 2 5 1
e 3 4 1
e 3 5 1
e 4 5 1
x 1 3 2 4
";

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn write_file(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn solve_reports_the_known_optimum() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "k5.onep", K5_ONE_CROSSING);
    let out = run(&["solve", file.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("value 6\nside "), "{text}");
}

#[test]
fn solve_json_has_the_fixed_schema() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "k5.onep", K5_ONE_CROSSING);
    let out = run(&["solve", file.to_str().unwrap(), "--json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);

    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["value"], 6);
    assert_eq!(doc["k"], 1);
    assert_eq!(doc["leaves"], 3);
    assert_eq!(doc["max_depth"], 1);
    assert!(doc["ms"].is_number());
    let side: Vec<u64> = doc["side"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    let mut sorted = side.clone();
    sorted.sort_unstable();
    assert_eq!(side, sorted);

    // Keys appear in sorted order in the raw bytes.
    let positions: Vec<usize> = ["\"k\"", "\"leaves\"", "\"max_depth\"", "\"ms\"", "\"side\"", "\"value\""]
        .iter()
        .map(|k| text.find(k).expect(k))
        .collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "{text}");
}

#[test]
fn solve_stats_prints_search_counters() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "k5.onep", K5_ONE_CROSSING);
    let out = run(&["solve", file.to_str().unwrap(), "--stats"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("leaves 3"), "{text}");
    assert!(text.contains("max_depth 1"), "{text}");
    assert!(text.contains("total_ms "), "{text}");
}

#[test]
fn validate_accepts_and_reports_counts() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "k5.onep", K5_ONE_CROSSING);
    let out = run(&["validate", file.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("ok: 5 nodes, 10 edges, 1 crossings"));
}

#[test]
fn validate_rejects_corrupt_files_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "bad.onep", "p onep 3 1 0\ne 1 9 2\n");
    let out = run(&["validate", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));
}

#[test]
fn validate_warns_but_passes_overdense_graphs() {
    let mut text = String::from("p onep 7 21 0\n");
    for u in 1..=7u32 {
        for v in (u + 1)..=7 {
            text.push_str(&format!("e {u} {v} 1\n"));
        }
    }
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "k7.onep", &text);
    let out = run(&["validate", file.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("warning:"), "{}", stdout(&out));
}

#[test]
fn lying_crossing_list_exits_2() {
    let lying = K5_ONE_CROSSING
        .replace("p onep 5 10 1", "p onep 5 10 0")
        .replace("x 1 3 2 4\n", "");
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "lying.onep", &lying);
    let out = run(&["solve", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_agrees_and_respects_its_limit() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "k5.onep", K5_ONE_CROSSING);
    let out = run(&["oracle", file.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("value 6\n"));

    let out = run(&["oracle", file.to_str().unwrap(), "--limit", "4"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn missing_file_exits_3() {
    let out = run(&["solve", "/no/such/file.onep"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn gen_is_deterministic_per_seed_and_solvable() {
    let args = ["gen", "--nodes", "9", "--crossings", "2", "--seed", "424242"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);

    let other = run(&["gen", "--nodes", "9", "--crossings", "2", "--seed", "31"]);
    assert!(other.status.success());
    assert_ne!(a.stdout, other.stdout);

    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "gen.onep", &stdout(&a));
    let solved = run(&["solve", file.to_str().unwrap()]);
    assert!(solved.status.success(), "{}", stderr(&solved));
}

#[test]
fn gen_writes_output_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.onep");
    let out = run(&[
        "gen", "--nodes", "8", "--crossings", "1", "--seed", "7",
        "--weights", "0:3", "--density", "0.7",
        "-o", path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("p onep 8 "), "{text}");
    let validated = run(&["validate", path.to_str().unwrap()]);
    assert!(validated.status.success());
}

#[test]
fn infeasible_gen_exits_4() {
    let out = run(&[
        "gen", "--nodes", "9", "--crossings", "2", "--seed", "123456",
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("no face can host another"));
}

#[test]
fn bench_prints_the_leaf_table() {
    let out = run(&[
        "bench", "--nodes", "8", "--kmax", "2", "--seed", "5", "--reps", "2",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("mean_leaves"), "{text}");
    assert_eq!(text.lines().count(), 4, "{text}");
}

#[test]
fn help_exits_0_and_unknown_flags_exit_1() {
    let help = run(&["--help"]);
    assert!(help.status.success());
    assert!(stdout(&help).contains("solve"));

    let unknown = run(&["frobnicate"]);
    assert_eq!(unknown.status.code(), Some(1));
}
