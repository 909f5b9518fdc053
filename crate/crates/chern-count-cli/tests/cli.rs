//! End-to-end tests of the compiled binary: exact output bytes, exit
//! codes, cache persistence, and surface-file handling.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn binary() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_chern-count"));
    // Keep an ambient cache configuration from leaking into the tests.
    cmd.env_remove("CHERN_COUNT_CACHE");
    cmd
}

fn run(args: &[&str]) -> Output {
    binary().args(args).output().expect("the binary runs")
}

fn run_with_cache(args: &[&str], cache: &Path) -> Output {
    binary()
        .args(args)
        .env("CHERN_COUNT_CACHE", cache.as_os_str())
        .output()
        .expect("the binary runs")
}

fn stdout(out: &Output) -> &str {
    std::str::from_utf8(&out.stdout).expect("stdout is UTF-8")
}

fn stderr(out: &Output) -> &str {
    std::str::from_utf8(&out.stderr).expect("stderr is UTF-8")
}

#[test]
fn formula_prints_the_exact_polynomial() {
    let out = run(&["formula", "--sing", "D5"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "84 c1^2 + 132 c1 x1 + 44 x1^2 + 20 x2\n");
}

#[test]
fn formula_latex_subscripts_the_classes() {
    let out = run(&["formula", "--sing", "D5", "--format", "latex"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "84 c_1^2 + 132 c_1 x_1 + 44 x_1^2 + 20 x_2\n");
}

#[test]
fn formula_json_carries_every_term() {
    let out = run(&["formula", "--sing", "D5", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out)).expect("stdout is JSON");
    assert_eq!(v["target"], "D5");
    let terms = v["terms"].as_array().expect("terms array");
    assert_eq!(terms.len(), 4);
    // (exponents of c1, x1, x2) -> coefficient, in display order.
    let triples: Vec<(u64, u64, u64, &str)> = terms
        .iter()
        .map(|t| {
            (
                t["c1"].as_u64().unwrap(),
                t["x1"].as_u64().unwrap(),
                t["x2"].as_u64().unwrap(),
                t["coeff"].as_str().unwrap(),
            )
        })
        .collect();
    assert_eq!(
        triples,
        [(2, 0, 0, "84"), (1, 1, 0, "132"), (0, 2, 0, "44"), (0, 0, 1, "20")]
    );
}

#[test]
fn eval_reproduces_the_classical_cubic_counts() {
    let out = run(&["eval", "--sing", "A1", "--surface", "p2", "--degree", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("count: 12\n"), "unexpected output: {text}");
    assert!(text.contains("points: 8\n"), "unexpected output: {text}");

    let out = run(&["eval", "--sing", "A2", "--surface", "p2", "--degree", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("count: 24\n"));
}

#[test]
fn eval_json_is_machine_readable() {
    let out = run(&[
        "eval", "--sing", "A1D4", "--surface", "p1xp1", "--bidegree", "3,4", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out)).expect("stdout is JSON");
    assert_eq!(v["target"], "A1D4");
    assert_eq!(v["surface"]["name"], "p1xp1");
    assert_eq!(v["surface"]["a"], 3);
    assert_eq!(v["surface"]["b"], 4);
    assert_eq!(v["count"], "3408");
    assert_eq!(v["ampleness"]["satisfied"], false);
}

#[test]
fn table_lists_singles_before_pairs_in_fixed_order() {
    let out = run(&["table", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out)).expect("stdout is JSON");
    let targets: Vec<&str> =
        v["table"].as_array().unwrap().iter().map(|e| e["target"].as_str().unwrap()).collect();
    assert_eq!(
        targets,
        [
            "A1", "A2", "A3", "A4", "A5", "A6", "A7", "D4", "D5", "D6", "D7", "E6", "E7", "A1A1",
            "A1A2", "A1A3", "A1A4", "A1A5", "A1A6", "A1D4", "A1D5", "A1D6", "A1E6",
        ]
    );
}

#[test]
fn table_codimension_bound_filters_both_sections() {
    let out = run(&["table", "--max-codim", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("A3"));
    assert!(text.contains("A1A2"));
    assert!(!text.contains("A4"));
    assert!(!text.contains("A1A3"));

    let out = run(&["table", "--max-codim", "0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "(no targets within the codimension bound)\n");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["formula", "--sing", "X9"] as &[&str],
        &["formula", "--sing", "A3", "--surface", "p2"],
        &["eval", "--sing", "A1", "--surface", "p2"],
        &["eval", "--sing", "A1", "--surface", "p2", "--degree", "3", "--bidegree", "1,2"],
        &["eval", "--sing", "A1", "--surface", "p1xp1", "--bidegree", "3"],
        &["eval", "--sing", "A1", "--surface", "custom"],
        &["table", "--degree", "3"],
        &["nonsense"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "args {args:?} should be a usage error");
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &["formula", "--sing", "A1E6", "--format", "json"] as &[&str],
        &["eval", "--sing", "D7", "--surface", "p2", "--degree", "6"],
        &["table", "--surface", "p1xp1", "--bidegree", "2,3", "--max-codim", "4"],
    ] {
        let first = run(args);
        let second = run(args);
        assert!(first.status.success());
        assert_eq!(first.stdout, second.stdout, "args {args:?} must be deterministic");
    }
}

#[test]
fn cache_file_round_trips_and_preserves_output() {
    let dir = tempfile::tempdir().expect("temp dir");
    let cache = dir.path().join("memo.json");
    let args = &["eval", "--sing", "A1D4", "--surface", "p2", "--degree", "4"];

    let cold = run_with_cache(args, &cache);
    assert!(cold.status.success(), "stderr: {}", stderr(&cold));
    let v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&cache).expect("cache written")).expect("cache is JSON");
    let one = v["one_point"].as_array().expect("one_point section");
    let two = v["two_point"].as_array().expect("two_point section");
    assert!(!one.is_empty() && !two.is_empty());
    for entry in two {
        assert!(entry["extrapolated"].is_boolean());
        assert_eq!(entry["quad"].as_array().unwrap().len(), 4);
    }

    let warm = run_with_cache(args, &cache);
    assert!(warm.status.success());
    assert_eq!(cold.stdout, warm.stdout, "a warmed cache must not change the answer");

    // The no-cache output is the same bytes again.
    let plain = run(args);
    assert_eq!(plain.stdout, warm.stdout);
}

#[test]
fn corrupt_cache_is_an_error_not_a_guess() {
    let dir = tempfile::tempdir().expect("temp dir");
    let cache = dir.path().join("memo.json");
    fs::write(&cache, "{\"one_point\": [{\"tag\": \"Z9\"}]}").expect("write");
    let out = binary()
        .args(["eval", "--sing", "A1", "--surface", "p2", "--degree", "3", "--format", "json"])
        .env("CHERN_COUNT_CACHE", cache.as_os_str())
        .output()
        .expect("the binary runs");
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(stderr(&out)).expect("stderr is JSON");
    assert_eq!(v["error"]["kind"], "cache");
}

#[test]
fn selftest_ignores_the_cache_entirely() {
    let dir = tempfile::tempdir().expect("temp dir");
    let cache = dir.path().join("memo.json");
    fs::write(&cache, "this is not even JSON").expect("write");
    let out = binary()
        .args(["selftest"])
        .env("CHERN_COUNT_CACHE", cache.as_os_str())
        .output()
        .expect("the binary runs");
    // Garbage in the cache neither crashes the self-test nor gets repaired.
    assert!(stdout(&out).contains("one-point-formula-table ... PASS"));
    assert_eq!(fs::read_to_string(&cache).expect("still there"), "this is not even JSON");
}

#[test]
fn selftest_reports_every_check_and_exits_by_outcome() {
    let out = run(&["selftest"]);
    let text = stdout(&out);
    let checks: Vec<&str> = text.lines().filter(|l| l.contains(" ... ")).collect();
    assert_eq!(checks.len(), 7, "unexpected output: {text}");
    let failures = checks.iter().filter(|l| l.contains("FAIL")).count();
    let summary = format!("self-test: {} of 7 checks passed", 7 - failures);
    assert!(text.contains(&summary), "unexpected output: {text}");
    if failures == 0 {
        assert_eq!(out.status.code(), Some(0));
    } else {
        assert_eq!(out.status.code(), Some(1));
    }
}

#[test]
fn custom_surface_file_is_validated() {
    let dir = tempfile::tempdir().expect("temp dir");

    let good = dir.path().join("k3.json");
    fs::write(
        &good,
        "{\"name\": \"quartic-k3\", \"geometry\": {\"c1_sq\": 4, \"c1_x1\": 0, \"x1_sq\": 0, \"x2\": 24}}",
    )
    .expect("write");
    let out = run(&[
        "eval", "--sing", "A2", "--surface", "custom", "--geometry-file",
        good.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("count: 96\n"), "unexpected output: {text}");
    assert!(text.contains("unknown for custom geometry"), "unexpected output: {text}");

    // A preset name with geometry that contradicts the preset is refused.
    let stale = dir.path().join("stale.json");
    fs::write(
        &stale,
        "{\"name\": \"p2\", \"params\": {\"degree\": 3}, \
         \"geometry\": {\"c1_sq\": 9, \"c1_x1\": -9, \"x1_sq\": 9, \"x2\": 4}}",
    )
    .expect("write");
    let out = run(&[
        "eval", "--sing", "A1", "--surface", "custom", "--geometry-file",
        stale.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("does not match"), "stderr: {}", stderr(&out));

    // Non-integer Chern numbers are refused.
    let fractional = dir.path().join("frac.json");
    fs::write(
        &fractional,
        "{\"name\": \"odd\", \"geometry\": {\"c1_sq\": 4.5, \"c1_x1\": 0, \"x1_sq\": 0, \"x2\": 24}}",
    )
    .expect("write");
    let out = run(&[
        "eval", "--sing", "A1", "--surface", "custom", "--geometry-file",
        fractional.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("must be an integer"), "stderr: {}", stderr(&out));
}
