//! End-to-end tests of the `hankel` binary: formats, exit codes, caching
//! and report determinism.

use std::path::Path;
use std::process::{Command, Output};

fn hankel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hankel"))
        .args(args)
        .env_remove("HANKEL_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn hankel_env(args: &[&str], key: &str, value: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hankel"))
        .args(args)
        .env_remove("HANKEL_CACHE_DIR")
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn seq_csv_prefix() {
    let out = hankel(&[
        "seq",
        "--name",
        "paperfolding",
        "--n",
        "15",
        "--format",
        "csv",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().map(str::trim).collect();
    assert_eq!(lines.len(), 15);
    assert_eq!(&lines[..3], &["1", "1", "0"]);
    assert_eq!(lines.join(""), "110110011100100");
}

#[test]
fn seq_empty_prefix() {
    let out = hankel(&["seq", "--name", "paperfolding", "--n", "0"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).is_empty());
}

#[test]
fn seq_json_and_negative_terms() {
    let out = hankel(&[
        "seq",
        "--name",
        "thue-morse-pm1",
        "--n",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(exit_code(&out), 0);
    let values: Vec<i64> = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(values, vec![1, -1, -1, 1]);
}

#[test]
fn seq_unknown_name_is_usage_error() {
    let out = hankel(&["seq", "--name", "nope", "--n", "3"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn families_below_minimum_is_usage_error() {
    let out = hankel(&["families", "--max-n", "5"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn families_verification_and_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let cache_s = cache.to_str().unwrap();
    let args = [
        "families",
        "--max-n",
        "30",
        "--verify-lemma1",
        "--verify-prop2",
        "--verify-star",
        "--format",
        "json",
        "--no-timings",
        "--cache-dir",
        cache_s,
    ];
    let first = hankel(&args);
    assert_eq!(
        exit_code(&first),
        0,
        "{}",
        String::from_utf8_lossy(&first.stderr)
    );
    let report: serde_json::Value = serde_json::from_str(stdout(&first).trim()).unwrap();
    assert_eq!(report["overall"], "pass");
    let lemma1 = &report["checks"][0];
    assert_eq!(lemma1["name"], "lemma1-exact");
    assert_eq!(lemma1["detail"][1]["identity"], 2);
    assert_eq!(lemma1["detail"][1]["sign_variant"], "statement");
    assert_eq!(lemma1["detail"][2]["sign_variant"], "plus-four-b-squared");
    assert!(report.get("timings_ms").is_none());

    // one cache file appears and a rerun is byte-identical
    let entries: Vec<_> = std::fs::read_dir(&cache).unwrap().collect();
    assert_eq!(entries.len(), 1);
    let second = hankel(&args);
    assert_eq!(exit_code(&second), 0);
    assert_eq!(stdout(&first), stdout(&second));
}

#[test]
fn corrupt_cache_recomputes_with_warning() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let cache_s = cache.to_str().unwrap();
    let good_path = dir.path().join("good.csv");
    let redo_path = dir.path().join("redo.csv");

    let first = hankel(&[
        "hankel-table",
        "--max-n",
        "12",
        "--cache-dir",
        cache_s,
        "--out",
        good_path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&first), 0);

    // clobber the cache file
    let cached = std::fs::read_dir(&cache)
        .unwrap()
        .next()
        .unwrap()
        .unwrap()
        .path();
    std::fs::write(&cached, "n,a,b\n1,2,3\n").unwrap();

    let second = hankel(&[
        "hankel-table",
        "--max-n",
        "12",
        "--cache-dir",
        cache_s,
        "--out",
        redo_path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&second), 0);
    assert!(String::from_utf8_lossy(&second.stderr).contains("corrupt cache"));
    assert_eq!(
        std::fs::read_to_string(&good_path).unwrap(),
        std::fs::read_to_string(&redo_path).unwrap()
    );
}

#[test]
fn cache_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = hankel_env(
        &["hankel-table", "--max-n", "10"],
        "HANKEL_CACHE_DIR",
        dir.path(),
    );
    assert_eq!(exit_code(&out), 0);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn table_csv_schema_and_values() {
    let out = hankel(&["hankel-table", "--max-n", "6"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,a,b,c,d,e,g,h,x,y"));
    assert_eq!(lines.next(), Some("1,1,0,-1,0,0,-1,1,1,0"));
    assert_eq!(text.lines().count(), 7);
}

#[test]
fn families_fail_exit_code_on_other_sequence() {
    let out = hankel(&[
        "families",
        "--name",
        "thue-morse-pm1",
        "--max-n",
        "12",
        "--verify-lemma1",
    ]);
    assert_eq!(exit_code(&out), 1);
    let report: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report["overall"], "fail");
}

#[test]
fn pade_first_order() {
    let out = hankel(&["pade", "--k", "1"]);
    assert_eq!(exit_code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(doc["h_num"], "-1");
    assert_eq!(doc["h_den"], "1");
    assert_eq!(doc["P"], serde_json::json!(["1"]));
    assert_eq!(doc["Q"], serde_json::json!(["1", "-1"]));
}

#[test]
fn pade_verification_passes() {
    for k in ["3", "11"] {
        let out = hankel(&["pade", "--k", k, "--verify"]);
        assert_eq!(exit_code(&out), 0, "k={k}");
        let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
        assert_eq!(doc["verification"]["contact_ok"], true);
        assert_eq!(doc["verification"]["leading_matches"], true);
    }
}

#[test]
fn exponent_records_and_bounds() {
    let out = hankel(&["exponent", "--b", "2", "--l", "1", "--m-max", "3"]);
    assert_eq!(
        exit_code(&out),
        0,
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(doc["fe"]["B"], "1 - x^4");
    assert_eq!(doc["records"].as_array().unwrap().len(), 3);
    assert_eq!(doc["records"][1]["sandwich"]["inside"], true);
    // l = 1 sits below the bound threshold, so no bound is emitted and a
    // note lands on stderr
    assert_eq!(doc["bounds"].as_array().unwrap().len(), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("no single-order bound"));
}

#[test]
fn exponent_merged_bound_value() {
    let out = hankel(&["exponent", "--b", "2", "--merged", "--L", "10"]);
    assert_eq!(exit_code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(doc["bounds"][0]["mu_bound"], "3884221/1712256");
    assert_eq!(doc["bounds"][0]["certification"], "theorem");
    assert_eq!(doc["bounds"][0]["L"], 10);
}

#[test]
fn exponent_ladder_is_decreasing() {
    let out = hankel(&["exponent", "--b", "2", "--ladder", "11:51:10"]);
    assert_eq!(exit_code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let bounds = doc["bounds"].as_array().unwrap();
    assert_eq!(bounds.len(), 5);
    assert_eq!(bounds[0]["mu_bound"], "23/3");
    let values: Vec<f64> = bounds
        .iter()
        .map(|b| b["mu_value"].as_f64().unwrap())
        .collect();
    assert!(values.windows(2).all(|w| w[1] < w[0]));
    assert!(values.iter().all(|&v| v > 4.0));
}

#[test]
fn exponent_without_work_is_usage_error() {
    let out = hankel(&["exponent", "--b", "2"]);
    assert_eq!(exit_code(&out), 2);
    let out = hankel(&["exponent", "--b", "1", "--l", "1"]);
    assert_eq!(exit_code(&out), 2);
}
