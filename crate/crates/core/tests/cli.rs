//! The klab binary: outputs, exit codes and determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn klab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_klab")).args(args).output().expect("klab runs")
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn alcove_length() {
    let o = klab(&["alcove", "length", "--type", "A1", "-p", "5", "--weight", "11"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "2");
}

#[test]
fn singular_weight_is_an_error() {
    let o = klab(&["alcove", "length", "--type", "A1", "-p", "5", "--weight", "4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn alcove_ideal_report() {
    let o = klab(&["alcove", "ideal", "--gen", "7", "--order", "cone", "-p", "5", "--report"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["stable"], true);
    assert_eq!(v["ideal"]["p"], 5);
}

#[test]
fn koszul_counterexample_for_cube_truncation() {
    let o = klab(&["check", "koszul", "--alg", &data("x3.json"), "--nmax", "5", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["holds"], false);
    assert_eq!((v["counterexample"]["n"].as_u64(), v["counterexample"]["r"].as_i64()), (Some(2), Some(3)));
}

#[test]
fn koszul_dual_numbers() {
    let o = klab(&["check", "koszul", "--alg", &data("x2.json"), "--nmax", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "koszul: true");
}

#[test]
fn linearity_needs_a_module() {
    let o = klab(&["check", "linear", "--alg", &data("x2.json")]);
    assert_eq!(o.status.code(), Some(2));
    let o = klab(&["check", "linear", "--alg", &data("x2.json"), "--mod", &data("k_x2.json"), "--nmax", "4"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn ext_of_dual_numbers_is_diagonal() {
    let k = data("k_x2.json");
    let o = klab(&["alg", "ext", "--alg", &data("x2.json"), "--m", &k, "--n", &k, "--nmax", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 4);
    assert!(entries.iter().all(|e| e["n"].as_i64() == e["r"].as_i64() && e["dim"] == 1));
}

#[test]
fn forced_against_radical_grading() {
    let o = klab(&["gr", "compare", &data("x2_5x.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["forced"], serde_json::json!([2]));
    assert_eq!(v["radical"], serde_json::json!([1, 1]));
}

#[test]
fn emitted_u_round_trips_through_alg() {
    let dir = std::env::temp_dir().join(format!("klab-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("u3.json").display().to_string();
    assert_eq!(klab(&["sl2", "u", "-p", "3", "--emit", &path]).status.code(), Some(0));
    let o = klab(&["alg", "blocks", &path]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim"], 27);
    assert_eq!(v["blocks"].as_array().unwrap().len(), 2);
    let integral = dir.join("u3z.json").display().to_string();
    assert_eq!(klab(&["sl2", "u", "-p", "3", "--integral", "--emit", &integral]).status.code(), Some(0));
    assert_eq!(klab(&["gr", "xcheck", &integral]).status.code(), Some(0));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn sl2_verify_subcommands() {
    let o = klab(&["sl2", "verify", "weyl-filtration", "-p", "5", "--max-weight", "30"]);
    assert_eq!(o.status.code(), Some(0));
    let o = klab(&["sl2", "verify", "evenodd", "-p", "3", "--nmax", "4"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn reports_do_not_depend_on_jobs() {
    let args = ["verify", "even-odd", "--params", r#"{"primes": [3], "nmax": 4}"#];
    let one = klab(&[&["--jobs", "1"][..], &args[..]].concat());
    let four = klab(&[&["--jobs", "4"][..], &args[..]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(klab(&args).stdout, one.stdout);
}

#[test]
fn recipe_files_run() {
    let dir = std::env::temp_dir().join(format!("klab-recipe-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let recipes = serde_json::json!([
        {"name": "weyl", "experiment": "weyl-filtration", "params": {"p": 3, "max_weight": 20}},
        {"name": "lengths", "experiment": "length-sweep", "params": {"types": ["A1"], "primes": [5]}},
    ]);
    std::fs::write(&path, recipes.to_string()).unwrap();
    let o = klab(&["recipe", "run", &path.display().to_string()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["all_as_expected"], true);
    assert_eq!(v["reports"].as_array().unwrap().len(), 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(klab(&["bogus"]).status.code(), Some(2));
    assert_eq!(klab(&["alcove", "length", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(klab(&["verify", "no-such-experiment"]).status.code(), Some(2));
}

#[test]
fn help_exits_zero() {
    let o = klab(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("recipe"));
}
