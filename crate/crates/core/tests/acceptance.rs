//! Acceptance suite: one line per criterion with its runtime budget. All
//! comparisons are exact; the only tolerance is the wall-clock limit.

mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use serde_json::{json, Value};

use koszul_lab::recipe::{ext_instances, run, ExperimentRecipe};

struct Criterion {
    id: usize,
    name: &'static str,
    limit: Duration,
    run: fn() -> (bool, String),
}

fn recipe(experiment: &str, params: Value) -> (bool, String) {
    let r = ExperimentRecipe { name: experiment.into(), experiment: experiment.into(), params, expect_pass: true };
    match run(&r) {
        Ok(rep) => (rep.pass, summarize(&rep.detail)),
        Err(e) => (false, format!("error: {e}")),
    }
}

/// Short description of a report: counts of its top-level arrays.
fn summarize(v: &Value) -> String {
    let Some(obj) = v.as_object() else { return String::new() };
    obj.iter()
        .filter_map(|(k, x)| x.as_array().map(|a| format!("{k}={}", a.len())))
        .collect::<Vec<_>>()
        .join(" ")
}

fn length_formula() -> (bool, String) {
    recipe("length-sweep", json!({"types": ["A1", "A2"], "primes": [5, 7], "bound_factor": 4}))
}

fn parity_congruence() -> (bool, String) {
    recipe("parity-sweep", json!({"types": ["A1", "A2"], "primes": [5, 7], "bound_factor": 4, "height": 3}))
}

fn ideal_stability() -> (bool, String) {
    recipe("ideal-stability", json!({"types": ["A1", "A2"], "primes": [5, 7], "count": 200, "seed": 7}))
}

fn forced_conservation() -> (bool, String) {
    recipe("forced-conservation", json!({}))
}

fn x_compatibility() -> (bool, String) {
    recipe("x-compatibility", json!({"primes": [3, 5]}))
}

fn even_odd() -> (bool, String) {
    recipe("even-odd", json!({"primes": [3, 5], "nmax": 6}))
}

fn graded_parity() -> (bool, String) {
    recipe("graded-parity", json!({"primes": [3, 5], "nmax": 5}))
}

fn weyl_filtration() -> (bool, String) {
    recipe("weyl-filtration", json!({"p": 5, "max_weight": 30}))
}

fn schur_koszul() -> (bool, String) {
    recipe("schur-koszul", json!({"instances": [[4, 2], [6, 2], [5, 3]], "nmax": 4}))
}

fn prop41_pipeline() -> (bool, String) {
    recipe("prop41-pipeline", json!({"instances": [[4, 2], [6, 2], [5, 3]], "nmax": 4}))
}

fn linear_colinear() -> (bool, String) {
    recipe("linear-colinear", json!({"instances": [[4, 2], [6, 2], [5, 3]], "nmax": 4}))
}

fn weight_recovery() -> (bool, String) {
    recipe("weight-recovery", json!({"primes": [3, 5], "lambda_factor": 2, "theta": 2}))
}

/// Graded row sums against the independent free-resolution oracle.
fn oracle_equivalence() -> (bool, String) {
    const N_MAX: usize = 3;
    let instances = match ext_instances(40) {
        Ok(i) => i,
        Err(e) => return (false, format!("error: {e}")),
    };
    let mut pairs = 0;
    let mut bad = Vec::new();
    for inst in &instances {
        for (a, m) in &inst.modules {
            for (b, n) in &inst.modules {
                let graded = koszul_lab::fdalg::resolution::ext_table(&inst.algebra, m, n, N_MAX).expect("ext table");
                let oracle = common::ungraded_ext_oracle(&inst.algebra, m, n, N_MAX);
                pairs += 1;
                for (k, &d) in oracle.iter().enumerate() {
                    if graded.total(k) != d {
                        bad.push(format!("{} {a}->{b} n={k}: {} vs {d}", inst.name, graded.total(k)));
                    }
                }
            }
        }
    }
    let detail = format!("instances={} pairs={pairs} mismatches={}", instances.len(), bad.len());
    (bad.is_empty(), if bad.is_empty() { detail } else { format!("{detail}; first: {}", bad[0]) })
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, name: "alcove length equals oracle", limit: Duration::from_secs(10), run: length_formula },
    Criterion { id: 2, name: "parity congruence", limit: Duration::from_secs(30), run: parity_congruence },
    Criterion { id: 3, name: "stable rational-cone ideals", limit: Duration::from_secs(10), run: ideal_stability },
    Criterion { id: 4, name: "forced-grading conservation", limit: Duration::from_secs(5), run: forced_conservation },
    Criterion { id: 5, name: "X-compatibility of u(sl2)", limit: Duration::from_secs(60), run: x_compatibility },
    Criterion { id: 6, name: "even-odd vanishing", limit: Duration::from_secs(300), run: even_odd },
    Criterion { id: 7, name: "graded parity of u(sl2) blocks", limit: Duration::from_secs(300), run: graded_parity },
    Criterion { id: 8, name: "Weyl modules have Delta^p filtrations", limit: Duration::from_secs(5), run: weyl_filtration },
    Criterion { id: 9, name: "Schur blocks are Koszul and standard Q-Koszul", limit: Duration::from_secs(600), run: schur_koszul },
    Criterion { id: 10, name: "truncations of standards are q-linear", limit: Duration::from_secs(600), run: prop41_pipeline },
    Criterion { id: 11, name: "linear against colinear ext is diagonal", limit: Duration::from_secs(600), run: linear_colinear },
    Criterion { id: 12, name: "weight recovery through Phi", limit: Duration::from_secs(60), run: weight_recovery },
    Criterion { id: 13, name: "ungraded ext matches free-resolution oracle", limit: Duration::from_secs(60), run: oracle_equivalence },
];

#[test]
fn acceptance_criteria() {
    let mut out = std::io::stdout().lock();
    let mut failed = Vec::new();
    for c in CRITERIA {
        let start = Instant::now();
        let (ok, detail) = (c.run)();
        let took = start.elapsed();
        let pass = ok && took <= c.limit;
        writeln!(
            out,
            "acceptance {:>2} {} {} ({:.2}s, limit {}s) {}",
            c.id,
            if pass { "PASS" } else { "FAIL" },
            c.name,
            took.as_secs_f64(),
            c.limit.as_secs(),
            detail
        )
        .unwrap();
        if !pass {
            failed.push(c.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
