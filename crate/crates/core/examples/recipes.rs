//! Runs a small recipe and prints its JSON report.

use koszul_lab::recipe::{run, ExperimentRecipe};
use serde_json::json;

fn main() -> koszul_lab::error::Result<()> {
    let r = ExperimentRecipe {
        name: "graded parity at p = 3".into(),
        experiment: "graded-parity".into(),
        params: json!({"primes": [3], "nmax": 5}),
        expect_pass: true,
    };
    println!("{}", serde_json::to_string_pretty(&run(&r)?)?);
    Ok(())
}
