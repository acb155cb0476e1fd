//! Run one built-in regression suite over the demo lexicon and check
//! the results against a sign/significance expectation file.
//!
//! Run with: cargo run --example suite_report

use std::fs::File;
use std::path::Path;

use surplex::config::RunConfig;
use surplex::pipeline::build_lexicon;
use surplex::render::{render_comparison_text, render_run_text};
use surplex::suites::{
    builtin_suites, compare_expectations, parse_expectations, run_selected, SuiteOutcome,
};

fn main() -> anyhow::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");

    println!("built-in suites:");
    for suite in builtin_suites() {
        println!("  {}: {} model(s)", suite.name, suite.models.len());
    }

    let config = RunConfig::load(&data.join("config.toml"))?;
    let built = build_lexicon(&config)?;
    println!("\nlexicon: {} rows", built.rows.len());

    // Run just the valence suite. `run_selected(rows, "all")` would
    // run every suite instead.
    let run = run_selected(&built.rows, "valence")?;
    print!("\n{}", render_run_text(&run));

    // Expectation files pin sign and minimum significance per term.
    // Rows for suites absent from the run are reported as skipped, so
    // trim the file to the suite we ran.
    let file = File::open(data.join("patterns.expect"))?;
    let mut expectations = parse_expectations(file)?;
    expectations.retain(|e| e.suite == "valence");
    println!(
        "checking {} expectations for the valence suite",
        expectations.len()
    );
    let comparison = compare_expectations(&run, &expectations)?;
    print!("\n{}", render_comparison_text(&comparison));

    // Individual model results stay available for programmatic use.
    let suite = &run.suites[0];
    if let SuiteOutcome::Ran { models } = &suite.outcome {
        let first = &models[0];
        println!("\nfirst model of {}: {}", suite.suite, first.formula);
    }

    Ok(())
}
