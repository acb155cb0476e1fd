//! The whole pipeline as a library: validate a config, build the
//! surprisal-annotated lexicon, persist it with a checksum manifest,
//! run every suite, and verify the expected effect patterns.
//!
//! This mirrors what `surplex ingest` followed by `surplex suite`
//! does from the command line.
//!
//! Run with: cargo run --example end_to_end

use std::fs::File;
use std::path::Path;

use surplex::config::RunConfig;
use surplex::ingest::write_lexicon;
use surplex::manifest::{sibling_manifest_path, write_atomic, Manifest};
use surplex::pipeline::build_lexicon;
use surplex::render::{render_comparison_text, render_ingest_summary, render_run_csv};
use surplex::suites::{compare_expectations, parse_expectations, run_selected};

fn main() -> anyhow::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let out_dir = tempfile::tempdir()?;

    // 1. Load and sanity-check the run configuration.
    let config = RunConfig::load(&data.join("config.toml"))?;
    let problems = config.validate();
    anyhow::ensure!(problems.is_empty(), "config problems: {problems:?}");
    println!(
        "config: dictionary + frequency + {} norm tables",
        config.norms.len()
    );

    // 2. Ingest everything and annotate with bigram surprisal.
    let built = build_lexicon(&config)?;
    print!("{}", render_ingest_summary(&built.join_report, &built.annotation));

    // 3. Persist the lexicon plus a manifest recording input and
    //    output checksums and the options that produced it.
    let lexicon_path = out_dir.path().join("lexicon.tsv");
    let mut bytes = Vec::new();
    write_lexicon(&built.rows, &mut bytes)?;
    write_atomic(&lexicon_path, &bytes)?;

    let mut manifest = Manifest::new("example end_to_end", serde_json::to_value(&config)?);
    for (role, path) in config.input_paths() {
        manifest.add_input(&role, path)?;
    }
    manifest.add_output("lexicon", &lexicon_path)?;
    manifest.write(&sibling_manifest_path(&lexicon_path))?;
    println!("wrote {}", lexicon_path.display());

    // 4. Run all suites and flatten the term-level results to CSV.
    let run = run_selected(&built.rows, "all")?;
    let csv = render_run_csv(&run);
    write_atomic(&out_dir.path().join("terms.csv"), csv.as_bytes())?;
    println!("\nfitted terms ({} CSV rows):", csv.lines().count() - 1);
    for line in csv.lines().take(4) {
        println!("  {line}");
    }

    // 5. Compare every expectation in the demo pattern file.
    let expectations = parse_expectations(File::open(data.join("patterns.expect"))?)?;
    let comparison = compare_expectations(&run, &expectations)?;
    print!("\n{}", render_comparison_text(&comparison));
    anyhow::ensure!(comparison.all_passed(), "expectation failures");

    Ok(())
}
