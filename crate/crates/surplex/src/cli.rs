//! Command-line interface. Six subcommands cover the pipeline from
//! raw datasets to fitted reports:
//!
//! * `ingest` joins a pronouncing dictionary, frequency table, and
//!   norm tables into a lexicon TSV, annotated with bigram surprisal.
//! * `surprisal` re-annotates an existing lexicon under different
//!   counting options and can dump the bigram model itself.
//! * `fit` runs one ordinary-least-squares model over lexicon columns.
//! * `suite` runs the built-in model suites and optionally checks an
//!   expectation file, exiting 1 when expectations fail.
//! * `report` re-renders a saved JSON report as text, CSV, or JSON.
//! * `validate-config` checks a run configuration without running it.
//!
//! Exit codes: 0 success, 1 expectation failures, 2 usage, config, or
//! data errors. Diagnostics go to stderr; data goes to files or stdout.
//! Every file-writing subcommand also writes a manifest with SHA-256
//! digests of its inputs and outputs.

use std::fs::{self, File};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use crate::config::RunConfig;
use crate::ingest::{self, Field, LexiconRow};
use crate::manifest::{self, Manifest};
use crate::phonemes::PhonemeInventory;
use crate::pipeline;
use crate::regress::{fit_model, FitResult, ModelSpec};
use crate::render::{self, OutputFormat};
use crate::suites::{self, RunReport};
use crate::surprisal::{self, Smoothing, SurprisalOptions, Weighting};

const EXIT_OK: i32 = 0;
const EXIT_EXPECTATION_FAILURES: i32 = 1;
const EXIT_ERROR: i32 = 2;

#[derive(Parser)]
#[command(
    name = "surplex",
    version,
    about = "Build phonemic-surprisal lexicons and fit rating models over them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Join dictionary, frequencies, and norms into a surprisal-annotated lexicon
    Ingest(IngestArgs),
    /// Re-annotate an existing lexicon's average surprisal column
    Surprisal(SurprisalArgs),
    /// Fit one least-squares model on lexicon columns
    Fit(FitArgs),
    /// Run the built-in model suites, optionally checking expectations
    Suite(SuiteArgs),
    /// Re-render a saved JSON report as text, CSV, or JSON
    Report(ReportArgs),
    /// Check a run configuration without running it
    ValidateConfig(ValidateConfigArgs),
}

#[derive(Args)]
struct IngestArgs {
    /// TOML run configuration describing the input datasets
    #[arg(long, value_name = "FILE")]
    config: PathBuf,
    /// Lexicon TSV to write; a <OUT>.manifest.json sibling records digests
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
}

#[derive(Args)]
struct SurprisalArgs {
    /// Lexicon TSV to re-annotate, as produced by ingest
    #[arg(long, value_name = "FILE")]
    lexicon: PathBuf,
    /// Bigram count weighting: token (frequency-weighted) or type
    #[arg(long, default_value_t = Weighting::Token)]
    weighting: Weighting,
    /// Pad each pronunciation with a word-boundary symbol
    #[arg(long)]
    boundaries: bool,
    /// Probability smoothing: none or add-one
    #[arg(long, default_value_t = Smoothing::None)]
    smoothing: Smoothing,
    /// Score each word against a model excluding the word's own counts
    #[arg(long)]
    leave_one_out: bool,
    /// Phoneme inventory file, one symbol per line; built-in English set when absent
    #[arg(long, value_name = "FILE")]
    inventory: Option<PathBuf>,
    /// Re-annotated lexicon TSV to write
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
    /// Also dump the bigram model as CSV (context, next, counts, surprisal)
    #[arg(long, value_name = "FILE")]
    model_out: Option<PathBuf>,
}

#[derive(Args)]
struct FitArgs {
    /// Lexicon TSV to read
    #[arg(long, value_name = "FILE")]
    lexicon: PathBuf,
    /// Dependent variable, a numeric lexicon column such as Humor
    #[arg(long, value_name = "FIELD")]
    dependent: String,
    /// Comma-separated predictor columns
    #[arg(long, value_name = "FIELDS", value_delimiter = ',', required = true)]
    predictors: Vec<String>,
    /// Fields to treat as categories. PoS is the only categorical field
    /// and is dummy-coded whether or not it is listed; the flag exists
    /// so model commands read as complete formulas, and it rejects
    /// fields that cannot be treated as categories.
    #[arg(long, value_name = "FIELDS", value_delimiter = ',')]
    categorical: Vec<String>,
    /// Fit without an intercept column
    #[arg(long)]
    no_intercept: bool,
    /// Phoneme inventory file; built-in English set when absent
    #[arg(long, value_name = "FILE")]
    inventory: Option<PathBuf>,
    /// Encoding for --out: text, csv, or json
    #[arg(long, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Fitted model file to write; a manifest sibling records digests
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
}

#[derive(Args)]
struct SuiteArgs {
    /// Lexicon TSV to read
    #[arg(long, value_name = "FILE")]
    lexicon: PathBuf,
    /// Suite to run: all, valence, emotions, humor, memory-valence,
    /// memory-emotions, or memory-humor
    #[arg(long, default_value = "all")]
    suite: String,
    /// Expectation file to check: lines of "suite model term sign tier"
    #[arg(long, value_name = "FILE")]
    expect: Option<PathBuf>,
    /// Phoneme inventory file; built-in English set when absent
    #[arg(long, value_name = "FILE")]
    inventory: Option<PathBuf>,
    /// Directory for report files, created if missing
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
}

#[derive(Args)]
struct ReportArgs {
    /// A saved report: a suite run (report.json) or a single fitted model
    #[arg(long, value_name = "FILE")]
    input: PathBuf,
    /// Output encoding: text, csv, or json
    #[arg(long, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Write here instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateConfigArgs {
    /// TOML run configuration to check
    #[arg(long, value_name = "FILE")]
    config: PathBuf,
}

/// Parse arguments, run the selected subcommand, and return the exit
/// code. Kept out of `main` so the binary stays a one-liner.
pub fn main_entry() -> i32 {
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .format_target(false)
        .try_init();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests print to stdout and succeed;
            // actual usage errors print to stderr and exit 2.
            let _ = err.print();
            return if err.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };

    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            EXIT_ERROR
        }
    }
}

fn run(command: Command) -> Result<i32> {
    match command {
        Command::Ingest(args) => cmd_ingest(args),
        Command::Surprisal(args) => cmd_surprisal(args),
        Command::Fit(args) => cmd_fit(args),
        Command::Suite(args) => cmd_suite(args),
        Command::Report(args) => cmd_report(args),
        Command::ValidateConfig(args) => cmd_validate_config(args),
    }
}

fn write_lexicon_file(path: &Path, rows: &[LexiconRow]) -> Result<()> {
    let mut buf = Vec::new();
    ingest::write_lexicon(rows, &mut buf)?;
    manifest::write_atomic(path, &buf).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn load_lexicon(
    lexicon: &Path,
    inventory: Option<&Path>,
) -> Result<(Vec<LexiconRow>, PhonemeInventory)> {
    let inventory = pipeline::load_inventory(inventory)?;
    let rows = pipeline::read_lexicon_file(lexicon, &inventory)?;
    Ok((rows, inventory))
}

fn cmd_ingest(args: IngestArgs) -> Result<i32> {
    let config = RunConfig::load(&args.config)?;
    let problems = config.validate();
    if !problems.is_empty() {
        bail!(
            "invalid configuration {}:\n  {}",
            args.config.display(),
            problems.join("\n  ")
        );
    }

    let output = pipeline::build_lexicon(&config)?;
    write_lexicon_file(&args.out, &output.rows)?;

    // The manifest echoes the resolved configuration, so it records the
    // surprisal options (weighting above all) that produced the column.
    let mut m = Manifest::new("ingest", serde_json::to_value(&config)?);
    for (role, path) in config.input_paths() {
        m.add_input(&role, path)
            .with_context(|| format!("digesting {}", path.display()))?;
    }
    m.add_output("lexicon", &args.out)?;
    let manifest_path = manifest::sibling_manifest_path(&args.out);
    m.write(&manifest_path)
        .with_context(|| format!("writing {}", manifest_path.display()))?;

    print!(
        "{}",
        render::render_ingest_summary(&output.join_report, &output.annotation)
    );
    println!("wrote {}", args.out.display());
    Ok(EXIT_OK)
}

fn cmd_surprisal(args: SurprisalArgs) -> Result<i32> {
    let (mut rows, inventory) = load_lexicon(&args.lexicon, args.inventory.as_deref())?;
    let options = SurprisalOptions {
        weighting: args.weighting,
        boundaries: args.boundaries,
        smoothing: args.smoothing,
        leave_one_out: args.leave_one_out,
    };
    let (model, summary) = surprisal::annotate_lexicon(&mut rows, &inventory, &options)?;
    write_lexicon_file(&args.out, &rows)?;

    let mut m = Manifest::new(
        "surprisal",
        serde_json::json!({
            "weighting": args.weighting.to_string(),
            "boundaries": args.boundaries,
            "smoothing": args.smoothing.to_string(),
            "leave_one_out": args.leave_one_out,
        }),
    );
    m.add_input("lexicon", &args.lexicon)?;
    if let Some(path) = &args.inventory {
        m.add_input("inventory", path)?;
    }
    m.add_output("lexicon", &args.out)?;
    if let Some(path) = &args.model_out {
        let mut dump = Vec::new();
        model.dump(&mut dump)?;
        manifest::write_atomic(path, &dump)
            .with_context(|| format!("writing {}", path.display()))?;
        m.add_output("model", path)?;
    }
    m.write(&manifest::sibling_manifest_path(&args.out))?;

    println!(
        "annotated {} words ({} without bigrams); wrote {}",
        summary.words_annotated,
        summary.words_without_bigrams,
        args.out.display()
    );
    Ok(EXIT_OK)
}

fn parse_field_list(names: &[String]) -> Result<Vec<Field>> {
    names
        .iter()
        .map(|name| Field::parse(name).map_err(Into::into))
        .collect()
}

fn cmd_fit(args: FitArgs) -> Result<i32> {
    let dependent = Field::parse(&args.dependent)?;
    let predictors = parse_field_list(&args.predictors)?;
    for field in parse_field_list(&args.categorical)? {
        if !field.is_categorical() {
            let capable: Vec<&str> = Field::all()
                .into_iter()
                .filter(|f| f.is_categorical())
                .map(|f| f.name())
                .collect();
            bail!(
                "{} cannot be treated as a category; categorical fields: {}",
                field.name(),
                capable.join(", ")
            );
        }
        if !predictors.contains(&field) {
            bail!("categorical field {} is not among the predictors", field.name());
        }
    }

    let (rows, _) = load_lexicon(&args.lexicon, args.inventory.as_deref())?;
    let mut spec = ModelSpec::new(dependent, predictors);
    if args.no_intercept {
        spec.include_intercept = false;
    }
    let fit = fit_model(&rows, &spec)?;

    let rendered = match args.format {
        OutputFormat::Text => render::render_fit_text(&fit),
        OutputFormat::Csv => render::render_fit_csv(&fit),
        OutputFormat::Json => render::to_json_pretty(&fit),
    };
    manifest::write_atomic(&args.out, rendered.as_bytes())
        .with_context(|| format!("writing {}", args.out.display()))?;

    let mut m = Manifest::new(
        "fit",
        serde_json::json!({
            "formula": spec.formula(),
            "intercept": spec.include_intercept,
            "format": args.format.to_string(),
        }),
    );
    m.add_input("lexicon", &args.lexicon)?;
    if let Some(path) = &args.inventory {
        m.add_input("inventory", path)?;
    }
    m.add_output("fit", &args.out)?;
    m.write(&manifest::sibling_manifest_path(&args.out))?;

    print!("{}", render::render_fit_text(&fit));
    println!("wrote {}", args.out.display());
    Ok(EXIT_OK)
}

fn cmd_suite(args: SuiteArgs) -> Result<i32> {
    let (rows, _) = load_lexicon(&args.lexicon, args.inventory.as_deref())?;
    let run = suites::run_selected(&rows, &args.suite)?;

    fs::create_dir_all(&args.out)
        .with_context(|| format!("creating {}", args.out.display()))?;

    let mut m = Manifest::new(
        "suite",
        serde_json::json!({
            "suite": args.suite,
            "expectations": args.expect.is_some(),
        }),
    );
    m.add_input("lexicon", &args.lexicon)?;
    if let Some(path) = &args.inventory {
        m.add_input("inventory", path)?;
    }

    let write_report_file = |name: &str, bytes: &[u8], m: &mut Manifest| -> Result<()> {
        let path = args.out.join(name);
        manifest::write_atomic(&path, bytes)
            .with_context(|| format!("writing {}", path.display()))?;
        m.add_output(name, &path)?;
        Ok(())
    };

    // One CSV per fitted model, named <suite>_<model>.csv.
    for suite in &run.suites {
        let suites::SuiteOutcome::Ran { models } = &suite.outcome else {
            continue;
        };
        for model in models {
            let suites::ModelOutcome::Fitted { fit } = &model.outcome else {
                continue;
            };
            let name = format!("{}_{}.csv", suite.suite, model.model);
            write_report_file(&name, render::render_fit_csv(fit).as_bytes(), &mut m)?;
        }
    }

    let summary_text = render::render_run_text(&run);
    write_report_file("summary.txt", summary_text.as_bytes(), &mut m)?;
    write_report_file("report.json", render::to_json_pretty(&run).as_bytes(), &mut m)?;

    print!("{summary_text}");

    let mut exit = EXIT_OK;
    if let Some(expect_path) = &args.expect {
        let file = File::open(expect_path)
            .with_context(|| format!("opening {}", expect_path.display()))?;
        let expectations = suites::parse_expectations(file)
            .with_context(|| format!("parsing {}", expect_path.display()))?;
        let comparison = suites::compare_expectations(&run, &expectations)?;
        m.add_input("expectations", expect_path)?;

        let comparison_text = render::render_comparison_text(&comparison);
        write_report_file("comparison.txt", comparison_text.as_bytes(), &mut m)?;
        write_report_file(
            "comparison.json",
            render::to_json_pretty(&comparison).as_bytes(),
            &mut m,
        )?;
        print!("{comparison_text}");
        if !comparison.all_passed() {
            exit = EXIT_EXPECTATION_FAILURES;
        }
    }

    let manifest_path = args.out.join("manifest.json");
    m.write(&manifest_path)
        .with_context(|| format!("writing {}", manifest_path.display()))?;
    println!("wrote report files to {}", args.out.display());
    Ok(exit)
}

fn cmd_report(args: ReportArgs) -> Result<i32> {
    let text = fs::read_to_string(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", args.input.display()))?;

    // The two saved shapes are distinguished by their top-level key:
    // a suite run has "suites", a single fitted model has "terms".
    let rendered = if value.get("suites").is_some() {
        let run: RunReport = serde_json::from_str(&text)
            .with_context(|| format!("parsing {} as a suite run", args.input.display()))?;
        match args.format {
            OutputFormat::Text => render::render_run_text(&run),
            OutputFormat::Csv => render::render_run_csv(&run),
            OutputFormat::Json => render::to_json_pretty(&run),
        }
    } else if value.get("terms").is_some() {
        let fit: FitResult = serde_json::from_str(&text)
            .with_context(|| format!("parsing {} as a fitted model", args.input.display()))?;
        match args.format {
            OutputFormat::Text => render::render_fit_text(&fit),
            OutputFormat::Csv => render::render_fit_csv(&fit),
            OutputFormat::Json => render::to_json_pretty(&fit),
        }
    } else {
        bail!(
            "unrecognized report shape in {}: expected a suite run (top-level \"suites\") or a fitted model (top-level \"terms\")",
            args.input.display()
        );
    };

    match &args.out {
        Some(path) => {
            manifest::write_atomic(path, rendered.as_bytes())
                .with_context(|| format!("writing {}", path.display()))?;
            let mut m = Manifest::new(
                "report",
                serde_json::json!({ "format": args.format.to_string() }),
            );
            m.add_input("report", &args.input)?;
            m.add_output("rendered", path)?;
            m.write(&manifest::sibling_manifest_path(path))?;
            println!("wrote {}", path.display());
        }
        None => print!("{rendered}"),
    }
    Ok(EXIT_OK)
}

fn cmd_validate_config(args: ValidateConfigArgs) -> Result<i32> {
    let config = RunConfig::load(&args.config)?;
    let problems = config.validate();
    if !problems.is_empty() {
        for problem in &problems {
            eprintln!("problem: {problem}");
        }
        bail!(
            "{} problem(s) in {}",
            problems.len(),
            args.config.display()
        );
    }
    println!(
        "ok: {} (dictionary, frequency table, {} norm table(s))",
        args.config.display(),
        config.norms.len()
    );
    Ok(EXIT_OK)
}
