//! Rendering fitted models, suite runs, and expectation comparisons
//! as fixed-precision text tables or full-precision CSV. Text output
//! rounds to three decimals for reading; CSV and JSON keep the exact
//! binary values, so only they are suitable for downstream parsing.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::ingest::JoinReport;
use crate::regress::FitResult;
use crate::suites::{
    ComparisonReport, ExpectationStatus, ModelOutcome, RunReport, SuiteOutcome,
};
use crate::surprisal::AnnotationSummary;

/// Output encodings selectable with `--format`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OutputFormat::Text => write!(f, "text"),
            OutputFormat::Csv => write!(f, "csv"),
            OutputFormat::Json => write!(f, "json"),
        }
    }
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<OutputFormat, String> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format {other:?}; expected text, csv, or json")),
        }
    }
}

/// Serialize as pretty JSON with a trailing newline.
pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report types serialize");
    text.push('\n');
    text
}

const FIT_HEADERS: [&str; 6] = ["term", "estimate", "std_error", "t_value", "p_value", "stars"];

fn fit_cells(fit: &FitResult) -> Vec<[String; 6]> {
    fit.terms
        .iter()
        .map(|t| {
            [
                t.term.clone(),
                format!("{:.3}", t.estimate),
                format!("{:.3}", t.std_error),
                format!("{:.3}", t.t_value),
                format!("{:.3}", t.p_value),
                t.stars.clone(),
            ]
        })
        .collect()
}

/// A fitted model as an aligned text table with a diagnostics footer.
/// Values are rounded to three decimals.
pub fn render_fit_text(fit: &FitResult) -> String {
    let rows = fit_cells(fit);
    let mut widths: Vec<usize> = FIT_HEADERS.iter().map(|h| h.len()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row.iter()) {
            *w = (*w).max(cell.len());
        }
    }

    let mut out = String::new();
    let render_row = |out: &mut String, cells: &[String]| {
        for (i, (cell, width)) in cells.iter().zip(&widths).enumerate() {
            if i > 0 {
                out.push_str("  ");
            }
            // Left-align the term and stars columns, right-align numbers.
            if i == 0 || i == 5 {
                out.push_str(&format!("{cell:<width$}"));
            } else {
                out.push_str(&format!("{cell:>width$}"));
            }
        }
        while out.ends_with(' ') {
            out.pop();
        }
        out.push('\n');
    };

    let headers: Vec<String> = FIT_HEADERS.iter().map(|h| h.to_string()).collect();
    render_row(&mut out, &headers);
    for row in &rows {
        render_row(&mut out, row);
    }

    out.push_str(&format!(
        "n_used: {}  dropped_missing: {}  residual_df: {}  residual_variance: {:.3}  r_squared: {:.3}\n",
        fit.n_used, fit.n_dropped_missing, fit.residual_df, fit.residual_variance, fit.r_squared
    ));
    if !fit.dropped_columns.is_empty() {
        let dropped: Vec<String> = fit
            .dropped_columns
            .iter()
            .map(|d| format!("{} ({})", d.name, d.reason))
            .collect();
        out.push_str(&format!("dropped columns: {}\n", dropped.join(", ")));
    }
    out
}

/// A fitted model as CSV with full round-trip float precision.
pub fn render_fit_csv(fit: &FitResult) -> String {
    let mut out = String::from("term,estimate,std_error,t_value,p_value,stars\n");
    for t in &fit.terms {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            t.term, t.estimate, t.std_error, t.t_value, t.p_value, t.stars
        ));
    }
    out
}

/// A whole suite run flattened to one CSV row per fitted term, with
/// full float precision. Failed models and skipped suites have no
/// numbers to report and are omitted; the JSON report keeps them.
pub fn render_run_csv(run: &RunReport) -> String {
    let mut out = String::from("suite,model,term,estimate,std_error,t_value,p_value,stars\n");
    for suite in &run.suites {
        let SuiteOutcome::Ran { models } = &suite.outcome else {
            continue;
        };
        for model in models {
            let ModelOutcome::Fitted { fit } = &model.outcome else {
                continue;
            };
            for t in &fit.terms {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    suite.suite, model.model, t.term, t.estimate, t.std_error, t.t_value,
                    t.p_value, t.stars
                ));
            }
        }
    }
    out
}

/// A whole suite run as readable text: per-suite sections, per-model
/// tables or failure notices, and a final tally.
pub fn render_run_text(run: &RunReport) -> String {
    let mut out = String::new();
    let mut fitted = 0usize;
    let mut failed = 0usize;
    let mut skipped = 0usize;

    for suite in &run.suites {
        match &suite.outcome {
            SuiteOutcome::SkippedMissingFields { fields } => {
                skipped += 1;
                out.push_str(&format!(
                    "== suite {} == skipped: the lexicon has no values for {}\n\n",
                    suite.suite,
                    fields.join(", ")
                ));
            }
            SuiteOutcome::Ran { models } => {
                out.push_str(&format!("== suite {} ==\n\n", suite.suite));
                for model in models {
                    out.push_str(&format!("model {}: {}\n", model.model, model.formula));
                    match &model.outcome {
                        ModelOutcome::Fitted { fit } => {
                            fitted += 1;
                            out.push_str(&render_fit_text(fit));
                        }
                        ModelOutcome::Failed { error } => {
                            failed += 1;
                            out.push_str(&format!("failed: {error}\n"));
                        }
                    }
                    out.push('\n');
                }
            }
        }
    }

    out.push_str(&format!(
        "suites: {} run, {} skipped; models: {} fitted, {} failed\n",
        run.suites.len() - skipped,
        skipped,
        fitted,
        failed
    ));
    out
}

/// Expectation outcomes, one line each, with a tally and verdict.
pub fn render_comparison_text(report: &ComparisonReport) -> String {
    let mut out = String::from("expectation checks:\n");
    for outcome in &report.outcomes {
        let e = &outcome.expectation;
        let key = format!(
            "{}/{}/{} {} {}",
            e.suite,
            e.model,
            e.term,
            match e.sign {
                crate::suites::Sign::Positive => "+",
                crate::suites::Sign::Negative => "-",
            },
            match e.min_tier {
                crate::suites::Tier::P05 => "*",
                crate::suites::Tier::P01 => "**",
                crate::suites::Tier::P001 => "***",
            }
        );
        match &outcome.status {
            ExpectationStatus::Pass => out.push_str(&format!("PASS {key}\n")),
            ExpectationStatus::Fail { detail } => {
                out.push_str(&format!("FAIL {key}: {detail}\n"))
            }
            ExpectationStatus::SkippedSuiteAbsent => {
                out.push_str(&format!("SKIP {key}: suite did not run\n"))
            }
        }
    }
    out.push_str(&format!(
        "passed {}, failed {}, skipped {}\n",
        report.passes, report.failures, report.skips
    ));
    out.push_str(&format!(
        "verdict: {}\n",
        if report.all_passed() { "PASS" } else { "FAIL" }
    ));
    out
}

/// Human summary of an ingest run.
pub fn render_ingest_summary(join: &JoinReport, annotation: &AnnotationSummary) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "lexicon rows: {} (dictionary words: {}, frequency words: {})\n",
        join.rows, join.dictionary_words, join.frequency_words
    ));
    for (table, matched) in &join.norm_matches {
        out.push_str(&format!("norms {table}: matched {matched} rows\n"));
    }
    for (field, [min, max]) in &join.observed_ranges {
        out.push_str(&format!("range {field}: {min} .. {max}\n"));
    }
    out.push_str(&format!(
        "surprisal: {} words annotated, {} without bigrams\n",
        annotation.words_annotated, annotation.words_without_bigrams
    ));
    out
}
