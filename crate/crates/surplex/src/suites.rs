//! Built-in regression suites and expectation checking.
//!
//! A suite is a named battery of models over the annotated lexicon:
//! rating fields regressed on word-form predictors, or recall
//! accuracy regressed on one rating plus the word-form predictors.
//! Expectation files assert coefficient signs and significance tiers
//! for chosen terms, so a rebuilt dataset can be checked against the
//! endorsed pattern of effects without pinning fragile decimals.

use std::collections::BTreeSet;
use std::io::{BufRead, BufReader, Read};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ingest::{Emotion, Field, LexiconRow};
use crate::regress::{fit_model, simple_fit, FitResult, ModelSpec};

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite {name:?}; valid values: {}", valid.join(", "))]
    UnknownSuite { name: String, valid: Vec<String> },
    #[error("suite {suite} needs field(s) the lexicon never provides: {}", fields.join(", "))]
    MissingFields { suite: String, fields: Vec<String> },
    #[error("expectation file line {line}: {reason}")]
    ExpectationSyntax { line: usize, reason: String },
    #[error("expectation names unknown model {model:?} in suite {suite}; models: {}", available.join(", "))]
    UnknownModel {
        suite: String,
        model: String,
        available: Vec<String>,
    },
    #[error("expectation names unknown term {term:?} in {suite}/{model}; terms: {}", available.join(", "))]
    UnknownTerm {
        suite: String,
        model: String,
        term: String,
        available: Vec<String>,
    },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// How one suite model is estimated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelKind {
    /// Full multiple regression.
    Multiple(ModelSpec),
    /// Single-predictor regression via [`simple_fit`].
    Simple { dependent: Field, predictor: Field },
}

impl ModelKind {
    pub fn formula(&self) -> String {
        match self {
            ModelKind::Multiple(spec) => spec.formula(),
            ModelKind::Simple { dependent, predictor } => {
                format!("{} ~ {}", dependent.name(), predictor.name())
            }
        }
    }

    fn fields(&self) -> Vec<Field> {
        match self {
            ModelKind::Multiple(spec) => {
                let mut fields = vec![spec.dependent];
                fields.extend(spec.predictors.iter().copied());
                fields
            }
            ModelKind::Simple { dependent, predictor } => vec![*dependent, *predictor],
        }
    }
}

/// One named model of a suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteModel {
    /// Stable label used in reports and expectation files.
    pub label: String,
    pub kind: ModelKind,
}

/// A named battery of models.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteDefinition {
    pub name: String,
    pub models: Vec<SuiteModel>,
}

impl SuiteDefinition {
    /// Every field any model of this suite touches, sorted by name.
    pub fn required_fields(&self) -> Vec<Field> {
        let set: BTreeSet<Field> = self.models.iter().flat_map(|m| m.kind.fields()).collect();
        let mut fields: Vec<Field> = set.into_iter().collect();
        fields.sort_by_key(|f| f.name());
        fields
    }
}

/// The word-form predictors shared by every multiple regression.
fn word_form_predictors() -> Vec<Field> {
    vec![
        Field::AverageSurprisal,
        Field::IconicityRating,
        Field::PhonemeLength,
        Field::MorphemeLength,
        Field::Pos,
    ]
}

/// Emotion order used by the emotion suites: the five negative
/// associations first, then the five positive ones.
const SUITE_EMOTION_ORDER: [Emotion; 10] = [
    Emotion::Anger,
    Emotion::Disgust,
    Emotion::Fear,
    Emotion::Negative,
    Emotion::Sadness,
    Emotion::Anticipation,
    Emotion::Joy,
    Emotion::Positive,
    Emotion::Surprise,
    Emotion::Trust,
];

fn rating_model(dependent: Field) -> SuiteModel {
    SuiteModel {
        label: dependent.name().to_string(),
        kind: ModelKind::Multiple(ModelSpec::new(dependent, word_form_predictors())),
    }
}

fn memory_model(added: Field) -> SuiteModel {
    let mut predictors = vec![added];
    predictors.extend(word_form_predictors());
    SuiteModel {
        label: added.name().to_string(),
        kind: ModelKind::Multiple(ModelSpec::new(Field::RecallAccuracy, predictors)),
    }
}

/// All built-in suites, in run order. The `simple` suite runs only as
/// part of `all` and cannot be selected by name.
pub fn builtin_suites() -> Vec<SuiteDefinition> {
    let valence = SuiteDefinition {
        name: "valence".to_string(),
        models: vec![rating_model(Field::GValence), rating_model(Field::NrcValence)],
    };
    let emotions = SuiteDefinition {
        name: "emotions".to_string(),
        models: SUITE_EMOTION_ORDER
            .iter()
            .map(|e| rating_model(Field::Emotion(*e)))
            .collect(),
    };
    let humor = SuiteDefinition {
        name: "humor".to_string(),
        models: vec![rating_model(Field::Humor)],
    };
    let memory_valence = SuiteDefinition {
        name: "memory-valence".to_string(),
        models: vec![memory_model(Field::GValence), memory_model(Field::NrcValence)],
    };
    let memory_emotions = SuiteDefinition {
        name: "memory-emotions".to_string(),
        models: SUITE_EMOTION_ORDER
            .iter()
            .map(|e| memory_model(Field::Emotion(*e)))
            .collect(),
    };
    let memory_humor = SuiteDefinition {
        name: "memory-humor".to_string(),
        models: vec![memory_model(Field::Humor)],
    };
    let simple = SuiteDefinition {
        name: "simple".to_string(),
        models: vec![
            SuiteModel {
                label: "Humor~NRC_Valence".to_string(),
                kind: ModelKind::Simple {
                    dependent: Field::Humor,
                    predictor: Field::NrcValence,
                },
            },
            SuiteModel {
                label: "Humor~G_Valence".to_string(),
                kind: ModelKind::Simple {
                    dependent: Field::Humor,
                    predictor: Field::GValence,
                },
            },
        ],
    };
    vec![
        valence,
        emotions,
        humor,
        memory_valence,
        memory_emotions,
        memory_humor,
        simple,
    ]
}

/// Suite names selectable on the command line.
pub fn selectable_suite_names() -> Vec<String> {
    let mut names = vec!["all".to_string()];
    names.extend(
        builtin_suites()
            .into_iter()
            .filter(|s| s.name != "simple")
            .map(|s| s.name),
    );
    names
}

/// Resolve a `--suite` selector to the suites it runs.
pub fn suites_for_selector(selector: &str) -> Result<Vec<SuiteDefinition>, SuiteError> {
    let suites = builtin_suites();
    if selector == "all" {
        return Ok(suites);
    }
    suites
        .into_iter()
        .filter(|s| s.name != "simple")
        .find(|s| s.name == selector)
        .map(|s| vec![s])
        .ok_or_else(|| SuiteError::UnknownSuite {
            name: selector.to_string(),
            valid: selectable_suite_names(),
        })
}

/// Outcome of one model of a suite run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ModelOutcome {
    Fitted { fit: FitResult },
    Failed { error: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelReport {
    pub model: String,
    pub formula: String,
    #[serde(flatten)]
    pub outcome: ModelOutcome,
}

/// Outcome of one suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SuiteOutcome {
    Ran { models: Vec<ModelReport> },
    /// Under `--suite all`, a suite whose inputs the lexicon never
    /// provides is skipped rather than failing the whole run.
    SkippedMissingFields { fields: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    #[serde(flatten)]
    pub outcome: SuiteOutcome,
}

/// The full result of a `suite` invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub suites: Vec<SuiteReport>,
}

/// Fields of a suite with no value on any row at all.
fn absent_fields(rows: &[LexiconRow], suite: &SuiteDefinition) -> Vec<String> {
    suite
        .required_fields()
        .into_iter()
        .filter(|field| !rows.iter().any(|row| field.is_present(row)))
        .map(|field| field.name().to_string())
        .collect()
}

/// Run every model of one suite. Individual model failures are
/// captured per model; they never abort the remaining models.
pub fn run_suite(rows: &[LexiconRow], suite: &SuiteDefinition) -> SuiteReport {
    let models = suite
        .models
        .iter()
        .map(|model| {
            let result = match &model.kind {
                ModelKind::Multiple(spec) => fit_model(rows, spec),
                ModelKind::Simple { dependent, predictor } => {
                    simple_fit(rows, *dependent, *predictor)
                }
            };
            let outcome = match result {
                Ok(fit) => ModelOutcome::Fitted { fit },
                Err(err) => {
                    log::warn!("suite {}: model {} failed: {err}", suite.name, model.label);
                    ModelOutcome::Failed {
                        error: err.to_string(),
                    }
                }
            };
            ModelReport {
                model: model.label.clone(),
                formula: model.kind.formula(),
                outcome,
            }
        })
        .collect();
    SuiteReport {
        suite: suite.name.clone(),
        outcome: SuiteOutcome::Ran { models },
    }
}

/// Run the suites a selector names. Under `all`, suites whose
/// required fields are entirely absent are skipped and recorded as
/// such; a suite requested by name with absent fields is an error.
pub fn run_selected(rows: &[LexiconRow], selector: &str) -> Result<RunReport, SuiteError> {
    let suites = suites_for_selector(selector)?;
    let all = selector == "all";
    let mut reports = Vec::with_capacity(suites.len());
    for suite in &suites {
        let absent = absent_fields(rows, suite);
        if !absent.is_empty() {
            if all {
                log::warn!(
                    "skipping suite {}: no values anywhere for {}",
                    suite.name,
                    absent.join(", ")
                );
                reports.push(SuiteReport {
                    suite: suite.name.clone(),
                    outcome: SuiteOutcome::SkippedMissingFields { fields: absent },
                });
                continue;
            }
            return Err(SuiteError::MissingFields {
                suite: suite.name.clone(),
                fields: absent,
            });
        }
        reports.push(run_suite(rows, suite));
    }
    Ok(RunReport { suites: reports })
}

/// Expected coefficient sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    fn token(self) -> &'static str {
        match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        }
    }

    fn matches(self, estimate: f64) -> bool {
        match self {
            Sign::Positive => estimate > 0.0,
            Sign::Negative => estimate < 0.0,
        }
    }
}

/// Minimum significance tier an expected effect must reach. The
/// marginal `.` tier is deliberately not expressible: an expectation
/// asserts significance, and `p < 0.1` is not that.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tier {
    P05,
    P01,
    P001,
}

impl Tier {
    fn token(self) -> &'static str {
        match self {
            Tier::P05 => "*",
            Tier::P01 => "**",
            Tier::P001 => "***",
        }
    }

    fn threshold(self) -> f64 {
        match self {
            Tier::P05 => 0.05,
            Tier::P01 => 0.01,
            Tier::P001 => 0.001,
        }
    }
}

/// One line of an expectation file: suite, model, term, sign, tier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    pub suite: String,
    pub model: String,
    pub term: String,
    pub sign: Sign,
    pub min_tier: Tier,
}

/// Parse an expectation file: whitespace-separated
/// `suite model term sign tier` records, one per line, with `#`
/// comments and blank lines ignored.
pub fn parse_expectations(reader: impl Read) -> Result<Vec<Expectation>, SuiteError> {
    let mut expectations = Vec::new();
    for (index, line) in BufReader::new(reader).lines().enumerate() {
        let line_no = index + 1;
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.len() != 5 {
            return Err(SuiteError::ExpectationSyntax {
                line: line_no,
                reason: format!(
                    "expected 5 fields (suite model term sign tier), got {}",
                    fields.len()
                ),
            });
        }
        let sign = match fields[3] {
            "+" => Sign::Positive,
            "-" => Sign::Negative,
            other => {
                return Err(SuiteError::ExpectationSyntax {
                    line: line_no,
                    reason: format!("sign must be + or -, got {other:?}"),
                })
            }
        };
        let min_tier = match fields[4] {
            "*" => Tier::P05,
            "**" => Tier::P01,
            "***" => Tier::P001,
            other => {
                return Err(SuiteError::ExpectationSyntax {
                    line: line_no,
                    reason: format!("tier must be *, ** or ***, got {other:?}"),
                })
            }
        };
        expectations.push(Expectation {
            suite: fields[0].to_string(),
            model: fields[1].to_string(),
            term: fields[2].to_string(),
            sign,
            min_tier,
        });
    }
    Ok(expectations)
}

/// How one expectation fared against a run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ExpectationStatus {
    Pass,
    Fail { detail: String },
    /// The suite never ran (not selected, or skipped for missing
    /// fields); the expectation is neither confirmed nor violated.
    SkippedSuiteAbsent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectationOutcome {
    pub expectation: Expectation,
    #[serde(flatten)]
    pub status: ExpectationStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub outcomes: Vec<ExpectationOutcome>,
    pub passes: usize,
    pub failures: usize,
    pub skips: usize,
}

impl ComparisonReport {
    pub fn all_passed(&self) -> bool {
        self.failures == 0
    }
}

/// Check every expectation against a run report.
///
/// Expectations whose suite did not run are skips. Within a suite
/// that ran, naming a model or a term that could never exist is an
/// error in the expectation file; a term that was dropped from the
/// sample (aliased, constant) is a failure with that explanation.
pub fn compare_expectations(
    run: &RunReport,
    expectations: &[Expectation],
) -> Result<ComparisonReport, SuiteError> {
    let mut outcomes = Vec::with_capacity(expectations.len());
    let mut passes = 0usize;
    let mut failures = 0usize;
    let mut skips = 0usize;

    for expectation in expectations {
        let suite = run.suites.iter().find(|s| s.suite == expectation.suite);
        let models = match suite {
            Some(SuiteReport {
                outcome: SuiteOutcome::Ran { models },
                ..
            }) => models,
            _ => {
                skips += 1;
                outcomes.push(ExpectationOutcome {
                    expectation: expectation.clone(),
                    status: ExpectationStatus::SkippedSuiteAbsent,
                });
                continue;
            }
        };

        let model = models
            .iter()
            .find(|m| m.model == expectation.model)
            .ok_or_else(|| SuiteError::UnknownModel {
                suite: expectation.suite.clone(),
                model: expectation.model.clone(),
                available: models.iter().map(|m| m.model.clone()).collect(),
            })?;

        let status = match &model.outcome {
            ModelOutcome::Failed { error } => ExpectationStatus::Fail {
                detail: format!("model failed: {error}"),
            },
            ModelOutcome::Fitted { fit } => {
                match fit.terms.iter().find(|t| t.term == expectation.term) {
                    Some(term) => {
                        let sign_ok = expectation.sign.matches(term.estimate);
                        let tier_ok = term.p_value < expectation.min_tier.threshold();
                        if sign_ok && tier_ok {
                            ExpectationStatus::Pass
                        } else {
                            ExpectationStatus::Fail {
                                detail: format!(
                                    "expected sign {} at {} (p < {}); got estimate {:.4}, p = {:.4}{}",
                                    expectation.sign.token(),
                                    expectation.min_tier.token(),
                                    expectation.min_tier.threshold(),
                                    term.estimate,
                                    term.p_value,
                                    if term.stars.is_empty() {
                                        String::new()
                                    } else {
                                        format!(" ({})", term.stars)
                                    }
                                ),
                            }
                        }
                    }
                    None => {
                        if let Some(dropped) =
                            fit.dropped_columns.iter().find(|d| d.name == expectation.term)
                        {
                            ExpectationStatus::Fail {
                                detail: format!(
                                    "term was dropped from the model ({})",
                                    dropped.reason
                                ),
                            }
                        } else {
                            let mut available: Vec<String> =
                                fit.terms.iter().map(|t| t.term.clone()).collect();
                            available
                                .extend(fit.dropped_columns.iter().map(|d| d.name.clone()));
                            return Err(SuiteError::UnknownTerm {
                                suite: expectation.suite.clone(),
                                model: expectation.model.clone(),
                                term: expectation.term.clone(),
                                available,
                            });
                        }
                    }
                }
            }
        };
        match &status {
            ExpectationStatus::Pass => passes += 1,
            ExpectationStatus::Fail { .. } => failures += 1,
            ExpectationStatus::SkippedSuiteAbsent => skips += 1,
        }
        outcomes.push(ExpectationOutcome {
            expectation: expectation.clone(),
            status,
        });
    }

    Ok(ComparisonReport {
        outcomes,
        passes,
        failures,
        skips,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::LexiconRow;
    use crate::phonemes::{parse_transcription, PhonemeInventory};
    use std::io::Cursor;

    /// Deterministic synthetic lexicon with every field populated and
    /// planted, recoverable effects.
    fn synthetic_rows(n: usize) -> Vec<LexiconRow> {
        let inv = PhonemeInventory::default_english();
        let mut rows = Vec::with_capacity(n);
        let mut state = 0x2545F4914F6CDD1Du64;
        let mut next = move || {
            // xorshift64*: deterministic, no external RNG needed here.
            state ^= state >> 12;
            state ^= state << 25;
            state ^= state >> 27;
            (state.wrapping_mul(0x2545F4914F6CDD1D) >> 11) as f64 / (1u64 << 53) as f64
        };
        let pos_labels = ["Adjective", "Noun", "Verb"];
        for i in 0..n {
            let word = format!("w{i:03}");
            let seq = parse_transcription(&word, "K AE T", &inv).unwrap();
            let mut row = LexiconRow::new(&word, seq, (i as u64 % 50) + 1);
            let surprisal = 2.0 + 4.0 * next();
            let iconicity = 1.0 + 6.0 * next();
            row.average_surprisal = Some(surprisal);
            row.iconicity = Some(iconicity);
            // Periods 4 and 3 are coprime, so morpheme length and
            // part of speech stay linearly independent.
            row.morpheme_length = Some((i as u32 % 4) + 1);
            row.pos = Some(pos_labels[i % 3].to_string());
            row.humor = Some((1.0 + 0.5 * surprisal + 0.2 * iconicity + 0.3 * next()).min(5.0));
            row.nrc_valence = Some(3.0 - 0.4 * surprisal + next());
            row.g_valence = Some(3.0 - 0.3 * surprisal + next());
            row.recall_accuracy = Some(0.3 + 0.05 * surprisal + 0.1 * next());
            for (k, e) in Emotion::ALL.into_iter().enumerate() {
                row.set_emotion(e, Some(((i + k) % 2) as u8));
            }
            rows.push(row);
        }
        rows
    }

    #[test]
    fn builtin_suites_have_expected_shape() {
        let suites = builtin_suites();
        let names: Vec<&str> = suites.iter().map(|s| s.name.as_str()).collect();
        assert_eq!(
            names,
            vec![
                "valence",
                "emotions",
                "humor",
                "memory-valence",
                "memory-emotions",
                "memory-humor",
                "simple"
            ]
        );
        let model_counts: Vec<usize> = suites.iter().map(|s| s.models.len()).collect();
        assert_eq!(model_counts, vec![2, 10, 1, 2, 10, 1, 2]);
        assert_eq!(suites.iter().map(|s| s.models.len()).sum::<usize>(), 28);

        let valence = &suites[0];
        assert_eq!(valence.models[0].label, "G_Valence");
        assert_eq!(
            valence.models[0].kind.formula(),
            "G_Valence ~ Average_Surprisal + Iconicity_Rating + Phoneme_Length + Morpheme_Length + PoS"
        );
        let memory = &suites[3];
        assert_eq!(
            memory.models[1].kind.formula(),
            "Recall_Accuracy ~ NRC_Valence + Average_Surprisal + Iconicity_Rating + Phoneme_Length + Morpheme_Length + PoS"
        );
        let emotions = &suites[1];
        assert_eq!(emotions.models[0].label, "Anger");
        assert_eq!(emotions.models[5].label, "Anticipation");
        let simple = &suites[6];
        assert_eq!(simple.models[0].label, "Humor~NRC_Valence");
    }

    #[test]
    fn selector_resolution() {
        assert_eq!(suites_for_selector("all").unwrap().len(), 7);
        let one = suites_for_selector("memory-humor").unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].name, "memory-humor");
        // `simple` runs only under all.
        assert!(matches!(
            suites_for_selector("simple"),
            Err(SuiteError::UnknownSuite { .. })
        ));
        let err = suites_for_selector("nope").unwrap_err();
        assert!(err.to_string().contains("memory-valence"));
    }

    #[test]
    fn run_all_fits_every_model_on_complete_data() {
        let rows = synthetic_rows(60);
        let run = run_selected(&rows, "all").unwrap();
        assert_eq!(run.suites.len(), 7);
        for suite in &run.suites {
            let SuiteOutcome::Ran { models } = &suite.outcome else {
                panic!("suite {} skipped unexpectedly", suite.suite);
            };
            for model in models {
                assert!(
                    matches!(model.outcome, ModelOutcome::Fitted { .. }),
                    "{}/{} failed",
                    suite.suite,
                    model.model
                );
            }
        }
        // Spot-check term naming on the humor model.
        let humor = &run.suites[2];
        let SuiteOutcome::Ran { models } = &humor.outcome else { unreachable!() };
        let ModelOutcome::Fitted { fit } = &models[0].outcome else { unreachable!() };
        let terms: Vec<&str> = fit.terms.iter().map(|t| t.term.as_str()).collect();
        // Every pronunciation in the synthetic lexicon has three
        // phonemes, so Phoneme_Length is constant and gets dropped.
        assert_eq!(
            terms,
            vec![
                "(Intercept)",
                "Average_Surprisal",
                "Iconicity_Rating",
                "Morpheme_Length",
                "PoS_Noun",
                "PoS_Verb"
            ]
        );
        assert_eq!(fit.dropped_columns.len(), 1);
        assert_eq!(fit.dropped_columns[0].name, "Phoneme_Length");
    }

    #[test]
    fn all_skips_suites_with_absent_fields_but_named_selection_errors() {
        let mut rows = synthetic_rows(40);
        for row in &mut rows {
            row.recall_accuracy = None;
        }
        let run = run_selected(&rows, "all").unwrap();
        let by_name = |name: &str| run.suites.iter().find(|s| s.suite == name).unwrap();
        assert!(matches!(
            by_name("memory-humor").outcome,
            SuiteOutcome::SkippedMissingFields { .. }
        ));
        assert!(matches!(by_name("humor").outcome, SuiteOutcome::Ran { .. }));

        let err = run_selected(&rows, "memory-humor").unwrap_err();
        match err {
            SuiteError::MissingFields { suite, fields } => {
                assert_eq!(suite, "memory-humor");
                assert_eq!(fields, vec!["Recall_Accuracy".to_string()]);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn per_model_failures_do_not_abort_the_suite() {
        let mut rows = synthetic_rows(40);
        // Make G_Valence constant: that model degenerates, NRC's does not.
        for row in &mut rows {
            row.g_valence = Some(2.5);
        }
        let run = run_selected(&rows, "valence").unwrap();
        let SuiteOutcome::Ran { models } = &run.suites[0].outcome else { unreachable!() };
        assert!(matches!(&models[0].outcome, ModelOutcome::Failed { error } if error.contains("degenerate")));
        assert!(matches!(models[1].outcome, ModelOutcome::Fitted { .. }));
    }

    #[test]
    fn expectation_parsing_and_syntax_errors() {
        let text = "\
# comment line
valence G_Valence Average_Surprisal - *

humor Humor Iconicity_Rating + ***
";
        let expectations = parse_expectations(Cursor::new(text)).unwrap();
        assert_eq!(expectations.len(), 2);
        assert_eq!(expectations[0].suite, "valence");
        assert_eq!(expectations[0].sign, Sign::Negative);
        assert_eq!(expectations[0].min_tier, Tier::P05);
        assert_eq!(expectations[1].min_tier, Tier::P001);

        let err = parse_expectations(Cursor::new("valence G_Valence X -\n")).unwrap_err();
        assert!(matches!(err, SuiteError::ExpectationSyntax { line: 1, .. }));
        let err = parse_expectations(Cursor::new("\n\nvalence G_Valence X ? *\n")).unwrap_err();
        assert!(matches!(err, SuiteError::ExpectationSyntax { line: 3, .. }));
        let err = parse_expectations(Cursor::new("valence G_Valence X + .\n")).unwrap_err();
        match err {
            SuiteError::ExpectationSyntax { line: 1, reason } => {
                assert!(reason.contains("tier"), "{reason}");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn expectation_comparison_statuses() {
        let rows = synthetic_rows(80);
        let run = run_selected(&rows, "humor").unwrap();

        // The planted humor effect is strongly positive on surprisal.
        let pass = Expectation {
            suite: "humor".to_string(),
            model: "Humor".to_string(),
            term: "Average_Surprisal".to_string(),
            sign: Sign::Positive,
            min_tier: Tier::P001,
        };
        let wrong_sign = Expectation {
            sign: Sign::Negative,
            ..pass.clone()
        };
        let absent_suite = Expectation {
            suite: "valence".to_string(),
            model: "G_Valence".to_string(),
            ..pass.clone()
        };
        let report =
            compare_expectations(&run, &[pass.clone(), wrong_sign, absent_suite]).unwrap();
        assert_eq!(report.passes, 1);
        assert_eq!(report.failures, 1);
        assert_eq!(report.skips, 1);
        assert!(!report.all_passed());
        assert!(matches!(report.outcomes[0].status, ExpectationStatus::Pass));
        match &report.outcomes[1].status {
            ExpectationStatus::Fail { detail } => assert!(detail.contains("expected sign -")),
            other => panic!("unexpected status {other:?}"),
        }
        assert!(matches!(
            report.outcomes[2].status,
            ExpectationStatus::SkippedSuiteAbsent
        ));

        let unknown_model = Expectation {
            model: "Nope".to_string(),
            ..pass.clone()
        };
        assert!(matches!(
            compare_expectations(&run, &[unknown_model]),
            Err(SuiteError::UnknownModel { .. })
        ));

        let unknown_term = Expectation {
            term: "Bogus".to_string(),
            ..pass.clone()
        };
        assert!(matches!(
            compare_expectations(&run, &[unknown_term]),
            Err(SuiteError::UnknownTerm { .. })
        ));

        // A term dropped from the sample is a comparable failure, not
        // an expectation-file error.
        let dropped_term = Expectation {
            term: "Phoneme_Length".to_string(),
            ..pass
        };
        let report = compare_expectations(&run, &[dropped_term]).unwrap();
        match &report.outcomes[0].status {
            ExpectationStatus::Fail { detail } => assert!(detail.contains("dropped")),
            other => panic!("unexpected status {other:?}"),
        }
    }

    #[test]
    fn suite_reports_round_trip_through_json() {
        let rows = synthetic_rows(40);
        let run = run_selected(&rows, "valence").unwrap();
        let json = serde_json::to_string_pretty(&run).unwrap();
        let back: RunReport = serde_json::from_str(&json).unwrap();
        assert_eq!(run, back);
    }
}
