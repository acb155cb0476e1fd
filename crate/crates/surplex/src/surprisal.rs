//! Phonemic bigram surprisal: count adjacent phoneme pairs over a
//! lexicon, turn the counts into conditional probabilities, and
//! annotate each word with the average surprisal of its own bigrams.
//!
//! Surprisal of a bigram is `-log2 P(next | context)` in bits; a
//! word's average surprisal is the mean over its adjacent pairs,
//! summed left to right. Counts are exact integers, so two runs over
//! the same rows produce bit-identical models regardless of row order.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ingest::LexiconRow;
use crate::phonemes::{Phoneme, PhonemeInventory, PhonemeSequence};

#[derive(Debug, Error)]
pub enum SurprisalError {
    #[error("cannot build a bigram model from an empty lexicon")]
    EmptyLexicon,
    #[error("word {word:?} has no bigrams: single phoneme and word-boundary markers disabled")]
    NoBigrams { word: String },
    #[error(
        "zero probability for bigram {context} -> {next} while scoring {word:?}; \
         enable add-one smoothing or disable leave-one-out"
    )]
    ZeroProbability {
        word: String,
        context: String,
        next: String,
    },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// How much one word contributes to the counts: its corpus frequency
/// (token) or exactly one (type).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Weighting {
    #[default]
    Token,
    Type,
}

impl fmt::Display for Weighting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weighting::Token => write!(f, "token"),
            Weighting::Type => write!(f, "type"),
        }
    }
}

impl FromStr for Weighting {
    type Err = String;

    fn from_str(s: &str) -> Result<Weighting, String> {
        match s {
            "token" => Ok(Weighting::Token),
            "type" => Ok(Weighting::Type),
            other => Err(format!("unknown weighting {other:?}; expected token or type")),
        }
    }
}

/// Probability estimation from counts. Add-one smoothing reserves
/// mass for unseen pairs, which leave-one-out scoring and
/// out-of-corpus words need to stay finite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Smoothing {
    #[default]
    None,
    AddOne,
}

impl fmt::Display for Smoothing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Smoothing::None => write!(f, "none"),
            Smoothing::AddOne => write!(f, "add-one"),
        }
    }
}

impl FromStr for Smoothing {
    type Err = String;

    fn from_str(s: &str) -> Result<Smoothing, String> {
        match s {
            "none" => Ok(Smoothing::None),
            "add-one" => Ok(Smoothing::AddOne),
            other => Err(format!("unknown smoothing {other:?}; expected none or add-one")),
        }
    }
}

/// Everything that changes what the model counts or how it scores.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurprisalOptions {
    pub weighting: Weighting,
    /// Pad every word with a boundary marker on both sides, so edge
    /// phonemes get context and single-phoneme words have bigrams.
    pub boundaries: bool,
    pub smoothing: Smoothing,
    /// Score each word against counts with that word's own
    /// contribution removed.
    pub leave_one_out: bool,
}

impl Default for SurprisalOptions {
    fn default() -> SurprisalOptions {
        SurprisalOptions {
            weighting: Weighting::Token,
            boundaries: false,
            smoothing: Smoothing::None,
            leave_one_out: false,
        }
    }
}

/// The word's bigrams as the model sees them, boundary-padded when
/// configured.
fn effective_bigrams(seq: &PhonemeSequence, boundaries: bool) -> Vec<(Phoneme, Phoneme)> {
    if boundaries {
        let boundary = Phoneme::boundary();
        let mut symbols = Vec::with_capacity(seq.len() + 2);
        symbols.push(boundary.clone());
        symbols.extend(seq.phonemes().iter().cloned());
        symbols.push(boundary);
        symbols.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect()
    } else {
        seq.bigrams().map(|(a, b)| (a.clone(), b.clone())).collect()
    }
}

/// Exact bigram counts over a lexicon plus the scoring policy.
#[derive(Debug, Clone, PartialEq)]
pub struct BigramModel {
    options: SurprisalOptions,
    /// `pairs[context][next]` = weighted count of the adjacent pair.
    pairs: BTreeMap<Phoneme, BTreeMap<Phoneme, u64>>,
    /// `context_totals[context]` = sum of its pair counts.
    context_totals: BTreeMap<Phoneme, u64>,
    /// Alphabet size for add-one smoothing: the phoneme inventory
    /// plus the boundary marker when boundaries are on.
    vocabulary_size: u64,
}

/// Count bigrams over every row of the lexicon. The estimation corpus
/// is always the full set of rows passed in; exclusions happen at
/// scoring time (leave-one-out), never at counting time.
pub fn count_bigrams(
    rows: &[LexiconRow],
    inventory: &PhonemeInventory,
    options: &SurprisalOptions,
) -> Result<BigramModel, SurprisalError> {
    if rows.is_empty() {
        return Err(SurprisalError::EmptyLexicon);
    }
    let mut pairs: BTreeMap<Phoneme, BTreeMap<Phoneme, u64>> = BTreeMap::new();
    let mut context_totals: BTreeMap<Phoneme, u64> = BTreeMap::new();
    for row in rows {
        let weight = match options.weighting {
            Weighting::Token => row.frequency,
            Weighting::Type => 1,
        };
        if weight == 0 {
            continue;
        }
        for (context, next) in effective_bigrams(&row.pronunciation, options.boundaries) {
            *pairs.entry(context.clone()).or_default().entry(next).or_default() += weight;
            *context_totals.entry(context).or_default() += weight;
        }
    }
    Ok(BigramModel {
        options: *options,
        pairs,
        context_totals,
        vocabulary_size: inventory.len() as u64 + u64::from(options.boundaries),
    })
}

impl BigramModel {
    pub fn options(&self) -> &SurprisalOptions {
        &self.options
    }

    pub fn pair_count(&self, context: &Phoneme, next: &Phoneme) -> u64 {
        self.pairs
            .get(context)
            .and_then(|m| m.get(next))
            .copied()
            .unwrap_or(0)
    }

    pub fn context_total(&self, context: &Phoneme) -> u64 {
        self.context_totals.get(context).copied().unwrap_or(0)
    }

    /// Number of distinct contexts with at least one observation.
    pub fn context_count(&self) -> usize {
        self.pairs.len()
    }

    /// Number of distinct observed pairs.
    pub fn pair_type_count(&self) -> usize {
        self.pairs.values().map(BTreeMap::len).sum()
    }

    /// Total weighted bigram observations.
    pub fn observation_total(&self) -> u64 {
        self.context_totals.values().sum()
    }

    fn probability_from(&self, pair: u64, context: u64) -> f64 {
        match self.options.smoothing {
            Smoothing::None => {
                if context == 0 {
                    0.0
                } else {
                    pair as f64 / context as f64
                }
            }
            Smoothing::AddOne => {
                (pair + 1) as f64 / (context + self.vocabulary_size) as f64
            }
        }
    }

    /// `P(next | context)` under the model's smoothing policy.
    pub fn probability(&self, context: &Phoneme, next: &Phoneme) -> f64 {
        self.probability_from(self.pair_count(context, next), self.context_total(context))
    }

    fn surprisal_from(
        &self,
        word: &str,
        context: &Phoneme,
        next: &Phoneme,
        pair: u64,
        total: u64,
    ) -> Result<f64, SurprisalError> {
        let p = self.probability_from(pair, total);
        if p <= 0.0 {
            return Err(SurprisalError::ZeroProbability {
                word: word.to_string(),
                context: context.to_string(),
                next: next.to_string(),
            });
        }
        let bits = -p.log2();
        // -log2(1.0) is -0.0; a surprisal of zero is reported as +0.0.
        if bits == 0.0 {
            Ok(0.0)
        } else {
            Ok(bits)
        }
    }

    /// Surprisal of one bigram in bits.
    pub fn surprisal_bits(&self, context: &Phoneme, next: &Phoneme) -> Result<f64, SurprisalError> {
        self.surprisal_from(
            "",
            context,
            next,
            self.pair_count(context, next),
            self.context_total(context),
        )
    }

    /// Average surprisal of a word: per-bigram surprisals summed left
    /// to right, divided by the number of bigrams. `exclude_weight`
    /// removes that much of the word's own contribution from the
    /// counts first (0 scores against the full corpus).
    fn average_surprisal_with_exclusion(
        &self,
        seq: &PhonemeSequence,
        exclude_weight: u64,
    ) -> Result<f64, SurprisalError> {
        let bigrams = effective_bigrams(seq, self.options.boundaries);
        if bigrams.is_empty() {
            return Err(SurprisalError::NoBigrams {
                word: seq.source_word().to_string(),
            });
        }

        // The word's own per-pair and per-context multiplicities.
        let mut own_pairs: BTreeMap<(&Phoneme, &Phoneme), u64> = BTreeMap::new();
        let mut own_contexts: BTreeMap<&Phoneme, u64> = BTreeMap::new();
        if exclude_weight > 0 {
            for (context, next) in &bigrams {
                *own_pairs.entry((context, next)).or_default() += exclude_weight;
                *own_contexts.entry(context).or_default() += exclude_weight;
            }
        }

        let mut sum = 0.0;
        for (context, next) in &bigrams {
            let pair = self.pair_count(context, next)
                - own_pairs.get(&(context, next)).copied().unwrap_or(0);
            let total = self.context_total(context)
                - own_contexts.get(context).copied().unwrap_or(0);
            sum += self.surprisal_from(seq.source_word(), context, next, pair, total)?;
        }
        let mean = sum / bigrams.len() as f64;
        Ok(if mean == 0.0 { 0.0 } else { mean })
    }

    /// Average surprisal of a word against the full counts.
    pub fn word_average_surprisal(&self, seq: &PhonemeSequence) -> Result<f64, SurprisalError> {
        self.average_surprisal_with_exclusion(seq, 0)
    }

    /// Write the model as CSV: one row per observed pair, sorted by
    /// context then next symbol, with the count pair and the scored
    /// surprisal. Floats carry full round-trip precision.
    pub fn dump(&self, writer: &mut impl Write) -> Result<(), SurprisalError> {
        writeln!(writer, "context,next,pair_count,context_count,surprisal_bits")?;
        for (context, nexts) in &self.pairs {
            let total = self.context_total(context);
            for (next, &pair) in nexts {
                let bits = self
                    .surprisal_from("", context, next, pair, total)
                    .expect("observed pairs have positive probability");
                writeln!(writer, "{context},{next},{pair},{total},{bits}")?;
            }
        }
        Ok(())
    }
}

/// Per-run annotation statistics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotationSummary {
    pub words_annotated: usize,
    /// Words left unannotated because they have no bigrams
    /// (single-phoneme words with boundaries disabled).
    pub words_without_bigrams: usize,
}

/// Build the bigram model over `rows` and fill each row's average
/// surprisal from it. Words without bigrams keep a missing value and
/// are counted in the summary rather than failing the run.
pub fn annotate_lexicon(
    rows: &mut [LexiconRow],
    inventory: &PhonemeInventory,
    options: &SurprisalOptions,
) -> Result<(BigramModel, AnnotationSummary), SurprisalError> {
    let model = count_bigrams(rows, inventory, options)?;
    let mut annotated = 0usize;
    let mut without = 0usize;
    for row in rows.iter_mut() {
        let exclude_weight = if options.leave_one_out {
            match options.weighting {
                Weighting::Token => row.frequency,
                Weighting::Type => 1,
            }
        } else {
            0
        };
        match model.average_surprisal_with_exclusion(&row.pronunciation, exclude_weight) {
            Ok(bits) => {
                row.average_surprisal = Some(bits);
                annotated += 1;
            }
            Err(SurprisalError::NoBigrams { word }) => {
                log::warn!("word {word:?} has a single phoneme and no boundary markers; leaving its surprisal missing");
                row.average_surprisal = None;
                without += 1;
            }
            Err(other) => return Err(other),
        }
    }
    if without > 0 {
        log::warn!("{without} word(s) left without an average surprisal");
    }
    Ok((
        model,
        AnnotationSummary {
            words_annotated: annotated,
            words_without_bigrams: without,
        },
    ))
}
