//! Dataset ingestion: pronouncing dictionary, frequency corpus, and
//! norm tables, joined into one lexicon keyed by lowercased word.
//!
//! The dictionary and frequency table are inner-joined (a word needs
//! both a pronunciation and a frequency to exist at all); every norm
//! table is left-joined, so missing norms stay missing and are only
//! excluded per-model by listwise deletion at fit time.

use std::collections::BTreeMap;
use std::io::{BufRead, Read, Write};

use log::{debug, warn};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::phonemes::{parse_transcription, PhonemeError, PhonemeInventory, PhonemeSequence};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv parse error: {0}")]
    Csv(#[from] csv::Error),
    #[error("dictionary line {line}")]
    DictionaryLine {
        line: usize,
        #[source]
        source: PhonemeError,
    },
    #[error("dictionary line {line}: {reason}")]
    MalformedDictionaryLine { line: usize, reason: String },
    #[error("missing column {column:?}; available columns: {}", available.join(", "))]
    MissingColumn {
        column: String,
        available: Vec<String>,
    },
    #[error("line {line}, column {column:?}: {reason}")]
    RowValue {
        line: u64,
        column: String,
        reason: String,
    },
    #[error("line {line}: column index {index} out of range ({fields} fields)")]
    ColumnIndexOutOfRange { line: u64, index: usize, fields: usize },
    #[error("dictionary and frequency table share no words; check the configured paths and columns")]
    EmptyJoin,
    #[error("lexicon file line {line}: {reason}")]
    LexiconRow { line: u64, reason: String },
    #[error("lexicon file header mismatch: expected {expected:?}, found {found:?}")]
    LexiconHeader { expected: String, found: String },
    #[error("unknown field name {name:?}; valid fields: {}", valid.join(", "))]
    UnknownField { name: String, valid: Vec<String> },
}

/// The ten binary NRC emotion associations, in the fixed storage and
/// serialization order used throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Emotion {
    Anger,
    Anticipation,
    Disgust,
    Fear,
    Joy,
    Negative,
    Positive,
    Sadness,
    Surprise,
    Trust,
}

impl Emotion {
    pub const ALL: [Emotion; 10] = [
        Emotion::Anger,
        Emotion::Anticipation,
        Emotion::Disgust,
        Emotion::Fear,
        Emotion::Joy,
        Emotion::Negative,
        Emotion::Positive,
        Emotion::Sadness,
        Emotion::Surprise,
        Emotion::Trust,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Emotion::Anger => "Anger",
            Emotion::Anticipation => "Anticipation",
            Emotion::Disgust => "Disgust",
            Emotion::Fear => "Fear",
            Emotion::Joy => "Joy",
            Emotion::Negative => "Negative",
            Emotion::Positive => "Positive",
            Emotion::Sadness => "Sadness",
            Emotion::Surprise => "Surprise",
            Emotion::Trust => "Trust",
        }
    }

    pub fn from_name(name: &str) -> Option<Emotion> {
        Emotion::ALL.iter().copied().find(|e| e.name() == name)
    }

    /// Position in [`Emotion::ALL`], also the index into
    /// [`LexiconRow::emotions`].
    pub fn index(self) -> usize {
        Emotion::ALL.iter().position(|e| *e == self).unwrap()
    }
}

/// A lexicon column usable in regression models, named the way report
/// tables name it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Field {
    Frequency,
    PhonemeLength,
    MorphemeLength,
    Pos,
    AverageSurprisal,
    IconicityRating,
    Humor,
    NrcValence,
    GValence,
    RecallAccuracy,
    Emotion(Emotion),
}

impl Field {
    pub fn name(self) -> &'static str {
        match self {
            Field::Frequency => "Frequency",
            Field::PhonemeLength => "Phoneme_Length",
            Field::MorphemeLength => "Morpheme_Length",
            Field::Pos => "PoS",
            Field::AverageSurprisal => "Average_Surprisal",
            Field::IconicityRating => "Iconicity_Rating",
            Field::Humor => "Humor",
            Field::NrcValence => "NRC_Valence",
            Field::GValence => "G_Valence",
            Field::RecallAccuracy => "Recall_Accuracy",
            Field::Emotion(e) => e.name(),
        }
    }

    pub fn all() -> Vec<Field> {
        let mut fields = vec![
            Field::Frequency,
            Field::PhonemeLength,
            Field::MorphemeLength,
            Field::Pos,
            Field::AverageSurprisal,
            Field::IconicityRating,
            Field::Humor,
            Field::NrcValence,
            Field::GValence,
            Field::RecallAccuracy,
        ];
        fields.extend(Emotion::ALL.iter().copied().map(Field::Emotion));
        fields
    }

    pub fn from_name(name: &str) -> Option<Field> {
        Field::all().into_iter().find(|f| f.name() == name)
    }

    /// Like [`Field::from_name`] but with an error that lists the
    /// valid names, for use in CLI and config validation.
    pub fn parse(name: &str) -> Result<Field, IngestError> {
        Field::from_name(name).ok_or_else(|| IngestError::UnknownField {
            name: name.to_string(),
            valid: Field::all().iter().map(|f| f.name().to_string()).collect(),
        })
    }

    /// Categorical fields are dummy-coded rather than entered as
    /// numeric columns.
    pub fn is_categorical(self) -> bool {
        matches!(self, Field::Pos)
    }

    /// Numeric value of this field on a row, if present. `None` for
    /// categorical fields and for missing values.
    pub fn numeric_value(self, row: &LexiconRow) -> Option<f64> {
        match self {
            Field::Frequency => Some(row.frequency as f64),
            Field::PhonemeLength => Some(row.phoneme_length() as f64),
            Field::MorphemeLength => row.morpheme_length.map(f64::from),
            Field::Pos => None,
            Field::AverageSurprisal => row.average_surprisal,
            Field::IconicityRating => row.iconicity,
            Field::Humor => row.humor,
            Field::NrcValence => row.nrc_valence,
            Field::GValence => row.g_valence,
            Field::RecallAccuracy => row.recall_accuracy,
            Field::Emotion(e) => row.emotion(e).map(f64::from),
        }
    }

    /// Category label of this field on a row (categorical fields only).
    pub fn category_value(self, row: &LexiconRow) -> Option<&str> {
        match self {
            Field::Pos => row.pos.as_deref(),
            _ => None,
        }
    }

    /// Whether the row can contribute this field to a model.
    pub fn is_present(self, row: &LexiconRow) -> bool {
        if self.is_categorical() {
            self.category_value(row).is_some()
        } else {
            self.numeric_value(row).is_some()
        }
    }
}

/// One word of the joined lexicon. Every norm column is optional and
/// holds either a validated value or nothing; missingness is explicit,
/// never a sentinel number.
#[derive(Debug, Clone, PartialEq)]
pub struct LexiconRow {
    pub word: String,
    pub pronunciation: PhonemeSequence,
    pub frequency: u64,
    pub morpheme_length: Option<u32>,
    pub pos: Option<String>,
    pub average_surprisal: Option<f64>,
    pub iconicity: Option<f64>,
    pub humor: Option<f64>,
    pub nrc_valence: Option<f64>,
    pub g_valence: Option<f64>,
    pub recall_accuracy: Option<f64>,
    /// Binary associations in [`Emotion::ALL`] order.
    pub emotions: [Option<u8>; 10],
}

impl LexiconRow {
    pub fn new(word: &str, pronunciation: PhonemeSequence, frequency: u64) -> LexiconRow {
        LexiconRow {
            word: word.to_string(),
            pronunciation,
            frequency,
            morpheme_length: None,
            pos: None,
            average_surprisal: None,
            iconicity: None,
            humor: None,
            nrc_valence: None,
            g_valence: None,
            recall_accuracy: None,
            emotions: [None; 10],
        }
    }

    /// Number of phonemes in the pronunciation; always derived, never
    /// stored, so it cannot drift from the pronunciation itself.
    pub fn phoneme_length(&self) -> usize {
        self.pronunciation.len()
    }

    pub fn emotion(&self, e: Emotion) -> Option<u8> {
        self.emotions[e.index()]
    }

    pub fn set_emotion(&mut self, e: Emotion, value: Option<u8>) {
        self.emotions[e.index()] = value;
    }
}

/// One dictionary headword with its pronunciations in source order;
/// the first is canonical, later variants are kept for audit only.
#[derive(Debug, Clone, PartialEq)]
pub struct DictionaryEntry {
    pub word: String,
    pub variants: Vec<PhonemeSequence>,
}

impl DictionaryEntry {
    pub fn canonical(&self) -> &PhonemeSequence {
        &self.variants[0]
    }
}

/// One word-count pair from the frequency corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyRecord {
    pub word: String,
    pub count: u64,
}

/// A lexicon field a norm table can fill.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum NormTarget {
    MorphemeLength,
    Pos,
    Iconicity,
    Humor,
    NrcValence,
    GValence,
    RecallAccuracy,
    Emotion(Emotion),
}

impl NormTarget {
    pub fn name(self) -> &'static str {
        match self {
            NormTarget::MorphemeLength => Field::MorphemeLength.name(),
            NormTarget::Pos => Field::Pos.name(),
            NormTarget::Iconicity => Field::IconicityRating.name(),
            NormTarget::Humor => Field::Humor.name(),
            NormTarget::NrcValence => Field::NrcValence.name(),
            NormTarget::GValence => Field::GValence.name(),
            NormTarget::RecallAccuracy => Field::RecallAccuracy.name(),
            NormTarget::Emotion(e) => e.name(),
        }
    }

    pub fn from_name(name: &str) -> Option<NormTarget> {
        if let Some(e) = Emotion::from_name(name) {
            return Some(NormTarget::Emotion(e));
        }
        match name {
            "Morpheme_Length" => Some(NormTarget::MorphemeLength),
            "PoS" => Some(NormTarget::Pos),
            "Iconicity_Rating" => Some(NormTarget::Iconicity),
            "Humor" => Some(NormTarget::Humor),
            "NRC_Valence" => Some(NormTarget::NrcValence),
            "G_Valence" => Some(NormTarget::GValence),
            "Recall_Accuracy" => Some(NormTarget::RecallAccuracy),
            _ => None,
        }
    }
}

/// A validated norm value. The variant is fixed by the target, so an
/// out-of-range or mistyped cell can never reach a [`LexiconRow`].
#[derive(Debug, Clone, PartialEq)]
pub enum NormValue {
    Number(f64),
    Count(u32),
    Binary(u8),
    Label(String),
}

/// Missing-value markers accepted in input cells.
fn is_missing_cell(raw: &str) -> bool {
    let t = raw.trim();
    t.is_empty() || t == "NA"
}

/// Validate one cell for one target. `Ok(None)` means the cell is an
/// explicit missing marker; `Err` carries the reason for a rejected
/// value.
pub fn validate_norm_value(target: NormTarget, raw: &str) -> Result<Option<NormValue>, String> {
    let t = raw.trim();
    if is_missing_cell(t) {
        return Ok(None);
    }
    let value = match target {
        NormTarget::Emotion(_) => {
            let v: f64 = t
                .parse()
                .map_err(|_| format!("expected a binary 0/1 value, got {t:?}"))?;
            if v == 0.0 || v == 1.0 {
                NormValue::Binary(v as u8)
            } else {
                return Err(format!("emotion value must be exactly 0 or 1, got {t:?}"));
            }
        }
        NormTarget::Humor => {
            let v: f64 = t
                .parse()
                .map_err(|_| format!("expected a number, got {t:?}"))?;
            if !v.is_finite() || !(1.0..=5.0).contains(&v) {
                return Err(format!("humor mean must lie in [1, 5], got {t:?}"));
            }
            NormValue::Number(v)
        }
        NormTarget::MorphemeLength => {
            let v: u32 = t
                .parse()
                .map_err(|_| format!("expected a positive integer, got {t:?}"))?;
            if v == 0 {
                return Err("morpheme count must be at least 1".to_string());
            }
            NormValue::Count(v)
        }
        NormTarget::Pos => NormValue::Label(t.to_string()),
        NormTarget::Iconicity
        | NormTarget::NrcValence
        | NormTarget::GValence
        | NormTarget::RecallAccuracy => {
            let v: f64 = t
                .parse()
                .map_err(|_| format!("expected a number, got {t:?}"))?;
            if !v.is_finite() {
                return Err(format!("value must be finite, got {t:?}"));
            }
            NormValue::Number(v)
        }
    };
    Ok(Some(value))
}

/// One word's validated values from a single norm table.
#[derive(Debug, Clone, PartialEq)]
pub struct NormRecord {
    pub word: String,
    pub values: BTreeMap<NormTarget, NormValue>,
}

/// Column reference for headerless tables: by name when a header row
/// exists, by zero-based position otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ColumnRef {
    Index(usize),
    Name(String),
}

/// How a norm table lays out its values.
#[derive(Debug, Clone, PartialEq)]
pub enum NormLayout {
    /// One row per word, one column per target (header required).
    Wide {
        word_column: String,
        columns: Vec<(String, NormTarget)>,
    },
    /// One row per (word, key) pair, e.g. emotion-lexicon triples.
    /// Keys not listed in `keys` are skipped.
    Long {
        has_header: bool,
        word_column: ColumnRef,
        key_column: ColumnRef,
        value_column: ColumnRef,
        keys: Vec<(String, NormTarget)>,
    },
}

/// Parsing schema for one norm table.
#[derive(Debug, Clone, PartialEq)]
pub struct NormSchema {
    /// Table name used in warnings and join statistics.
    pub name: String,
    pub layout: NormLayout,
    /// Field delimiter; autodetected from the first line (tab if it
    /// contains one, comma otherwise) when `None`.
    pub delimiter: Option<u8>,
}

fn detect_delimiter(bytes: &[u8], configured: Option<u8>) -> u8 {
    if let Some(d) = configured {
        return d;
    }
    let first_line = bytes.split(|&b| b == b'\n').next().unwrap_or(&[]);
    if first_line.contains(&b'\t') {
        b'\t'
    } else {
        b','
    }
}

fn header_index(headers: &csv::StringRecord, column: &str) -> Result<usize, IngestError> {
    headers
        .iter()
        .position(|h| h.trim() == column)
        .ok_or_else(|| IngestError::MissingColumn {
            column: column.to_string(),
            available: headers.iter().map(|h| h.trim().to_string()).collect(),
        })
}

fn resolve_column(
    reference: &ColumnRef,
    headers: Option<&csv::StringRecord>,
) -> Result<usize, IngestError> {
    match reference {
        ColumnRef::Index(i) => Ok(*i),
        ColumnRef::Name(name) => match headers {
            Some(h) => header_index(h, name),
            None => Err(IngestError::MissingColumn {
                column: name.clone(),
                available: vec!["<no header row; use a column index>".to_string()],
            }),
        },
    }
}

fn record_cell<'r>(
    record: &'r csv::StringRecord,
    index: usize,
    line: u64,
) -> Result<&'r str, IngestError> {
    record
        .get(index)
        .ok_or(IngestError::ColumnIndexOutOfRange {
            line,
            index,
            fields: record.len(),
        })
}

fn record_line(record: &csv::StringRecord) -> u64 {
    record.position().map(|p| p.line()).unwrap_or(0)
}

/// Parse the pronouncing-dictionary format: `;;;` comment lines and
/// entry lines `WORD  PH PH ...`, with variant entries `WORD(1)`
/// folded into the base word's variant list in source order. Headwords
/// are lowercased. A repeated non-variant headword replaces the
/// earlier entry, with a warning.
///
/// Input is decoded per line with invalid UTF-8 replaced, since real
/// dictionary files contain stray non-UTF-8 bytes in comments.
pub fn parse_dictionary(
    mut reader: impl BufRead,
    inventory: &PhonemeInventory,
) -> Result<Vec<DictionaryEntry>, IngestError> {
    let mut entries: BTreeMap<String, DictionaryEntry> = BTreeMap::new();
    let mut buf = Vec::new();
    let mut line_no = 0usize;

    loop {
        buf.clear();
        if reader.read_until(b'\n', &mut buf)? == 0 {
            break;
        }
        line_no += 1;
        let decoded = String::from_utf8_lossy(&buf);
        let line = decoded.trim_end_matches(['\n', '\r']);
        if line.trim().is_empty() || line.starts_with(";;;") {
            continue;
        }

        let (head, rest) = line.split_once(char::is_whitespace).ok_or_else(|| {
            IngestError::MalformedDictionaryLine {
                line: line_no,
                reason: "entry has no transcription".to_string(),
            }
        })?;
        if head.is_empty() {
            return Err(IngestError::MalformedDictionaryLine {
                line: line_no,
                reason: "entry has no headword".to_string(),
            });
        }
        let rest = rest.trim();
        if rest.is_empty() {
            return Err(IngestError::MalformedDictionaryLine {
                line: line_no,
                reason: "entry has no transcription".to_string(),
            });
        }

        // Variant suffix: WORD(1), WORD(2), ...
        let (base, is_variant) = match head.strip_suffix(')') {
            Some(prefix) => match prefix.rsplit_once('(') {
                Some((base, index)) => {
                    if index.is_empty() || !index.chars().all(|c| c.is_ascii_digit()) {
                        return Err(IngestError::MalformedDictionaryLine {
                            line: line_no,
                            reason: format!("bad variant suffix on {head:?}"),
                        });
                    }
                    if base.is_empty() {
                        return Err(IngestError::MalformedDictionaryLine {
                            line: line_no,
                            reason: "variant entry has no headword".to_string(),
                        });
                    }
                    (base, true)
                }
                None => (head, false),
            },
            None => (head, false),
        };

        let word = base.to_lowercase();
        let seq = parse_transcription(&word, rest, inventory)
            .map_err(|source| IngestError::DictionaryLine { line: line_no, source })?;

        if is_variant {
            match entries.get_mut(&word) {
                Some(entry) => entry.variants.push(seq),
                None => {
                    warn!("dictionary line {line_no}: variant entry {head:?} has no base entry; treating it as the base");
                    entries.insert(
                        word.clone(),
                        DictionaryEntry {
                            word,
                            variants: vec![seq],
                        },
                    );
                }
            }
        } else {
            if entries.contains_key(&word) {
                warn!("dictionary line {line_no}: duplicate entry for {word:?}; keeping the later one");
            }
            entries.insert(
                word.clone(),
                DictionaryEntry {
                    word,
                    variants: vec![seq],
                },
            );
        }
    }

    Ok(entries.into_values().collect())
}

/// Parse a delimited frequency table with a header row. The delimiter
/// is autodetected from the header (tab or comma). Words are
/// lowercased; counts must parse as non-negative integers. Duplicate
/// words keep the last occurrence, with a warning.
pub fn parse_frequency_table(
    mut reader: impl Read,
    word_column: &str,
    count_column: &str,
) -> Result<Vec<FrequencyRecord>, IngestError> {
    let mut bytes = Vec::new();
    reader.read_to_end(&mut bytes)?;
    let delimiter = detect_delimiter(&bytes, None);

    let mut csv_reader = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .from_reader(bytes.as_slice());
    let headers = csv_reader.headers()?.clone();
    let wi = header_index(&headers, word_column)?;
    let ci = header_index(&headers, count_column)?;

    let mut records: BTreeMap<String, u64> = BTreeMap::new();
    for result in csv_reader.records() {
        let record = result?;
        let line = record_line(&record);
        let word = record_cell(&record, wi, line)?.trim().to_lowercase();
        let raw_count = record_cell(&record, ci, line)?.trim();
        let count: u64 = raw_count.parse().map_err(|_| IngestError::RowValue {
            line,
            column: count_column.to_string(),
            reason: format!("expected a non-negative integer count, got {raw_count:?}"),
        })?;
        if records.insert(word.clone(), count).is_some() {
            warn!("frequency table line {line}: duplicate word {word:?}; keeping the later count");
        }
    }

    Ok(records
        .into_iter()
        .map(|(word, count)| FrequencyRecord { word, count })
        .collect())
}

/// Parse a norm table according to its schema. Cells are validated
/// per target at parse time; empty cells and `NA` become missing
/// values. Later occurrences of the same word (wide) or the same
/// (word, key) pair (long) win, with a warning.
pub fn parse_norm_table(
    mut reader: impl Read,
    schema: &NormSchema,
) -> Result<Vec<NormRecord>, IngestError> {
    let mut bytes = Vec::new();
    reader.read_to_end(&mut bytes)?;
    let delimiter = detect_delimiter(&bytes, schema.delimiter);

    let has_header = match &schema.layout {
        NormLayout::Wide { .. } => true,
        NormLayout::Long { has_header, .. } => *has_header,
    };
    let mut csv_reader = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .has_headers(has_header)
        .flexible(false)
        .from_reader(bytes.as_slice());

    let headers = if has_header {
        Some(csv_reader.headers()?.clone())
    } else {
        None
    };

    let mut records: BTreeMap<String, NormRecord> = BTreeMap::new();

    match &schema.layout {
        NormLayout::Wide { word_column, columns } => {
            let headers = headers.as_ref().expect("wide layout always reads a header");
            let wi = header_index(headers, word_column)?;
            let mapped: Vec<(usize, &str, NormTarget)> = columns
                .iter()
                .map(|(col, target)| Ok((header_index(headers, col)?, col.as_str(), *target)))
                .collect::<Result<_, IngestError>>()?;

            for result in csv_reader.records() {
                let record = result?;
                let line = record_line(&record);
                let word = record_cell(&record, wi, line)?.trim().to_lowercase();
                if word.is_empty() {
                    return Err(IngestError::RowValue {
                        line,
                        column: word_column.clone(),
                        reason: "empty word".to_string(),
                    });
                }
                let mut values = BTreeMap::new();
                for (index, column, target) in &mapped {
                    let raw = record_cell(&record, *index, line)?;
                    match validate_norm_value(*target, raw) {
                        Ok(Some(v)) => {
                            values.insert(*target, v);
                        }
                        Ok(None) => {}
                        Err(reason) => {
                            return Err(IngestError::RowValue {
                                line,
                                column: (*column).to_string(),
                                reason,
                            })
                        }
                    }
                }
                let replaced = records
                    .insert(word.clone(), NormRecord { word: word.clone(), values })
                    .is_some();
                if replaced {
                    warn!(
                        "norm table {}: duplicate word {word:?} at line {line}; keeping the later row",
                        schema.name
                    );
                }
            }
        }
        NormLayout::Long {
            word_column,
            key_column,
            value_column,
            keys,
            ..
        } => {
            let wi = resolve_column(word_column, headers.as_ref())?;
            let ki = resolve_column(key_column, headers.as_ref())?;
            let vi = resolve_column(value_column, headers.as_ref())?;

            for result in csv_reader.records() {
                let record = result?;
                let line = record_line(&record);
                let word = record_cell(&record, wi, line)?.trim().to_lowercase();
                if word.is_empty() {
                    return Err(IngestError::RowValue {
                        line,
                        column: format!("{word_column:?}"),
                        reason: "empty word".to_string(),
                    });
                }
                let key = record_cell(&record, ki, line)?.trim();
                let Some((_, target)) = keys.iter().find(|(k, _)| k == key) else {
                    debug!("norm table {}: line {line}: unmapped key {key:?} skipped", schema.name);
                    continue;
                };
                let raw = record_cell(&record, vi, line)?;
                match validate_norm_value(*target, raw) {
                    Ok(Some(v)) => {
                        let entry = records.entry(word.clone()).or_insert_with(|| NormRecord {
                            word: word.clone(),
                            values: BTreeMap::new(),
                        });
                        if entry.values.insert(*target, v).is_some() {
                            warn!(
                                "norm table {}: duplicate value for ({word:?}, {key:?}) at line {line}; keeping the later one",
                                schema.name
                            );
                        }
                    }
                    Ok(None) => {}
                    Err(reason) => {
                        return Err(IngestError::RowValue {
                            line,
                            column: key.to_string(),
                            reason,
                        })
                    }
                }
            }
        }
    }

    Ok(records.into_values().collect())
}

/// One parsed norm table, named for join statistics.
#[derive(Debug, Clone)]
pub struct NormTable {
    pub name: String,
    pub records: Vec<NormRecord>,
}

/// Join statistics reported next to the lexicon: how many rows exist,
/// how many matched each norm table, and the observed range of every
/// numeric norm column (value ranges are recorded, never rescaled).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct JoinReport {
    pub dictionary_words: usize,
    pub frequency_words: usize,
    pub rows: usize,
    pub norm_matches: BTreeMap<String, usize>,
    pub observed_ranges: BTreeMap<String, [f64; 2]>,
}

fn apply_norm_value(row: &mut LexiconRow, target: NormTarget, value: &NormValue) {
    match (target, value) {
        (NormTarget::MorphemeLength, NormValue::Count(v)) => row.morpheme_length = Some(*v),
        (NormTarget::Pos, NormValue::Label(v)) => row.pos = Some(v.clone()),
        (NormTarget::Iconicity, NormValue::Number(v)) => row.iconicity = Some(*v),
        (NormTarget::Humor, NormValue::Number(v)) => row.humor = Some(*v),
        (NormTarget::NrcValence, NormValue::Number(v)) => row.nrc_valence = Some(*v),
        (NormTarget::GValence, NormValue::Number(v)) => row.g_valence = Some(*v),
        (NormTarget::RecallAccuracy, NormValue::Number(v)) => row.recall_accuracy = Some(*v),
        (NormTarget::Emotion(e), NormValue::Binary(v)) => row.set_emotion(e, Some(*v)),
        // validate_norm_value fixes the variant per target, so any
        // other pairing is a bug in this crate.
        (t, v) => unreachable!("norm value {v:?} cannot fill target {t:?}"),
    }
}

/// Inner-join dictionary and frequency table on the lowercased word,
/// then left-join every norm table. Rows come out sorted by word. The
/// canonical (first-listed) pronunciation is used. Average surprisal
/// is left unfilled; the surprisal module computes it.
pub fn join_lexicon(
    dictionary: &[DictionaryEntry],
    frequencies: &[FrequencyRecord],
    norm_tables: &[NormTable],
) -> Result<(Vec<LexiconRow>, JoinReport), IngestError> {
    let freq_map: BTreeMap<&str, u64> = frequencies
        .iter()
        .map(|r| (r.word.as_str(), r.count))
        .collect();

    let dict_map: BTreeMap<&str, &DictionaryEntry> =
        dictionary.iter().map(|e| (e.word.as_str(), e)).collect();

    let mut rows = Vec::new();
    let mut norm_matches: BTreeMap<String, usize> = norm_tables
        .iter()
        .map(|t| (t.name.clone(), 0usize))
        .collect();

    let norm_maps: Vec<(&NormTable, BTreeMap<&str, &NormRecord>)> = norm_tables
        .iter()
        .map(|t| {
            let map = t.records.iter().map(|r| (r.word.as_str(), r)).collect();
            (t, map)
        })
        .collect();

    for (word, entry) in &dict_map {
        let Some(&count) = freq_map.get(word) else {
            continue;
        };
        let mut row = LexiconRow::new(word, entry.canonical().clone(), count);
        for (table, map) in &norm_maps {
            if let Some(record) = map.get(word) {
                *norm_matches.get_mut(&table.name).unwrap() += 1;
                for (target, value) in &record.values {
                    apply_norm_value(&mut row, *target, value);
                }
            }
        }
        rows.push(row);
    }

    if rows.is_empty() {
        return Err(IngestError::EmptyJoin);
    }

    let mut observed_ranges = BTreeMap::new();
    let numeric_fields = [
        Field::MorphemeLength,
        Field::IconicityRating,
        Field::Humor,
        Field::NrcValence,
        Field::GValence,
        Field::RecallAccuracy,
    ];
    for field in numeric_fields {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        let mut seen = false;
        for row in &rows {
            if let Some(v) = field.numeric_value(row) {
                min = min.min(v);
                max = max.max(v);
                seen = true;
            }
        }
        if seen {
            observed_ranges.insert(field.name().to_string(), [min, max]);
        }
    }

    let report = JoinReport {
        dictionary_words: dictionary.len(),
        frequency_words: frequencies.len(),
        rows: rows.len(),
        norm_matches,
        observed_ranges,
    };
    Ok((rows, report))
}

/// Column order of the persisted lexicon format.
pub const LEXICON_COLUMNS: [&str; 22] = [
    "Word",
    "Pronunciation",
    "Frequency",
    "Phoneme_Length",
    "Morpheme_Length",
    "PoS",
    "Average_Surprisal",
    "Iconicity_Rating",
    "Humor",
    "NRC_Valence",
    "G_Valence",
    "Recall_Accuracy",
    "Anger",
    "Anticipation",
    "Disgust",
    "Fear",
    "Joy",
    "Negative",
    "Positive",
    "Sadness",
    "Surprise",
    "Trust",
];

fn format_opt_f64(v: Option<f64>) -> String {
    match v {
        Some(x) => format!("{x}"),
        None => "NA".to_string(),
    }
}

/// Serialize the lexicon as tab-separated UTF-8 text with a fixed
/// header and a literal `NA` for every missing value. Numbers are
/// written with full round-trip precision, so write → read → write is
/// byte-identical.
pub fn write_lexicon(rows: &[LexiconRow], writer: impl Write) -> Result<(), IngestError> {
    let mut w = csv::WriterBuilder::new().delimiter(b'\t').from_writer(writer);
    w.write_record(LEXICON_COLUMNS)?;
    for row in rows {
        let mut record = Vec::with_capacity(LEXICON_COLUMNS.len());
        record.push(row.word.clone());
        record.push(row.pronunciation.transcription());
        record.push(row.frequency.to_string());
        record.push(row.phoneme_length().to_string());
        record.push(match row.morpheme_length {
            Some(v) => v.to_string(),
            None => "NA".to_string(),
        });
        record.push(row.pos.clone().unwrap_or_else(|| "NA".to_string()));
        record.push(format_opt_f64(row.average_surprisal));
        record.push(format_opt_f64(row.iconicity));
        record.push(format_opt_f64(row.humor));
        record.push(format_opt_f64(row.nrc_valence));
        record.push(format_opt_f64(row.g_valence));
        record.push(format_opt_f64(row.recall_accuracy));
        for e in Emotion::ALL {
            record.push(match row.emotion(e) {
                Some(v) => v.to_string(),
                None => "NA".to_string(),
            });
        }
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

fn parse_lexicon_opt_f64(raw: &str, line: u64, column: &str) -> Result<Option<f64>, IngestError> {
    if is_missing_cell(raw) {
        return Ok(None);
    }
    let v: f64 = raw.trim().parse().map_err(|_| IngestError::RowValue {
        line,
        column: column.to_string(),
        reason: format!("expected a number or NA, got {raw:?}"),
    })?;
    if !v.is_finite() {
        return Err(IngestError::RowValue {
            line,
            column: column.to_string(),
            reason: format!("value must be finite, got {raw:?}"),
        });
    }
    Ok(Some(v))
}

/// Read a lexicon written by [`write_lexicon`], re-validating every
/// value. Rows are canonicalized to word order on load so that no
/// downstream output depends on the file's row order.
pub fn read_lexicon(
    reader: impl Read,
    inventory: &PhonemeInventory,
) -> Result<Vec<LexiconRow>, IngestError> {
    let mut csv_reader = csv::ReaderBuilder::new().delimiter(b'\t').from_reader(reader);
    let headers = csv_reader.headers()?.clone();
    let found: Vec<&str> = headers.iter().collect();
    if found != LEXICON_COLUMNS {
        return Err(IngestError::LexiconHeader {
            expected: LEXICON_COLUMNS.join("\t"),
            found: found.join("\t"),
        });
    }

    let mut rows = Vec::new();
    for result in csv_reader.records() {
        let record = result?;
        let line = record_line(&record);
        let cell = |i: usize| record.get(i).unwrap_or("");

        let word = cell(0).to_string();
        if word.is_empty() {
            return Err(IngestError::LexiconRow {
                line,
                reason: "empty word".to_string(),
            });
        }
        let pronunciation = parse_transcription(&word, cell(1), inventory).map_err(|e| {
            IngestError::LexiconRow {
                line,
                reason: e.to_string(),
            }
        })?;
        let frequency: u64 = cell(2).parse().map_err(|_| IngestError::RowValue {
            line,
            column: "Frequency".to_string(),
            reason: format!("expected a non-negative integer, got {:?}", cell(2)),
        })?;
        let stated_len: usize = cell(3).parse().map_err(|_| IngestError::RowValue {
            line,
            column: "Phoneme_Length".to_string(),
            reason: format!("expected an integer, got {:?}", cell(3)),
        })?;
        if stated_len != pronunciation.len() {
            return Err(IngestError::LexiconRow {
                line,
                reason: format!(
                    "Phoneme_Length {} does not match the {}-phoneme pronunciation",
                    stated_len,
                    pronunciation.len()
                ),
            });
        }

        let mut row = LexiconRow::new(&word, pronunciation, frequency);

        let norm_cell = |target: NormTarget, index: usize, column: &str| {
            validate_norm_value(target, cell(index)).map_err(|reason| IngestError::RowValue {
                line,
                column: column.to_string(),
                reason,
            })
        };

        if let Some(v) = norm_cell(NormTarget::MorphemeLength, 4, "Morpheme_Length")? {
            apply_norm_value(&mut row, NormTarget::MorphemeLength, &v);
        }
        if let Some(v) = norm_cell(NormTarget::Pos, 5, "PoS")? {
            apply_norm_value(&mut row, NormTarget::Pos, &v);
        }
        if let Some(v) = parse_lexicon_opt_f64(cell(6), line, "Average_Surprisal")? {
            if v < 0.0 {
                return Err(IngestError::RowValue {
                    line,
                    column: "Average_Surprisal".to_string(),
                    reason: format!("surprisal must be non-negative, got {v}"),
                });
            }
            row.average_surprisal = Some(v);
        }
        if let Some(v) = norm_cell(NormTarget::Iconicity, 7, "Iconicity_Rating")? {
            apply_norm_value(&mut row, NormTarget::Iconicity, &v);
        }
        if let Some(v) = norm_cell(NormTarget::Humor, 8, "Humor")? {
            apply_norm_value(&mut row, NormTarget::Humor, &v);
        }
        if let Some(v) = norm_cell(NormTarget::NrcValence, 9, "NRC_Valence")? {
            apply_norm_value(&mut row, NormTarget::NrcValence, &v);
        }
        if let Some(v) = norm_cell(NormTarget::GValence, 10, "G_Valence")? {
            apply_norm_value(&mut row, NormTarget::GValence, &v);
        }
        if let Some(v) = norm_cell(NormTarget::RecallAccuracy, 11, "Recall_Accuracy")? {
            apply_norm_value(&mut row, NormTarget::RecallAccuracy, &v);
        }
        for (offset, e) in Emotion::ALL.into_iter().enumerate() {
            if let Some(v) = norm_cell(NormTarget::Emotion(e), 12 + offset, e.name())? {
                apply_norm_value(&mut row, NormTarget::Emotion(e), &v);
            }
        }
        rows.push(row);
    }

    rows.sort_by(|a, b| {
        a.word
            .cmp(&b.word)
            .then_with(|| a.pronunciation.transcription().cmp(&b.pronunciation.transcription()))
    });
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    fn inv() -> PhonemeInventory {
        PhonemeInventory::default_english()
    }

    fn seq(word: &str, raw: &str) -> PhonemeSequence {
        parse_transcription(word, raw, &inv()).unwrap()
    }

    #[test]
    fn dictionary_skips_comments_and_folds_variants() {
        let text = ";;; a comment line\nCAT  K AE1 T\nCAT(1)  K AA1 T\nOOMPH  UW1 M F\n";
        let entries = parse_dictionary(Cursor::new(text), &inv()).unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0].word, "cat");
        assert_eq!(entries[0].variants.len(), 2);
        assert_eq!(entries[0].canonical().transcription(), "K AE T");
        assert_eq!(entries[0].variants[1].transcription(), "K AA T");
        assert_eq!(entries[1].word, "oomph");
        assert_eq!(entries[1].canonical().transcription(), "UW M F");
    }

    #[test]
    fn dictionary_duplicate_headword_last_wins() {
        let text = "CAT  K AE1 T\nCAT  K AA1 T\n";
        let entries = parse_dictionary(Cursor::new(text), &inv()).unwrap();
        assert_eq!(entries.len(), 1);
        assert_eq!(entries[0].canonical().transcription(), "K AA T");
        assert_eq!(entries[0].variants.len(), 1);
    }

    #[test]
    fn dictionary_errors_carry_line_numbers() {
        let err = parse_dictionary(Cursor::new("CAT  K AE1 T\nDOG\n"), &inv()).unwrap_err();
        assert!(matches!(
            err,
            IngestError::MalformedDictionaryLine { line: 2, .. }
        ));

        let err = parse_dictionary(Cursor::new("CAT  K QX T\n"), &inv()).unwrap_err();
        match err {
            IngestError::DictionaryLine { line, source } => {
                assert_eq!(line, 1);
                assert!(source.to_string().contains("QX"));
            }
            other => panic!("unexpected error {other:?}"),
        }

        let err = parse_dictionary(Cursor::new("CAT(x)  K AE1 T\n"), &inv()).unwrap_err();
        assert!(matches!(
            err,
            IngestError::MalformedDictionaryLine { line: 1, .. }
        ));
    }

    #[test]
    fn dictionary_tolerates_invalid_utf8_in_comments() {
        let mut bytes = b";;; caf".to_vec();
        bytes.push(0xE9);
        bytes.extend_from_slice(b"\nCAT  K AE1 T\n");
        let entries = parse_dictionary(Cursor::new(bytes), &inv()).unwrap();
        assert_eq!(entries.len(), 1);
    }

    #[test]
    fn frequency_autodetects_tab_and_comma() {
        let tsv = "Word\tFREQcount\nthe\t1501908\nCat\t42\n";
        let records = parse_frequency_table(Cursor::new(tsv), "Word", "FREQcount").unwrap();
        assert_eq!(
            records,
            vec![
                FrequencyRecord { word: "cat".into(), count: 42 },
                FrequencyRecord { word: "the".into(), count: 1501908 },
            ]
        );

        let csv_text = "Word,FREQcount\nzero,0\n";
        let records = parse_frequency_table(Cursor::new(csv_text), "Word", "FREQcount").unwrap();
        assert_eq!(records[0].count, 0);
    }

    #[test]
    fn frequency_missing_column_lists_headers() {
        let err = parse_frequency_table(Cursor::new("Word,Count\nx,1\n"), "Word", "FREQcount")
            .unwrap_err();
        match err {
            IngestError::MissingColumn { column, available } => {
                assert_eq!(column, "FREQcount");
                assert_eq!(available, vec!["Word".to_string(), "Count".to_string()]);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn frequency_bad_count_reports_line() {
        let err = parse_frequency_table(
            Cursor::new("Word\tFREQcount\nok\t5\nabc\tx2\n"),
            "Word",
            "FREQcount",
        )
        .unwrap_err();
        match err {
            IngestError::RowValue { line, column, .. } => {
                assert_eq!(line, 3);
                assert_eq!(column, "FREQcount");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    fn humor_schema() -> NormSchema {
        NormSchema {
            name: "humor".to_string(),
            layout: NormLayout::Wide {
                word_column: "word".to_string(),
                columns: vec![("mean".to_string(), NormTarget::Humor)],
            },
            delimiter: None,
        }
    }

    #[test]
    fn norm_wide_parses_and_validates() {
        let text = "word,mean\nbooby,4.07\ntorture,1.26\nblank,\n";
        let records = parse_norm_table(Cursor::new(text), &humor_schema()).unwrap();
        assert_eq!(records.len(), 3);
        // Records come out sorted by word: blank, booby, torture.
        assert_eq!(
            records[0].values.get(&NormTarget::Humor),
            None,
            "empty cell is a missing marker, not a value"
        );
        assert_eq!(
            records[1].values.get(&NormTarget::Humor),
            Some(&NormValue::Number(4.07))
        );
        assert_eq!(
            records[2].values.get(&NormTarget::Humor),
            Some(&NormValue::Number(1.26))
        );
    }

    #[test]
    fn norm_rejects_out_of_range_values() {
        let schema = NormSchema {
            name: "nrc".to_string(),
            layout: NormLayout::Wide {
                word_column: "word".to_string(),
                columns: vec![("anger".to_string(), NormTarget::Emotion(Emotion::Anger))],
            },
            delimiter: None,
        };
        let err = parse_norm_table(Cursor::new("word,anger\nx,2\n"), &schema).unwrap_err();
        match err {
            IngestError::RowValue { line, column, reason } => {
                assert_eq!(line, 2);
                assert_eq!(column, "anger");
                assert!(reason.contains("0 or 1"));
            }
            other => panic!("unexpected error {other:?}"),
        }

        let err = validate_norm_value(NormTarget::Humor, "5.4").unwrap_err();
        assert!(err.contains("[1, 5]"));
        let err = validate_norm_value(NormTarget::MorphemeLength, "0").unwrap_err();
        assert!(err.contains("at least 1"));
    }

    #[test]
    fn norm_long_layout_collects_triples() {
        let schema = NormSchema {
            name: "nrc_emotions".to_string(),
            layout: NormLayout::Long {
                has_header: false,
                word_column: ColumnRef::Index(0),
                key_column: ColumnRef::Index(1),
                value_column: ColumnRef::Index(2),
                keys: vec![
                    ("anger".to_string(), NormTarget::Emotion(Emotion::Anger)),
                    ("joy".to_string(), NormTarget::Emotion(Emotion::Joy)),
                ],
            },
            delimiter: None,
        };
        let text = "abandon\tanger\t1\nabandon\tjoy\t0\nabandon\tunmapped\t1\n";
        let records = parse_norm_table(Cursor::new(text), &schema).unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(
            records[0].values.get(&NormTarget::Emotion(Emotion::Anger)),
            Some(&NormValue::Binary(1))
        );
        assert_eq!(
            records[0].values.get(&NormTarget::Emotion(Emotion::Joy)),
            Some(&NormValue::Binary(0))
        );
        assert_eq!(records[0].values.len(), 2);
    }

    #[test]
    fn join_is_inner_on_frequency_and_left_on_norms() {
        let dictionary = vec![
            DictionaryEntry { word: "cat".into(), variants: vec![seq("cat", "K AE T")] },
            DictionaryEntry { word: "dog".into(), variants: vec![seq("dog", "D AO G")] },
            DictionaryEntry { word: "ghost".into(), variants: vec![seq("ghost", "G OW S T")] },
        ];
        let frequencies = vec![
            FrequencyRecord { word: "cat".into(), count: 10 },
            FrequencyRecord { word: "dog".into(), count: 5 },
            FrequencyRecord { word: "unheard".into(), count: 7 },
        ];
        let humor = NormTable {
            name: "humor".to_string(),
            records: vec![NormRecord {
                word: "cat".into(),
                values: BTreeMap::from([(NormTarget::Humor, NormValue::Number(3.1))]),
            }],
        };

        let (rows, report) = join_lexicon(&dictionary, &frequencies, &[humor]).unwrap();
        assert_eq!(rows.len(), 2, "ghost lacks frequency, unheard lacks pronunciation");
        assert_eq!(rows[0].word, "cat");
        assert_eq!(rows[0].humor, Some(3.1));
        assert_eq!(rows[1].word, "dog");
        assert_eq!(rows[1].humor, None, "left join leaves missing norms missing");
        assert_eq!(report.rows, 2);
        assert_eq!(report.norm_matches["humor"], 1);
        assert_eq!(report.observed_ranges["Humor"], [3.1, 3.1]);
    }

    #[test]
    fn join_folds_case() {
        // "Cat" in the frequency file and "CAT" in the dictionary meet
        // under the lowercased key; parse already lowercases, so here
        // we just confirm join keys are the lowercased words.
        let dictionary =
            parse_dictionary(Cursor::new("CAT  K AE1 T\n"), &inv()).unwrap();
        let frequencies =
            parse_frequency_table(Cursor::new("Word,FREQcount\nCat,9\n"), "Word", "FREQcount")
                .unwrap();
        let (rows, _) = join_lexicon(&dictionary, &frequencies, &[]).unwrap();
        assert_eq!(rows[0].word, "cat");
        assert_eq!(rows[0].frequency, 9);
    }

    #[test]
    fn empty_join_is_fatal() {
        let dictionary = vec![DictionaryEntry {
            word: "cat".into(),
            variants: vec![seq("cat", "K AE T")],
        }];
        let frequencies = vec![FrequencyRecord { word: "dog".into(), count: 1 }];
        assert!(matches!(
            join_lexicon(&dictionary, &frequencies, &[]),
            Err(IngestError::EmptyJoin)
        ));
    }

    fn sample_rows() -> Vec<LexiconRow> {
        let mut cat = LexiconRow::new("cat", seq("cat", "K AE T"), 10);
        cat.humor = Some(3.25);
        cat.morpheme_length = Some(1);
        cat.pos = Some("Noun".to_string());
        cat.set_emotion(Emotion::Joy, Some(1));
        cat.average_surprisal = Some(1.5);
        let dog = LexiconRow::new("dog", seq("dog", "D AO G"), 5);
        vec![cat, dog]
    }

    #[test]
    fn lexicon_round_trips_with_na_markers() {
        let rows = sample_rows();
        let mut bytes = Vec::new();
        write_lexicon(&rows, &mut bytes).unwrap();
        let text = String::from_utf8(bytes.clone()).unwrap();
        assert!(text.starts_with("Word\tPronunciation\tFrequency\t"));
        assert!(text.contains("dog\tD AO G\t5\t3\tNA\tNA\tNA\tNA\tNA\tNA\tNA\tNA\tNA\t"));

        let reread = read_lexicon(Cursor::new(&bytes), &inv()).unwrap();
        assert_eq!(reread, rows);

        let mut rewritten = Vec::new();
        write_lexicon(&reread, &mut rewritten).unwrap();
        assert_eq!(rewritten, bytes, "write → read → write is byte-identical");
    }

    #[test]
    fn lexicon_read_canonicalizes_row_order() {
        let mut rows = sample_rows();
        rows.reverse();
        let mut bytes = Vec::new();
        write_lexicon(&rows, &mut bytes).unwrap();
        let reread = read_lexicon(Cursor::new(&bytes), &inv()).unwrap();
        assert_eq!(reread[0].word, "cat");
        assert_eq!(reread[1].word, "dog");
    }

    #[test]
    fn lexicon_read_validates() {
        let header = LEXICON_COLUMNS.join("\t");
        let bad_len = format!("{header}\ncat\tK AE T\t10\t4\tNA\tNA\tNA\tNA\tNA\tNA\tNA\tNA\tNA\tNA\tNA\tNA\tNA\tNA\tNA\tNA\tNA\tNA\n");
        let err = read_lexicon(Cursor::new(bad_len.as_bytes()), &inv()).unwrap_err();
        assert!(matches!(err, IngestError::LexiconRow { line: 2, .. }));

        let bad_emotion = format!("{header}\ncat\tK AE T\t10\t3\tNA\tNA\tNA\tNA\tNA\tNA\tNA\tNA\t2\tNA\tNA\tNA\tNA\tNA\tNA\tNA\tNA\tNA\n");
        let err = read_lexicon(Cursor::new(bad_emotion.as_bytes()), &inv()).unwrap_err();
        assert!(matches!(err, IngestError::RowValue { line: 2, .. }));

        let err = read_lexicon(Cursor::new(b"Nope\tWrong\n".as_slice()), &inv()).unwrap_err();
        assert!(matches!(err, IngestError::LexiconHeader { .. }));
    }

    #[test]
    fn field_names_round_trip() {
        for field in Field::all() {
            assert_eq!(Field::from_name(field.name()), Some(field));
        }
        assert_eq!(Field::from_name("Average_Surprisal"), Some(Field::AverageSurprisal));
        assert!(Field::from_name("nope").is_none());
        let err = Field::parse("nope").unwrap_err();
        assert!(err.to_string().contains("Average_Surprisal"));
    }
}
