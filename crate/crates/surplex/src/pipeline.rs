//! End-to-end orchestration: load the datasets a config names, join
//! them into a lexicon, and annotate it with average surprisal. The
//! CLI and the runnable examples both sit on top of this module.

use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use anyhow::{Context, Result};

use crate::config::RunConfig;
use crate::ingest::{
    join_lexicon, parse_dictionary, parse_frequency_table, parse_norm_table, read_lexicon,
    JoinReport, LexiconRow, NormTable,
};
use crate::phonemes::PhonemeInventory;
use crate::surprisal::{annotate_lexicon, AnnotationSummary, BigramModel};

/// Everything a full ingest run produces.
#[derive(Debug)]
pub struct BuildOutput {
    pub rows: Vec<LexiconRow>,
    pub join_report: JoinReport,
    pub model: BigramModel,
    pub annotation: AnnotationSummary,
}

/// Load the phoneme inventory: the built-in English set, or the file
/// at `path` when given.
pub fn load_inventory(path: Option<&Path>) -> Result<PhonemeInventory> {
    match path {
        None => Ok(PhonemeInventory::default_english()),
        Some(path) => {
            let file = File::open(path)
                .with_context(|| format!("opening phoneme inventory {}", path.display()))?;
            PhonemeInventory::from_reader(BufReader::new(file))
                .with_context(|| format!("parsing phoneme inventory {}", path.display()))
        }
    }
}

/// Run the full ingest pipeline for a config: parse the dictionary,
/// frequency table, and norm tables; join them; annotate surprisal.
pub fn build_lexicon(config: &RunConfig) -> Result<BuildOutput> {
    let inventory = load_inventory(config.inventory.as_deref())?;

    let dict_file = File::open(&config.dictionary)
        .with_context(|| format!("opening dictionary {}", config.dictionary.display()))?;
    let dictionary = parse_dictionary(BufReader::new(dict_file), &inventory)
        .with_context(|| format!("parsing dictionary {}", config.dictionary.display()))?;

    let freq_path = &config.frequency.path;
    let freq_file = File::open(freq_path)
        .with_context(|| format!("opening frequency table {}", freq_path.display()))?;
    let frequencies = parse_frequency_table(
        BufReader::new(freq_file),
        &config.frequency.word_column,
        &config.frequency.count_column,
    )
    .with_context(|| format!("parsing frequency table {}", freq_path.display()))?;

    let mut norm_tables = Vec::with_capacity(config.norms.len());
    for norm in &config.norms {
        let schema = norm.to_schema()?;
        let file = File::open(&norm.path).with_context(|| {
            format!("opening norm table {} ({})", norm.name, norm.path.display())
        })?;
        let records = parse_norm_table(BufReader::new(file), &schema).with_context(|| {
            format!("parsing norm table {} ({})", norm.name, norm.path.display())
        })?;
        log::info!("norm table {}: {} words", norm.name, records.len());
        norm_tables.push(NormTable {
            name: norm.name.clone(),
            records,
        });
    }

    let (mut rows, join_report) = join_lexicon(&dictionary, &frequencies, &norm_tables)
        .context("joining dictionary, frequency table, and norms")?;
    log::info!(
        "joined lexicon: {} rows from {} dictionary words x {} frequency words",
        join_report.rows,
        join_report.dictionary_words,
        join_report.frequency_words
    );

    let options = config.surprisal.to_options();
    let (model, annotation) = annotate_lexicon(&mut rows, &inventory, &options)
        .context("computing average surprisal")?;

    Ok(BuildOutput {
        rows,
        join_report,
        model,
        annotation,
    })
}

/// Read a lexicon file produced by ingest, validating it against the
/// inventory.
pub fn read_lexicon_file(path: &Path, inventory: &PhonemeInventory) -> Result<Vec<LexiconRow>> {
    let file =
        File::open(path).with_context(|| format!("opening lexicon {}", path.display()))?;
    read_lexicon(BufReader::new(file), inventory)
        .with_context(|| format!("reading lexicon {}", path.display()))
}
