//! Parse a pronouncing dictionary against the built-in English
//! phoneme inventory and poke at the resulting entries.
//!
//! Run with: cargo run --example parse_dictionary

use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use surplex::ingest::parse_dictionary;
use surplex::phonemes::{parse_transcription, PhonemeInventory};

fn main() -> anyhow::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let inventory = PhonemeInventory::default_english();
    println!(
        "inventory: {} phonemes ({} ... {})",
        inventory.len(),
        inventory.iter().next().unwrap(),
        inventory.iter().last().unwrap()
    );

    let file = File::open(data.join("dictionary.dict"))?;
    let entries = parse_dictionary(BufReader::new(file), &inventory)?;
    println!("parsed {} dictionary entries", entries.len());

    // Variant lines like `TOMATO(1)` fold into the base entry; the
    // unnumbered line stays canonical regardless of file order.
    for entry in entries.iter().filter(|e| e.variants.len() > 1) {
        println!(
            "  {}: {} pronunciations, canonical /{}/",
            entry.word,
            entry.variants.len(),
            entry.canonical().transcription()
        );
    }

    // Look up one word and walk its bigrams. Stress digits in the
    // source file (B AH1 T ...) are stripped during parsing.
    let butterfly = entries
        .iter()
        .find(|e| e.word == "butterfly")
        .expect("demo dictionary has BUTTERFLY");
    let seq = butterfly.canonical();
    println!(
        "\nbutterfly: /{}/ ({} phonemes, {} bigrams)",
        seq.transcription(),
        seq.len(),
        seq.bigram_count()
    );
    for (a, b) in seq.bigrams() {
        println!("  {} -> {}", a.as_str(), b.as_str());
    }

    // Transcriptions can also be parsed directly, and symbols outside
    // the inventory are rejected with the offending word named.
    let parsed = parse_transcription("ad-hoc", "AE D HH AA K", &inventory)?;
    println!("\nparsed ad-hoc as /{}/", parsed.transcription());
    match parse_transcription("bad", "B AE QX", &inventory) {
        Ok(_) => unreachable!("QX is not a phoneme"),
        Err(err) => println!("rejected as expected: {err}"),
    }

    Ok(())
}
