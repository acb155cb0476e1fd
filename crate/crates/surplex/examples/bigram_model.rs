//! Build a phoneme bigram model from a toy lexicon and show how
//! weighting, boundary padding, smoothing, and leave-one-out scoring
//! change the numbers.
//!
//! Run with: cargo run --example bigram_model

use std::io::Cursor;

use surplex::ingest::LexiconRow;
use surplex::phonemes::{parse_transcription, PhonemeInventory};
use surplex::surprisal::{annotate_lexicon, count_bigrams, Smoothing, SurprisalOptions, Weighting};

fn main() -> anyhow::Result<()> {
    let inventory = PhonemeInventory::default_english();
    let row = |word: &str, pron: &str, freq: u64| -> anyhow::Result<LexiconRow> {
        let seq = parse_transcription(word, pron, &inventory)?;
        Ok(LexiconRow::new(word, seq, freq))
    };
    let rows = vec![
        row("cat", "K AE T", 6)?,
        row("cab", "K AE B", 2)?,
        row("bat", "B AE T", 4)?,
    ];

    let k = inventory.phoneme("K").unwrap();
    let ae = inventory.phoneme("AE").unwrap();
    let t = inventory.phoneme("T").unwrap();
    let b = inventory.phoneme("B").unwrap();

    // Token weighting: every bigram counts once per corpus occurrence,
    // so frequent words dominate the distribution.
    let token = count_bigrams(&rows, &inventory, &SurprisalOptions::default())?;
    println!("token weighting:");
    println!("  count(AE -> T) = {}", token.pair_count(&ae, &t));
    println!("  P(T | AE)      = {:.4}", token.probability(&ae, &t));
    println!(
        "  surprisal(AE -> T) = {:.4} bits",
        token.surprisal_bits(&ae, &t)?
    );

    // Type weighting: each lexicon entry contributes once, however
    // often it occurs.
    let type_options = SurprisalOptions {
        weighting: Weighting::Type,
        ..SurprisalOptions::default()
    };
    let typed = count_bigrams(&rows, &inventory, &type_options)?;
    println!("type weighting:");
    println!("  count(AE -> T) = {}", typed.pair_count(&ae, &t));
    println!("  P(T | AE)      = {:.4}", typed.probability(&ae, &t));

    // A word's score is the mean surprisal of its bigrams.
    let cat = &rows[0].pronunciation;
    println!(
        "mean surprisal of /K AE T/ = {:.4} bits",
        token.word_average_surprisal(cat)?
    );

    // Boundary padding gives edge phonemes context: the model gains a
    // word-start distribution, so K is informative, not free.
    let padded_options = SurprisalOptions {
        boundaries: true,
        ..SurprisalOptions::default()
    };
    let padded = count_bigrams(&rows, &inventory, &padded_options)?;
    println!(
        "with boundaries, mean surprisal of /K AE T/ = {:.4} bits",
        padded.word_average_surprisal(cat)?
    );

    // annotate_lexicon builds the model and fills every row's
    // average_surprisal in one pass.
    println!("\nbatch annotation:");
    let mut annotated_rows = rows.clone();
    annotate_lexicon(&mut annotated_rows, &inventory, &SurprisalOptions::default())?;
    for r in &annotated_rows {
        println!("  {}: {:.4} bits", r.word, r.average_surprisal.unwrap());
    }

    // Leave-one-out scores each word against everyone else's counts.
    // The AE -> B transition exists only in "cab", so that word hits
    // a zero probability and the whole annotation fails loudly.
    let loo_options = SurprisalOptions {
        leave_one_out: true,
        ..SurprisalOptions::default()
    };
    let mut loo_rows = rows.clone();
    match annotate_lexicon(&mut loo_rows, &inventory, &loo_options) {
        Ok(_) => unreachable!("AE -> B is unique to cab"),
        Err(err) => println!("leave-one-out annotation: {err}"),
    }

    // Add-one smoothing fixes that by granting every pair over the
    // padded inventory a pseudo-count.
    let smoothed_options = SurprisalOptions {
        leave_one_out: true,
        smoothing: Smoothing::AddOne,
        ..SurprisalOptions::default()
    };
    let mut smoothed_rows = rows.clone();
    let (smoothed, _) = annotate_lexicon(&mut smoothed_rows, &inventory, &smoothed_options)?;
    println!(
        "smoothed leave-one-out on /B AE T/ = {:.4} bits",
        smoothed_rows[2].average_surprisal.unwrap()
    );
    println!(
        "smoothed P(B | K) = {:.6} (unseen, nonzero by construction)",
        smoothed.probability(&k, &b)
    );

    // The fitted model serializes to a CSV of contexts and counts.
    let mut dump = Cursor::new(Vec::new());
    token.dump(&mut dump)?;
    let text = String::from_utf8(dump.into_inner())?;
    println!("\nmodel dump ({} lines):", text.lines().count());
    for line in text.lines().take(6) {
        println!("  {line}");
    }

    Ok(())
}
