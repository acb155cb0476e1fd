//! Fit a least-squares model with planted coefficients and read the
//! inference back out: estimates, standard errors, t-statistics,
//! p-values, significance stars, dummy coding, and column drops.
//!
//! Run with: cargo run --example ols_inference

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use surplex::ingest::{Field, LexiconRow};
use surplex::phonemes::{parse_transcription, PhonemeInventory};
use surplex::regress::{fit_model, simple_fit, ModelSpec};
use surplex::render::render_fit_text;

fn main() -> anyhow::Result<()> {
    let inventory = PhonemeInventory::default_english();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    // Sum of 12 uniforms, centered: approximately standard normal.
    let mut noise = |sd: f64| -> f64 {
        let s: f64 = (0..12).map(|_| rng.gen::<f64>()).sum();
        (s - 6.0) * sd
    };

    // 120 rows with a known data-generating process:
    //   humor = 2.0 + 0.8*surprisal - 0.5*iconicity
    //               + 0.6*[noun] - 0.3*[verb] + noise
    // Morpheme length is constant on purpose, to show the drop path.
    let mut rows = Vec::new();
    for i in 0..120 {
        let word = format!("w{i:03}");
        let seq = parse_transcription(&word, "T AH", &inventory)?;
        let mut row = LexiconRow::new(&word, seq, 1);
        let surprisal = 2.0 + 3.0 * (i as f64 / 119.0) + noise(0.2);
        // Correlated with surprisal so the simple fit below inherits
        // a visible omitted-variable bias.
        let iconicity = 0.5 + 0.8 * surprisal + noise(0.8);
        let pos = ["Adjective", "Noun", "Verb"][i % 3];
        let pos_effect = match pos {
            "Noun" => 0.6,
            "Verb" => -0.3,
            _ => 0.0,
        };
        row.average_surprisal = Some(surprisal);
        row.iconicity = Some(iconicity);
        row.pos = Some(pos.to_string());
        row.morpheme_length = Some(2);
        row.humor = Some(2.0 + 0.8 * surprisal - 0.5 * iconicity + pos_effect + noise(0.4));
        rows.push(row);
    }
    // A few rows with a missing predictor get listwise-deleted.
    for row in rows.iter_mut().take(5) {
        row.iconicity = None;
    }

    let spec = ModelSpec::new(
        Field::Humor,
        vec![
            Field::AverageSurprisal,
            Field::IconicityRating,
            Field::Pos,
            Field::MorphemeLength,
        ],
    );
    println!("fitting {}", spec.formula());
    let fit = fit_model(&rows, &spec)?;

    // PoS expands to one indicator per non-reference level; the
    // reference is the alphabetically first level in the used rows,
    // so Adjective is absorbed into the intercept here.
    println!("\n{}", render_fit_text(&fit));

    println!("true coefficients: intercept 2.0, surprisal 0.8, iconicity -0.5,");
    println!("                   PoS_Noun 0.6, PoS_Verb -0.3");
    for dropped in &fit.dropped_columns {
        println!("dropped {} ({})", dropped.name, dropped.reason);
    }

    // The same machinery drives one-predictor fits.
    let simple = simple_fit(&rows, Field::Humor, Field::AverageSurprisal)?;
    let slope = &simple.terms[1];
    println!(
        "\nsimple fit Humor ~ Average_Surprisal: slope {:.3} (p = {:.2e} {})",
        slope.estimate, slope.p_value, slope.stars
    );
    println!(
        "note the omitted-variable bias relative to the full model's {:.3}",
        fit.terms[1].estimate
    );

    Ok(())
}
