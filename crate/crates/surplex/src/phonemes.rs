//! Phoneme inventory, transcription parsing, and bigram extraction.
//!
//! Transcriptions arrive as whitespace-separated ARPABET tokens with
//! optional trailing stress digits (`K AE1 T`). Stress digits 0/1/2 are
//! stripped so that `AE0`, `AE1`, and `AE2` all collapse to the phoneme
//! `AE`, and every stripped symbol must be a member of the active
//! [`PhonemeInventory`].

use std::collections::BTreeSet;
use std::fmt;
use std::io::BufRead;

use thiserror::Error;

/// The 39-symbol General American ARPABET inventory shipped with the
/// crate, one symbol per line. Loaded by [`PhonemeInventory::default_english`].
pub const DEFAULT_INVENTORY: &str = include_str!("../resources/arpabet39.txt");

/// Symbol used for word boundaries when boundary-augmented counting is
/// enabled. Never produced by [`parse_transcription`]; it exists only
/// inside bigram models built with boundaries switched on.
pub(crate) const BOUNDARY_SYMBOL: &str = "#";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PhonemeError {
    #[error("empty transcription for word {word:?}")]
    EmptyTranscription { word: String },
    #[error("unknown phoneme symbol {symbol:?} in transcription for {word:?}")]
    UnknownSymbol { word: String, symbol: String },
    #[error("invalid inventory symbol {symbol:?} on line {line}: {reason}")]
    InvalidInventorySymbol {
        line: usize,
        symbol: String,
        reason: String,
    },
    #[error("phoneme inventory is empty")]
    EmptyInventory,
}

/// A single canonical phoneme symbol: non-empty, no digits, no
/// whitespace, and (for parsed symbols) a member of the inventory that
/// validated it.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Phoneme(Box<str>);

impl Phoneme {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The reserved boundary pseudo-phoneme. Not an inventory member;
    /// used only by boundary-augmented bigram models.
    pub(crate) fn boundary() -> Phoneme {
        Phoneme(BOUNDARY_SYMBOL.into())
    }
}

impl fmt::Display for Phoneme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Phoneme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

/// The set of valid phoneme symbols. All transcription parsing is
/// checked against one inventory; symbols outside it are rejected
/// rather than silently passed through.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhonemeInventory {
    symbols: BTreeSet<Box<str>>,
}

impl PhonemeInventory {
    /// The bundled 39-symbol General American inventory.
    pub fn default_english() -> PhonemeInventory {
        // The bundled resource is validated by tests; parsing it cannot fail.
        PhonemeInventory::parse(DEFAULT_INVENTORY).expect("bundled inventory is valid")
    }

    /// Parse an inventory from text: one symbol per line, blank lines
    /// ignored, `#` starts a comment line.
    pub fn parse(text: &str) -> Result<PhonemeInventory, PhonemeError> {
        let mut symbols = BTreeSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            validate_symbol(line).map_err(|reason| PhonemeError::InvalidInventorySymbol {
                line: idx + 1,
                symbol: line.to_string(),
                reason,
            })?;
            symbols.insert(Box::from(line));
        }
        if symbols.is_empty() {
            return Err(PhonemeError::EmptyInventory);
        }
        Ok(PhonemeInventory { symbols })
    }

    /// Read an inventory from a reader in the same one-symbol-per-line format.
    pub fn from_reader(reader: impl BufRead) -> Result<PhonemeInventory, PhonemeError> {
        let mut text = String::new();
        for line in reader.lines() {
            let line = line.map_err(|e| PhonemeError::InvalidInventorySymbol {
                line: 0,
                symbol: String::new(),
                reason: e.to_string(),
            })?;
            text.push_str(&line);
            text.push('\n');
        }
        PhonemeInventory::parse(&text)
    }

    pub fn contains(&self, symbol: &str) -> bool {
        self.symbols.contains(symbol)
    }

    /// Look up a symbol and return it as a validated [`Phoneme`].
    pub fn phoneme(&self, symbol: &str) -> Option<Phoneme> {
        self.symbols.get(symbol).map(|s| Phoneme(s.clone()))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.symbols.iter().map(|s| s.as_ref())
    }
}

fn validate_symbol(symbol: &str) -> Result<(), String> {
    if symbol.is_empty() {
        return Err("symbol is empty".to_string());
    }
    if symbol.chars().any(|c| c.is_ascii_digit()) {
        return Err("symbol contains a digit".to_string());
    }
    if symbol.chars().any(char::is_whitespace) {
        return Err("symbol contains whitespace".to_string());
    }
    Ok(())
}

/// A word's pronunciation: at least one phoneme, in order, plus the
/// orthographic key it was parsed for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhonemeSequence {
    phonemes: Vec<Phoneme>,
    source_word: String,
}

impl PhonemeSequence {
    /// Build a sequence from already-validated phonemes. Fails on an
    /// empty list; sequences always hold at least one phoneme.
    pub fn new(source_word: &str, phonemes: Vec<Phoneme>) -> Result<PhonemeSequence, PhonemeError> {
        if phonemes.is_empty() {
            return Err(PhonemeError::EmptyTranscription {
                word: source_word.to_string(),
            });
        }
        Ok(PhonemeSequence {
            phonemes,
            source_word: source_word.to_string(),
        })
    }

    pub fn phonemes(&self) -> &[Phoneme] {
        &self.phonemes
    }

    pub fn source_word(&self) -> &str {
        &self.source_word
    }

    /// Number of phonemes; always ≥ 1.
    pub fn len(&self) -> usize {
        self.phonemes.len()
    }

    /// Kept for API symmetry; sequences are never empty.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of adjacent bigrams: exactly `len() - 1`.
    pub fn bigram_count(&self) -> usize {
        self.phonemes.len() - 1
    }

    /// Adjacent ordered pairs, left to right, without allocation.
    pub fn bigrams(&self) -> impl Iterator<Item = (&Phoneme, &Phoneme)> {
        self.phonemes.windows(2).map(|w| (&w[0], &w[1]))
    }

    /// Space-joined symbol rendering, the inverse of [`parse_transcription`].
    pub fn transcription(&self) -> String {
        let mut out = String::new();
        for (i, p) in self.phonemes.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(p.as_str());
        }
        out
    }
}

/// Parse a whitespace-separated transcription, stripping trailing
/// stress digits (0/1/2) from each token and validating every stripped
/// symbol against the inventory.
///
/// `"K AE1 T"` parses to `[K, AE, T]`. Unknown symbols are rejected by
/// name; an input with no tokens is an error.
pub fn parse_transcription(
    word: &str,
    raw: &str,
    inventory: &PhonemeInventory,
) -> Result<PhonemeSequence, PhonemeError> {
    let mut phonemes = Vec::new();
    for token in raw.split_whitespace() {
        let stripped = token.trim_end_matches(['0', '1', '2']);
        match inventory.phoneme(stripped) {
            Some(p) => phonemes.push(p),
            None => {
                return Err(PhonemeError::UnknownSymbol {
                    word: word.to_string(),
                    symbol: token.to_string(),
                })
            }
        }
    }
    PhonemeSequence::new(word, phonemes)
}

/// All adjacent ordered phoneme pairs of a sequence: exactly
/// `len − 1` of them, in order. A one-phoneme sequence yields none.
pub fn extract_bigrams(seq: &PhonemeSequence) -> Vec<(Phoneme, Phoneme)> {
    seq.bigrams().map(|(a, b)| (a.clone(), b.clone())).collect()
}
