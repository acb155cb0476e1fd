//! Phonemic-surprisal lexicon tooling: build a word-level lexicon from
//! a pronouncing dictionary, frequency corpus, and rating norms;
//! annotate each word with its average phonemic bigram surprisal; and
//! fit ordinary-least-squares models relating surprisal to emotion,
//! humor, and memory ratings.

pub mod cli;
pub mod config;
pub mod ingest;
pub mod manifest;
pub mod phonemes;
pub mod pipeline;
pub mod regress;
pub mod render;
pub mod suites;
pub mod surprisal;
