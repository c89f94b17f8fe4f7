//! # ocrforge
//!
//! A toolkit for OCR post-correction experiments on historical texts:
//!
//! * learn corpus-specific character-confusion statistics from a parallel
//!   (OCRed, golden-standard) corpus via global character alignment;
//! * synthesize realistic corrupted/clean training datasets by injecting
//!   random errors plus frequency-weighted learned confusions into clean
//!   text;
//! * split and export line-pair datasets for external trainers;
//! * evaluate correction output with character-level accuracy increase
//!   and alignment-based word accuracy;
//! * demonstrate the full loop with a noisy-channel baseline corrector.
//!
//! Everything randomized is seeded through a fixed SplitMix64 stream, so
//! pipelines reproduce byte-identically across platforms and thread
//! counts.
//!
//! Start with the runnable programs in `examples/`: each one covers a
//! major capability end to end on self-generated fixture data.

pub mod align;
pub mod cli;
pub mod confusion;
pub mod corrector;
pub mod dataset;
pub mod errorgen;
pub mod metrics;
pub mod rng;
pub mod text;

pub use align::{levenshtein, levenshtein_str, nw_align, word_align, Alignment, AlignOp, Scoring};
pub use confusion::{learn_confusions, top_k, ConfusionTable, LearnOptions, LearnReport};
pub use corrector::{correct_line, correct_text, ChannelModel, CharLM};
pub use dataset::{build_line_pairs, split_dataset, LinePairDataset, Split};
pub use errorgen::{generate_dataset, inject_errors, ErrorLog, InjectionConfig};
pub use metrics::{acc_increase, evaluate_corrector, word_accuracy, AccuracyReport};
pub use rng::SplitMix64;
pub use text::{tokenize, DelimiterSet, Doc, ParallelPair, Text};
