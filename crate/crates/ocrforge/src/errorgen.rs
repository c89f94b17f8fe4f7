//! Synthetic OCR error injection.
//!
//! Corrupts clean text with random character errors (deletions, insertions,
//! adjacent swaps) and, when a [`ConfusionTable`] is supplied, with
//! corpus-specific confusions sampled proportionally to their learned
//! frequencies. Without a table only the random errors are produced.
//!
//! Each line is processed independently, left to right, from a SplitMix64
//! stream seeded with `splitmix64(seed XOR line_index)`; documents derive
//! their seeds the same way from the document ordinal. Given the same
//! configuration the output is byte-identical regardless of thread count
//! or processing order.
//!
//! Per character, in this fixed order:
//! 1. with probability `p_delete` the character is deleted;
//! 2. otherwise, if the character occurs as a target (correct) character
//!    in the table, with probability `p_confusion` it is replaced by a
//!    source character sampled proportionally to that target's counts;
//! 3. otherwise, with probability `p_swap`, it is swapped with a distinct
//!    successor (the successor is consumed by the same step);
//! 4. after every consumed chunk, with probability `p_insert`, a uniform
//!    character from the alphabet is appended.
//!
//! A character suffers at most one in-place fate per pass, so rates stay
//! interpretable and the log replays unambiguously.

use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::confusion::ConfusionTable;
use crate::rng::{derive_seed, SplitMix64};
use crate::text::{Doc, ParallelPair, Text};

/// Error-injection rates, alphabet, and seed.
#[derive(Debug, Clone, PartialEq)]
pub struct InjectionConfig {
    /// Deletion probability per character.
    pub p_delete: f64,
    /// Insertion probability per consumed chunk.
    pub p_insert: f64,
    /// Swap probability per eligible adjacent pair.
    pub p_swap: f64,
    /// Confusion probability per character that is a table target.
    pub p_confusion: f64,
    /// Characters random insertions draw from. Empty means "derive from
    /// the input": every character observed in the clean text except line
    /// separators (`\n`, `\r`), so corruption never changes line structure.
    pub alphabet: Vec<char>,
    pub seed: u64,
}

impl Default for InjectionConfig {
    fn default() -> Self {
        Self {
            p_delete: 0.01,
            p_insert: 0.01,
            p_swap: 0.005,
            p_confusion: 0.06,
            alphabet: Vec::new(),
            seed: 0,
        }
    }
}

impl InjectionConfig {
    pub fn validate(&self) -> Result<(), InjectError> {
        for (name, p) in [
            ("p_delete", self.p_delete),
            ("p_insert", self.p_insert),
            ("p_swap", self.p_swap),
            ("p_confusion", self.p_confusion),
        ] {
            if !(0.0..=1.0).contains(&p) || p.is_nan() {
                return Err(InjectError::BadProbability {
                    name,
                    value: p,
                });
            }
        }
        if self.p_delete + self.p_confusion > 1.0 {
            return Err(InjectError::RateBudget {
                p_delete: self.p_delete,
                p_confusion: self.p_confusion,
            });
        }
        Ok(())
    }

    fn with_seed(&self, seed: u64) -> Self {
        Self {
            seed,
            ..self.clone()
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum InjectError {
    #[error("{name} must be a probability in [0, 1], got {value}")]
    BadProbability { name: &'static str, value: f64 },
    #[error("p_delete ({p_delete}) + p_confusion ({p_confusion}) must not exceed 1")]
    RateBudget { p_delete: f64, p_confusion: f64 },
    #[error("cannot generate a dataset from an empty corpus")]
    EmptyCorpus,
}

/// Kind of an injected error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    Delete,
    Insert,
    Swap,
    Confuse,
}

/// One injected error. `line` and `col` address the clean text: `col` is
/// the character index (in the clean line) of the affected character, or,
/// for `Insert`, of the chunk after which the character was added. `Swap`
/// stores the pair as `original` (first) and `replacement` (successor).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorEntry {
    pub line: usize,
    pub col: usize,
    pub kind: ErrorKind,
    pub original: Option<char>,
    pub replacement: Option<char>,
}

/// Record of every error injected into one text, in emission order.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ErrorLog {
    pub entries: Vec<ErrorEntry>,
}

impl ErrorLog {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Applies the log to the clean text and reproduces the corrupted
    /// text exactly.
    pub fn replay(&self, clean: &Text) -> Text {
        let lines = clean.lines();
        let mut out_lines: Vec<String> = Vec::with_capacity(lines.len());
        let mut entry_iter = self.entries.iter().peekable();
        for (line_index, line) in lines.iter().enumerate() {
            let chars: Vec<char> = line.chars().collect();
            let mut out = String::with_capacity(line.len());
            let mut p = 0;
            while let Some(entry) = entry_iter.peek() {
                if entry.line != line_index {
                    break;
                }
                let entry = entry_iter.next().unwrap();
                if entry.kind == ErrorKind::Insert {
                    // the inserted char lands after clean char `col`
                    while p <= entry.col && p < chars.len() {
                        out.push(chars[p]);
                        p += 1;
                    }
                    out.push(entry.replacement.expect("insert carries a replacement"));
                    continue;
                }
                while p < entry.col {
                    out.push(chars[p]);
                    p += 1;
                }
                match entry.kind {
                    ErrorKind::Delete => p += 1,
                    ErrorKind::Confuse => {
                        out.push(entry.replacement.expect("confuse carries a replacement"));
                        p += 1;
                    }
                    ErrorKind::Swap => {
                        out.push(chars[p + 1]);
                        out.push(chars[p]);
                        p += 2;
                    }
                    ErrorKind::Insert => unreachable!(),
                }
            }
            out.extend(&chars[p..]);
            out_lines.push(out);
        }
        Text::from_lines(&out_lines)
    }
}

/// Opportunity and event counts per error kind, aggregated over a run.
///
/// Events are binomial over their opportunities at the configured rate,
/// which is what the rate-fidelity checks measure.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct InjectionStats {
    pub chars: u64,
    pub delete_opportunities: u64,
    pub deletes: u64,
    pub confuse_opportunities: u64,
    pub confusions: u64,
    pub swap_opportunities: u64,
    pub swaps: u64,
    pub insert_opportunities: u64,
    pub inserts: u64,
}

impl InjectionStats {
    pub fn total_events(&self) -> u64 {
        self.deletes + self.confusions + self.swaps + self.inserts
    }

    fn absorb(&mut self, other: &InjectionStats) {
        self.chars += other.chars;
        self.delete_opportunities += other.delete_opportunities;
        self.deletes += other.deletes;
        self.confuse_opportunities += other.confuse_opportunities;
        self.confusions += other.confusions;
        self.swap_opportunities += other.swap_opportunities;
        self.swaps += other.swaps;
        self.insert_opportunities += other.insert_opportunities;
        self.inserts += other.inserts;
    }
}

/// Confusion sampler in injection direction: replaces a true (target)
/// character with one of its historically observed misreadings.
struct ConfusionSampler {
    by_target: BTreeMap<char, (Vec<(char, u64)>, u64)>,
}

impl ConfusionSampler {
    fn new(table: &ConfusionTable) -> Option<Self> {
        if table.distinct_substitutions() == 0 {
            return None;
        }
        let mut by_target: BTreeMap<char, (Vec<(char, u64)>, u64)> = BTreeMap::new();
        for (source, target, count) in table.substitutions() {
            let entry = by_target.entry(target).or_insert_with(|| (Vec::new(), 0));
            entry.0.push((source, count));
            entry.1 += count;
        }
        Some(Self { by_target })
    }

    fn is_target(&self, c: char) -> bool {
        self.by_target.contains_key(&c)
    }

    fn sample_source(&self, target: char, rng: &mut SplitMix64) -> char {
        let (sources, total) = &self.by_target[&target];
        let mut pick = rng.next_u64() % total;
        for &(source, count) in sources {
            if pick < count {
                return source;
            }
            pick -= count;
        }
        unreachable!("cumulative walk covers the total")
    }
}

/// Output of [`inject_errors`].
#[derive(Debug, Clone)]
pub struct Corrupted {
    pub text: Text,
    pub log: ErrorLog,
    pub stats: InjectionStats,
}

/// Alphabet derivation: every character in the text except line
/// separators, sorted and deduplicated.
pub fn derive_alphabet<'a>(texts: impl IntoIterator<Item = &'a Text>) -> Vec<char> {
    let mut alphabet: Vec<char> = texts
        .into_iter()
        .flat_map(|t| t.chars())
        .filter(|&c| c != '\n' && c != '\r')
        .collect();
    alphabet.sort_unstable();
    alphabet.dedup();
    alphabet
}

/// Corrupts one text per the module-level procedure.
pub fn inject_errors(
    clean: &Text,
    cfg: &InjectionConfig,
    table: Option<&ConfusionTable>,
) -> Result<Corrupted, InjectError> {
    cfg.validate()?;
    let alphabet = if cfg.alphabet.is_empty() {
        derive_alphabet([clean])
    } else {
        let mut a = cfg.alphabet.clone();
        a.sort_unstable();
        a.dedup();
        a
    };
    let sampler = table.and_then(ConfusionSampler::new);

    let mut log = ErrorLog::default();
    let mut stats = InjectionStats::default();
    let corrupted_lines: Vec<String> = clean
        .lines()
        .iter()
        .enumerate()
        .map(|(line_index, line)| {
            let mut rng = SplitMix64::new(derive_seed(cfg.seed, line_index as u64));
            corrupt_line(
                line,
                line_index,
                cfg,
                &alphabet,
                sampler.as_ref(),
                &mut rng,
                &mut log,
                &mut stats,
            )
        })
        .collect();

    Ok(Corrupted {
        text: Text::from_lines(&corrupted_lines),
        log,
        stats,
    })
}

#[allow(clippy::too_many_arguments)]
fn corrupt_line(
    line: &str,
    line_index: usize,
    cfg: &InjectionConfig,
    alphabet: &[char],
    sampler: Option<&ConfusionSampler>,
    rng: &mut SplitMix64,
    log: &mut ErrorLog,
    stats: &mut InjectionStats,
) -> String {
    let chars: Vec<char> = line.chars().collect();
    stats.chars += chars.len() as u64;
    let mut out = String::with_capacity(line.len());
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i;
        let mut consumed = 1;
        let mut in_place = false;

        stats.delete_opportunities += 1;
        if rng.next_float() < cfg.p_delete {
            log.entries.push(ErrorEntry {
                line: line_index,
                col,
                kind: ErrorKind::Delete,
                original: Some(c),
                replacement: None,
            });
            stats.deletes += 1;
            in_place = true;
        }

        if !in_place {
            if let Some(sampler) = sampler.filter(|s| s.is_target(c)) {
                stats.confuse_opportunities += 1;
                if rng.next_float() < cfg.p_confusion {
                    let source = sampler.sample_source(c, rng);
                    out.push(source);
                    log.entries.push(ErrorEntry {
                        line: line_index,
                        col,
                        kind: ErrorKind::Confuse,
                        original: Some(c),
                        replacement: Some(source),
                    });
                    stats.confusions += 1;
                    in_place = true;
                }
            }
        }

        if !in_place {
            // a swap of identical neighbors would be a no-op, not an error
            let successor = chars.get(i + 1).copied().filter(|&s| s != c);
            if let Some(successor) = successor {
                stats.swap_opportunities += 1;
                if rng.next_float() < cfg.p_swap {
                    out.push(successor);
                    out.push(c);
                    log.entries.push(ErrorEntry {
                        line: line_index,
                        col,
                        kind: ErrorKind::Swap,
                        original: Some(c),
                        replacement: Some(successor),
                    });
                    stats.swaps += 1;
                    consumed = 2;
                    in_place = true;
                }
            }
        }

        if !in_place {
            out.push(c);
        }
        i += consumed;

        if !alphabet.is_empty() {
            stats.insert_opportunities += 1;
            if rng.next_float() < cfg.p_insert {
                let inserted = alphabet[rng.next_range(alphabet.len())];
                out.push(inserted);
                log.entries.push(ErrorEntry {
                    line: line_index,
                    col,
                    kind: ErrorKind::Insert,
                    original: None,
                    replacement: Some(inserted),
                });
                stats.inserts += 1;
            }
        }
    }
    out
}

/// Output of [`generate_dataset`]: one (corrupted, clean) pair and one
/// log per input document, plus aggregate statistics.
#[derive(Debug, Clone)]
pub struct GeneratedDataset {
    pub pairs: Vec<ParallelPair>,
    pub logs: Vec<ErrorLog>,
    pub stats: InjectionStats,
}

/// Corrupts a whole corpus, one [`ParallelPair`] per document
/// (`ocred` = corrupted, `golden` = clean).
///
/// Document `d` is injected with seed `splitmix64(cfg.seed XOR d)`, so the
/// result is independent of processing order and thread count. When
/// `cfg.alphabet` is empty the alphabet is derived once from the whole
/// corpus.
pub fn generate_dataset(
    clean: &[Doc],
    cfg: &InjectionConfig,
    table: Option<&ConfusionTable>,
) -> Result<GeneratedDataset, InjectError> {
    if clean.is_empty() {
        return Err(InjectError::EmptyCorpus);
    }
    cfg.validate()?;
    let alphabet = if cfg.alphabet.is_empty() {
        derive_alphabet(clean.iter().map(|d| &d.text))
    } else {
        cfg.alphabet.clone()
    };

    let corrupted: Result<Vec<Corrupted>, InjectError> = clean
        .par_iter()
        .enumerate()
        .map(|(ordinal, doc)| {
            let mut doc_cfg = cfg.with_seed(derive_seed(cfg.seed, ordinal as u64));
            doc_cfg.alphabet = alphabet.clone();
            inject_errors(&doc.text, &doc_cfg, table)
        })
        .collect();

    let mut pairs = Vec::with_capacity(clean.len());
    let mut logs = Vec::with_capacity(clean.len());
    let mut stats = InjectionStats::default();
    for (doc, corrupted) in clean.iter().zip(corrupted?) {
        stats.absorb(&corrupted.stats);
        pairs.push(ParallelPair {
            ocred: corrupted.text,
            golden: doc.text.clone(),
            doc_id: doc.id.clone(),
        });
        logs.push(corrupted.log);
    }
    Ok(GeneratedDataset { pairs, logs, stats })
}

#[derive(Serialize)]
struct LogRecord<'a> {
    doc: &'a str,
    line: usize,
    col: usize,
    kind: ErrorKind,
    original: Option<char>,
    replacement: Option<char>,
}

/// Writes error logs as JSONL, one entry per line, tagged with the
/// document id.
pub fn write_logs_jsonl<W: Write>(
    mut w: W,
    logs: &[(&str, &ErrorLog)],
) -> std::io::Result<()> {
    for (doc, log) in logs {
        for entry in &log.entries {
            let record = LogRecord {
                doc,
                line: entry.line,
                col: entry.col,
                kind: entry.kind,
                original: entry.original,
                replacement: entry.replacement,
            };
            serde_json::to_writer(&mut w, &record)?;
            w.write_all(b"\n")?;
        }
    }
    Ok(())
}
