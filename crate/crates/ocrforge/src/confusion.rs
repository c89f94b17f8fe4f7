//! Corpus-specific OCR confusion statistics.
//!
//! A [`ConfusionTable`] counts, over aligned (OCRed, golden) pairs, which
//! characters the OCR engine produced in place of which true characters.
//! Orientation is golden-is-truth: a `Substitute(a, b)` column with `a`
//! from the OCRed side and `b` from the golden side is recorded as "OCR
//! produced `a` where the truth is `b`".

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::align::{align_texts, AlignError, AlignOp, Scoring, DEFAULT_CELL_LIMIT};
use crate::rng::{shuffle, SplitMix64};
use crate::text::{escape_field, unescape_field, ParallelPair};

/// Learned (erroneous char, correct char) statistics plus standalone
/// deletion/insertion counts.
///
/// Substitution keys are `(source, target)` where `source` is the OCR
/// output character and `target` the golden-standard character. Identity
/// pairs are never stored, counts are always at least 1, and
/// `total_substitutions` is the sum of all substitution counts.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConfusionTable {
    substitutions: BTreeMap<(char, char), u64>,
    deletions: BTreeMap<char, u64>,
    insertions: BTreeMap<char, u64>,
    total_substitutions: u64,
}

impl ConfusionTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `count` observations of OCR producing `source` where the truth
    /// is `target`. Rejects identity pairs and zero counts.
    pub fn add_substitution(
        &mut self,
        source: char,
        target: char,
        count: u64,
    ) -> Result<(), ConfusionError> {
        if source == target {
            return Err(ConfusionError::IdentityPair(source));
        }
        if count == 0 {
            return Err(ConfusionError::ZeroCount);
        }
        *self.substitutions.entry((source, target)).or_insert(0) += count;
        self.total_substitutions += count;
        Ok(())
    }

    pub fn add_deletion(&mut self, source: char, count: u64) -> Result<(), ConfusionError> {
        if count == 0 {
            return Err(ConfusionError::ZeroCount);
        }
        *self.deletions.entry(source).or_insert(0) += count;
        Ok(())
    }

    pub fn add_insertion(&mut self, target: char, count: u64) -> Result<(), ConfusionError> {
        if count == 0 {
            return Err(ConfusionError::ZeroCount);
        }
        *self.insertions.entry(target).or_insert(0) += count;
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.substitutions.is_empty() && self.deletions.is_empty() && self.insertions.is_empty()
    }

    /// Substitution entries in code-point order of (source, target).
    pub fn substitutions(&self) -> impl Iterator<Item = (char, char, u64)> + '_ {
        self.substitutions.iter().map(|(&(s, t), &c)| (s, t, c))
    }

    pub fn deletions(&self) -> impl Iterator<Item = (char, u64)> + '_ {
        self.deletions.iter().map(|(&c, &n)| (c, n))
    }

    pub fn insertions(&self) -> impl Iterator<Item = (char, u64)> + '_ {
        self.insertions.iter().map(|(&c, &n)| (c, n))
    }

    pub fn substitution_count(&self, source: char, target: char) -> u64 {
        self.substitutions.get(&(source, target)).copied().unwrap_or(0)
    }

    pub fn distinct_substitutions(&self) -> usize {
        self.substitutions.len()
    }

    pub fn total_substitutions(&self) -> u64 {
        self.total_substitutions
    }

    /// Share of this pair among all substitutions, in `(0, 1]`.
    pub fn relative_frequency(&self, source: char, target: char) -> f64 {
        if self.total_substitutions == 0 {
            return 0.0;
        }
        self.substitution_count(source, target) as f64 / self.total_substitutions as f64
    }

    /// True when `c` occurs as a target (correct character) of at least
    /// one substitution.
    pub fn is_target(&self, c: char) -> bool {
        self.substitutions.keys().any(|&(_, t)| t == c)
    }

    /// All (source, count) entries whose target is `b`, in code-point
    /// order of the source.
    pub fn sources_for(&self, b: char) -> Vec<(char, u64)> {
        self.substitutions
            .iter()
            .filter(|((_, t), _)| *t == b)
            .map(|(&(s, _), &c)| (s, c))
            .collect()
    }

    fn merge(&mut self, other: ConfusionTable) {
        for ((s, t), c) in other.substitutions {
            *self.substitutions.entry((s, t)).or_insert(0) += c;
        }
        for (c, n) in other.deletions {
            *self.deletions.entry(c).or_insert(0) += n;
        }
        for (c, n) in other.insertions {
            *self.insertions.entry(c).or_insert(0) += n;
        }
        self.total_substitutions += other.total_substitutions;
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfusionError {
    #[error("cannot learn from an empty pair list")]
    EmptyCorpus,
    #[error("learn fraction must be in (0, 1], got {0}")]
    BadFraction(f64),
    #[error("identity pair ({0} -> {0}) is not a confusion")]
    IdentityPair(char),
    #[error("confusion counts must be positive")]
    ZeroCount,
    #[error(transparent)]
    Align(#[from] AlignError),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// Parameters for [`learn_confusions`].
#[derive(Debug, Clone)]
pub struct LearnOptions {
    /// Fraction of the corpus (after a seeded shuffle) used for learning.
    pub fraction: f64,
    /// Seed of the shuffle that picks the learning subset.
    pub seed: u64,
    pub scoring: Scoring,
    pub cell_limit: usize,
}

impl Default for LearnOptions {
    fn default() -> Self {
        Self {
            fraction: 0.7,
            seed: 0,
            scoring: Scoring::default(),
            cell_limit: DEFAULT_CELL_LIMIT,
        }
    }
}

/// Result of a learning pass.
#[derive(Debug, Clone)]
pub struct LearnReport {
    pub table: ConfusionTable,
    /// Pairs actually aligned and counted.
    pub pairs_used: usize,
    /// Pairs in the learning subset skipped because one side was empty.
    pub pairs_skipped: usize,
}

/// Learns a [`ConfusionTable`] from aligned parallel pairs.
///
/// The learning subset is the first `ceil(fraction * n)` pairs after a
/// SplitMix64 Fisher-Yates shuffle of the pair order. Each pair is
/// character-aligned (line-wise when line counts agree); every
/// `Substitute(a, b)` column increments the `(a, b)` substitution count,
/// `Delete(a)` the deletion count of `a`, and `Insert(b)` the insertion
/// count of `b`.
pub fn learn_confusions(
    pairs: &[ParallelPair],
    opts: &LearnOptions,
) -> Result<LearnReport, ConfusionError> {
    if pairs.is_empty() {
        return Err(ConfusionError::EmptyCorpus);
    }
    if !(opts.fraction > 0.0 && opts.fraction <= 1.0) {
        return Err(ConfusionError::BadFraction(opts.fraction));
    }

    let mut order: Vec<usize> = (0..pairs.len()).collect();
    shuffle(&mut order, &mut SplitMix64::new(opts.seed));
    let take = (opts.fraction * pairs.len() as f64).ceil() as usize;
    let selected = &order[..take.min(order.len())];

    let counted: Result<Vec<Option<ConfusionTable>>, ConfusionError> = selected
        .par_iter()
        .map(|&idx| {
            let pair = &pairs[idx];
            if pair.ocred.is_empty() || pair.golden.is_empty() {
                return Ok(None);
            }
            let mut table = ConfusionTable::new();
            for alignment in align_texts(&pair.ocred, &pair.golden, &opts.scoring, opts.cell_limit)? {
                for col in alignment.columns {
                    match col {
                        AlignOp::Substitute(a, b) => {
                            *table.substitutions.entry((a, b)).or_insert(0) += 1;
                            table.total_substitutions += 1;
                        }
                        AlignOp::Delete(a) => *table.deletions.entry(a).or_insert(0) += 1,
                        AlignOp::Insert(b) => *table.insertions.entry(b).or_insert(0) += 1,
                        AlignOp::Match(_) => {}
                    }
                }
            }
            Ok(Some(table))
        })
        .collect();

    let mut table = ConfusionTable::new();
    let mut pairs_used = 0;
    let mut pairs_skipped = 0;
    for item in counted? {
        match item {
            Some(partial) => {
                table.merge(partial);
                pairs_used += 1;
            }
            None => pairs_skipped += 1,
        }
    }
    Ok(LearnReport {
        table,
        pairs_used,
        pairs_skipped,
    })
}

/// The `k` most frequent substitutions, count-descending with ties broken
/// by code-point order of (source, target).
pub fn top_k(table: &ConfusionTable, k: usize) -> Vec<(char, char, u64)> {
    let mut entries: Vec<(char, char, u64)> = table.substitutions().collect();
    entries.sort_by(|a, b| b.2.cmp(&a.2).then_with(|| (a.0, a.1).cmp(&(b.0, b.1))));
    entries.truncate(k);
    entries
}

fn ranked<K: Ord + Copy>(map: &BTreeMap<K, u64>) -> Vec<(K, u64)> {
    let mut entries: Vec<(K, u64)> = map.iter().map(|(&k, &v)| (k, v)).collect();
    entries.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    entries
}

/// Renders the table in its TSV interchange form: substitution rows
/// `source<TAB>target<TAB>count` in [`top_k`] order, then `#DELETIONS`
/// and `#INSERTIONS` sections of `char<TAB>count` rows. Tab, line feed,
/// and backslash inside the character fields are backslash-escaped.
pub fn table_to_tsv(table: &ConfusionTable) -> String {
    let mut out = String::new();
    for (source, target, count) in top_k(table, usize::MAX) {
        out.push_str(&escape_field(&source.to_string()));
        out.push('\t');
        out.push_str(&escape_field(&target.to_string()));
        out.push('\t');
        out.push_str(&count.to_string());
        out.push('\n');
    }
    out.push_str("#DELETIONS\n");
    for (c, count) in ranked(&table.deletions) {
        out.push_str(&escape_field(&c.to_string()));
        out.push('\t');
        out.push_str(&count.to_string());
        out.push('\n');
    }
    out.push_str("#INSERTIONS\n");
    for (c, count) in ranked(&table.insertions) {
        out.push_str(&escape_field(&c.to_string()));
        out.push('\t');
        out.push_str(&count.to_string());
        out.push('\n');
    }
    out
}

/// Parses the TSV form produced by [`table_to_tsv`].
pub fn table_from_tsv(content: &str) -> Result<ConfusionTable, ConfusionError> {
    #[derive(PartialEq)]
    enum Section {
        Substitutions,
        Deletions,
        Insertions,
    }

    let parse_char = |field: &str, line: usize| -> Result<char, ConfusionError> {
        let unescaped = unescape_field(field).map_err(|reason| ConfusionError::Parse {
            line,
            reason,
        })?;
        let mut chars = unescaped.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => Ok(c),
            _ => Err(ConfusionError::Parse {
                line,
                reason: format!("expected a single character, got {unescaped:?}"),
            }),
        }
    };
    let parse_count = |field: &str, line: usize| -> Result<u64, ConfusionError> {
        let count: u64 = field.parse().map_err(|_| ConfusionError::Parse {
            line,
            reason: format!("invalid count {field:?}"),
        })?;
        if count == 0 {
            return Err(ConfusionError::Parse {
                line,
                reason: "count must be positive".to_string(),
            });
        }
        Ok(count)
    };

    let mut table = ConfusionTable::new();
    let mut section = Section::Substitutions;
    for (i, raw) in content.lines().enumerate() {
        let line_no = i + 1;
        match raw {
            "#DELETIONS" => {
                section = Section::Deletions;
                continue;
            }
            "#INSERTIONS" => {
                section = Section::Insertions;
                continue;
            }
            "" => continue,
            _ => {}
        }
        let cols: Vec<&str> = raw.split('\t').collect();
        match section {
            Section::Substitutions => {
                if cols.len() != 3 {
                    return Err(ConfusionError::Parse {
                        line: line_no,
                        reason: format!("expected 3 columns, got {}", cols.len()),
                    });
                }
                let source = parse_char(cols[0], line_no)?;
                let target = parse_char(cols[1], line_no)?;
                let count = parse_count(cols[2], line_no)?;
                if source == target {
                    return Err(ConfusionError::Parse {
                        line: line_no,
                        reason: format!("identity pair {source:?}"),
                    });
                }
                table.add_substitution(source, target, count)?;
            }
            Section::Deletions | Section::Insertions => {
                if cols.len() != 2 {
                    return Err(ConfusionError::Parse {
                        line: line_no,
                        reason: format!("expected 2 columns, got {}", cols.len()),
                    });
                }
                let c = parse_char(cols[0], line_no)?;
                let count = parse_count(cols[1], line_no)?;
                if section == Section::Deletions {
                    table.add_deletion(c, count)?;
                } else {
                    table.add_insertion(c, count)?;
                }
            }
        }
    }
    Ok(table)
}

pub fn save_table(table: &ConfusionTable, path: &Path) -> Result<(), ConfusionError> {
    fs::write(path, table_to_tsv(table)).map_err(|source| ConfusionError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_table(path: &Path) -> Result<ConfusionTable, ConfusionError> {
    let content = fs::read_to_string(path).map_err(|source| ConfusionError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    table_from_tsv(&content)
}
