//! Noisy-channel baseline corrector.
//!
//! A character n-gram language model over clean text supplies the prior;
//! a learned [`ConfusionTable`] supplies the channel (how likely OCR was
//! to print `a` where the truth is `b`). Decoding is a left-to-right beam
//! search over substitution hypotheses: at each observed character the
//! candidates are "keep it" plus every character it is a known misreading
//! of. No insert/delete hypotheses in this version.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::confusion::ConfusionTable;
use crate::text::{Doc, Text};

/// Language-model symbol: line-start sentinel, a character, or the
/// line-end sentinel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    Begin,
    Ch(char),
    End,
}

/// Add-k smoothing constant of the language model.
pub const LM_SMOOTHING_K: f64 = 0.01;

/// Add-one constant of the channel model.
pub const CHANNEL_SMOOTHING: u64 = 1;

/// Default beam width of [`correct_line`].
pub const DEFAULT_BEAM_WIDTH: usize = 16;

#[derive(Debug, thiserror::Error)]
pub enum CorrectorError {
    #[error("language-model order must be at least 2, got {0}")]
    BadOrder(usize),
    #[error("cannot train a language model on an empty corpus")]
    EmptyCorpus,
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

#[derive(Debug, Clone, Default)]
struct ContextCounts {
    next: BTreeMap<Sym, u64>,
    total: u64,
}

/// Character n-gram language model with add-k smoothing and per-line
/// begin/end sentinels.
///
/// For every context the probabilities over the vocabulary (observed
/// characters plus the end sentinel) sum to 1, so every line has finite
/// log-probability.
#[derive(Debug, Clone)]
pub struct CharLM {
    order: usize,
    counts: HashMap<Vec<Sym>, ContextCounts>,
    vocab: BTreeSet<Sym>,
}

impl CharLM {
    /// Trains on every line of the corpus. `order` is the n in n-gram
    /// (context length `n - 1`); must be at least 2.
    pub fn train(corpus: &[Text], order: usize) -> Result<Self, CorrectorError> {
        if order < 2 {
            return Err(CorrectorError::BadOrder(order));
        }
        if corpus.is_empty() {
            return Err(CorrectorError::EmptyCorpus);
        }
        let mut lm = Self {
            order,
            counts: HashMap::new(),
            vocab: BTreeSet::from([Sym::End]),
        };
        for text in corpus {
            for line in text.lines() {
                let mut ctx = vec![Sym::Begin; order - 1];
                for c in line.chars() {
                    lm.vocab.insert(Sym::Ch(c));
                    lm.record(&ctx, Sym::Ch(c));
                    advance_context(&mut ctx, Sym::Ch(c));
                }
                lm.record(&ctx, Sym::End);
            }
        }
        Ok(lm)
    }

    fn record(&mut self, ctx: &[Sym], next: Sym) {
        let entry = self.counts.entry(ctx.to_vec()).or_default();
        *entry.next.entry(next).or_insert(0) += 1;
        entry.total += 1;
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Vocabulary size, end sentinel included.
    pub fn vocab_size(&self) -> usize {
        self.vocab.len()
    }

    pub fn prob(&self, ctx: &[Sym], next: Sym) -> f64 {
        let (count, total) = match self.counts.get(ctx) {
            Some(entry) => (entry.next.get(&next).copied().unwrap_or(0), entry.total),
            None => (0, 0),
        };
        (count as f64 + LM_SMOOTHING_K)
            / (total as f64 + LM_SMOOTHING_K * self.vocab.len() as f64)
    }

    pub fn log_prob(&self, ctx: &[Sym], next: Sym) -> f64 {
        self.prob(ctx, next).ln()
    }

    /// Log-probability of a whole line, sentinels included.
    pub fn line_log_prob(&self, line: &str) -> f64 {
        let mut ctx = vec![Sym::Begin; self.order - 1];
        let mut lp = 0.0;
        for c in line.chars() {
            lp += self.log_prob(&ctx, Sym::Ch(c));
            advance_context(&mut ctx, Sym::Ch(c));
        }
        lp + self.log_prob(&ctx, Sym::End)
    }

    /// Renders the model as sorted TSV: an `#ORDER` header line, then one
    /// `context<TAB>next<TAB>count` row per observed n-gram.
    pub fn to_tsv(&self) -> String {
        let mut rows: Vec<(&Vec<Sym>, Sym, u64)> = Vec::new();
        for (ctx, entry) in &self.counts {
            for (&next, &count) in &entry.next {
                rows.push((ctx, next, count));
            }
        }
        rows.sort();
        let mut out = format!("#ORDER\t{}\n", self.order);
        for (ctx, next, count) in rows {
            let rendered: String = ctx.iter().map(|&s| render_sym(s)).collect();
            out.push_str(&rendered);
            out.push('\t');
            out.push_str(&render_sym(next));
            out.push('\t');
            out.push_str(&count.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses the TSV form produced by [`to_tsv`].
    pub fn from_tsv(content: &str) -> Result<Self, CorrectorError> {
        let mut lines = content.lines().enumerate();
        let order = match lines.next() {
            Some((_, header)) => header
                .strip_prefix("#ORDER\t")
                .and_then(|v| v.parse::<usize>().ok())
                .ok_or_else(|| CorrectorError::Parse {
                    line: 1,
                    reason: "expected `#ORDER<TAB>n` header".to_string(),
                })?,
            None => {
                return Err(CorrectorError::Parse {
                    line: 1,
                    reason: "empty model file".to_string(),
                })
            }
        };
        if order < 2 {
            return Err(CorrectorError::BadOrder(order));
        }
        let mut lm = Self {
            order,
            counts: HashMap::new(),
            vocab: BTreeSet::from([Sym::End]),
        };
        for (i, row) in lines {
            if row.is_empty() {
                continue;
            }
            let line_no = i + 1;
            let cols: Vec<&str> = row.split('\t').collect();
            if cols.len() != 3 {
                return Err(CorrectorError::Parse {
                    line: line_no,
                    reason: format!("expected 3 columns, got {}", cols.len()),
                });
            }
            let ctx = parse_syms(cols[0]).map_err(|reason| CorrectorError::Parse {
                line: line_no,
                reason,
            })?;
            if ctx.len() != order - 1 {
                return Err(CorrectorError::Parse {
                    line: line_no,
                    reason: format!("context length {} does not match order {order}", ctx.len()),
                });
            }
            let next_syms = parse_syms(cols[1]).map_err(|reason| CorrectorError::Parse {
                line: line_no,
                reason,
            })?;
            let next = match next_syms.as_slice() {
                [s] => *s,
                _ => {
                    return Err(CorrectorError::Parse {
                        line: line_no,
                        reason: "next column must be a single symbol".to_string(),
                    })
                }
            };
            let count: u64 = cols[2].parse().map_err(|_| CorrectorError::Parse {
                line: line_no,
                reason: format!("invalid count {:?}", cols[2]),
            })?;
            if count == 0 {
                return Err(CorrectorError::Parse {
                    line: line_no,
                    reason: "count must be positive".to_string(),
                });
            }
            if let Sym::Ch(c) = next {
                lm.vocab.insert(Sym::Ch(c));
            }
            let entry = lm.counts.entry(ctx).or_default();
            *entry.next.entry(next).or_insert(0) += count;
            entry.total += count;
        }
        Ok(lm)
    }

    pub fn save(&self, path: &Path) -> Result<(), CorrectorError> {
        fs::write(path, self.to_tsv()).map_err(|source| CorrectorError::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn load(path: &Path) -> Result<Self, CorrectorError> {
        let content = fs::read_to_string(path).map_err(|source| CorrectorError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_tsv(&content)
    }
}

fn advance_context(ctx: &mut Vec<Sym>, next: Sym) {
    ctx.remove(0);
    ctx.push(next);
}

fn render_sym(sym: Sym) -> String {
    match sym {
        Sym::Begin => "\\^".to_string(),
        Sym::End => "\\$".to_string(),
        Sym::Ch('\\') => "\\\\".to_string(),
        Sym::Ch('\t') => "\\t".to_string(),
        Sym::Ch('\n') => "\\n".to_string(),
        Sym::Ch(c) => c.to_string(),
    }
}

fn parse_syms(s: &str) -> Result<Vec<Sym>, String> {
    let mut out = Vec::new();
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(Sym::Ch(c));
            continue;
        }
        match chars.next() {
            Some('^') => out.push(Sym::Begin),
            Some('$') => out.push(Sym::End),
            Some('\\') => out.push(Sym::Ch('\\')),
            Some('t') => out.push(Sym::Ch('\t')),
            Some('n') => out.push(Sym::Ch('\n')),
            Some(other) => return Err(format!("unknown escape `\\{other}`")),
            None => return Err("dangling backslash".to_string()),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
struct TruthEntry {
    /// (observed source, count), code-point order.
    sources: Vec<(char, u64)>,
    total: u64,
}

impl TruthEntry {
    /// Denominator with add-one smoothing per distinct source.
    fn denominator(&self) -> f64 {
        (self.total + CHANNEL_SMOOTHING * self.sources.len() as u64) as f64
    }
}

/// Channel model derived from a [`ConfusionTable`]:
/// `P(observed a | true b) = count(a, b) / (total(b) + |sources(b)|)`,
/// with the remaining mass on the identity reading. Characters that are
/// not confusion targets keep identity probability 1.
#[derive(Debug, Clone, Default)]
pub struct ChannelModel {
    by_truth: BTreeMap<char, TruthEntry>,
    by_observed: BTreeMap<char, Vec<char>>,
}

impl ChannelModel {
    pub fn from_table(table: &ConfusionTable) -> Self {
        let mut by_truth: BTreeMap<char, TruthEntry> = BTreeMap::new();
        let mut by_observed: BTreeMap<char, Vec<char>> = BTreeMap::new();
        for (source, target, count) in table.substitutions() {
            let entry = by_truth.entry(target).or_insert_with(|| TruthEntry {
                sources: Vec::new(),
                total: 0,
            });
            entry.sources.push((source, count));
            entry.total += count;
            by_observed.entry(source).or_default().push(target);
        }
        Self {
            by_truth,
            by_observed,
        }
    }

    /// Truth candidates that could have been misread as `observed`, in
    /// code-point order.
    pub fn candidates_for(&self, observed: char) -> &[char] {
        self.by_observed
            .get(&observed)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn prob(&self, observed: char, truth: char) -> f64 {
        match self.by_truth.get(&truth) {
            None => {
                if observed == truth {
                    1.0
                } else {
                    0.0
                }
            }
            Some(entry) => {
                if observed == truth {
                    (entry.sources.len() as u64 * CHANNEL_SMOOTHING) as f64 / entry.denominator()
                } else {
                    entry
                        .sources
                        .iter()
                        .find(|(s, _)| *s == observed)
                        .map(|(_, count)| *count as f64 / entry.denominator())
                        .unwrap_or(0.0)
                }
            }
        }
    }

    pub fn log_prob(&self, observed: char, truth: char) -> f64 {
        self.prob(observed, truth).ln()
    }

    /// Truth characters with channel entries (table targets).
    pub fn truths(&self) -> impl Iterator<Item = char> + '_ {
        self.by_truth.keys().copied()
    }
}

#[derive(Clone)]
struct Hypothesis {
    ctx: Vec<Sym>,
    log_prob: f64,
    output: String,
}

fn hypothesis_order(a: &Hypothesis, b: &Hypothesis) -> std::cmp::Ordering {
    b.log_prob
        .partial_cmp(&a.log_prob)
        .expect("hypothesis scores are finite")
        .then_with(|| a.output.cmp(&b.output))
}

/// Corrects one line by beam search.
///
/// At every observed character the expansion set is "keep it" plus every
/// truth character it is a recorded misreading of, scored by channel plus
/// language-model log-probability. Ties are broken toward the substitution
/// that is smaller in code-point order. An empty line comes back empty.
pub fn correct_line(line: &str, lm: &CharLM, channel: &ChannelModel, beam_width: usize) -> String {
    let beam_width = beam_width.max(1);
    let mut beam = vec![Hypothesis {
        ctx: vec![Sym::Begin; lm.order() - 1],
        log_prob: 0.0,
        output: String::new(),
    }];
    for observed in line.chars() {
        let mut expanded = Vec::with_capacity(beam.len() * (1 + channel.candidates_for(observed).len()));
        for hyp in &beam {
            for truth in std::iter::once(observed).chain(channel.candidates_for(observed).iter().copied()) {
                let score =
                    hyp.log_prob + channel.log_prob(observed, truth) + lm.log_prob(&hyp.ctx, Sym::Ch(truth));
                let mut ctx = hyp.ctx.clone();
                advance_context(&mut ctx, Sym::Ch(truth));
                let mut output = hyp.output.clone();
                output.push(truth);
                expanded.push(Hypothesis {
                    ctx,
                    log_prob: score,
                    output,
                });
            }
        }
        expanded.sort_by(hypothesis_order);
        expanded.truncate(beam_width);
        beam = expanded;
    }
    let mut best = beam;
    for hyp in &mut best {
        hyp.log_prob += lm.log_prob(&hyp.ctx, Sym::End);
    }
    best.sort_by(hypothesis_order);
    best.into_iter().next().expect("beam never empties").output
}

/// Corrects every line of a text, preserving line structure.
pub fn correct_text(text: &Text, lm: &CharLM, channel: &ChannelModel, beam_width: usize) -> Text {
    let lines: Vec<String> = text
        .lines()
        .iter()
        .map(|line| correct_line(line, lm, channel, beam_width))
        .collect();
    Text::from_lines(&lines)
}

/// Corrects a corpus, documents in parallel.
pub fn correct_corpus(
    docs: &[Doc],
    lm: &CharLM,
    channel: &ChannelModel,
    beam_width: usize,
) -> Vec<Doc> {
    docs.par_iter()
        .map(|doc| Doc {
            id: doc.id.clone(),
            text: correct_text(&doc.text, lm, channel, beam_width),
        })
        .collect()
}
