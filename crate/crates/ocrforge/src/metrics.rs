//! Evaluation measures for post-correction output.
//!
//! Two measures: character-based accuracy increase (share of OCR character
//! errors removed by a corrector, clamped to 0 when the corrector made the
//! text worse) and word-based accuracy from a word-level alignment against
//! the golden standard.

use rayon::prelude::*;
use serde::Serialize;

use crate::align::{text_distance, word_align, AlignOp, Scoring};
use crate::text::{tokenize, DelimiterSet, Text};

#[derive(Debug, thiserror::Error)]
pub enum MetricsError {
    #[error("evaluated text tokenizes to zero words; word accuracy is undefined")]
    NoWords,
    #[error("cannot evaluate an empty document list")]
    EmptyInput,
    #[error("every document was skipped; nothing to evaluate")]
    AllSkipped,
    #[error(transparent)]
    Align(#[from] crate::align::AlignError),
}

/// Accuracy increase: the percentage of OCR character errors fixed.
///
/// `(lev(golden, ocred) - lev(golden, fixed)) / lev(golden, ocred) * 100`
/// when the corrector did not add net errors, else 0. A text with no OCR
/// errors scores 100 if it was left intact and 0 if it was damaged.
pub fn acc_increase(golden: &Text, ocred: &Text, fixed: &Text) -> f64 {
    acc_increase_from_distances(text_distance(golden, ocred), text_distance(golden, fixed))
}

/// [`acc_increase`] from precomputed edit distances.
pub fn acc_increase_from_distances(lev_gs_ocred: usize, lev_gs_fixed: usize) -> f64 {
    if lev_gs_ocred == 0 {
        return if lev_gs_fixed == 0 { 100.0 } else { 0.0 };
    }
    if lev_gs_fixed > lev_gs_ocred {
        return 0.0;
    }
    (lev_gs_ocred - lev_gs_fixed) as f64 / lev_gs_ocred as f64 * 100.0
}

/// Word-level error counts of an evaluated text against its golden
/// standard.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct WordCounts {
    /// Words in the evaluated text.
    pub n_w: u64,
    /// Evaluated words substituted with other words in the golden text.
    pub s_w: u64,
    /// Evaluated words absent from the golden text.
    pub d_w: u64,
    /// Golden words absent from the evaluated text.
    pub i_w: u64,
}

impl WordCounts {
    /// Word accuracy percentage: `(N_w - S_w - D_w - I_w) / N_w * 100`.
    /// At most 100; negative when errors outnumber words.
    pub fn accuracy(&self) -> f64 {
        (self.n_w as f64 - self.s_w as f64 - self.d_w as f64 - self.i_w as f64)
            / self.n_w as f64
            * 100.0
    }

    fn absorb(&mut self, other: &WordCounts) {
        self.n_w += other.n_w;
        self.s_w += other.s_w;
        self.d_w += other.d_w;
        self.i_w += other.i_w;
    }
}

/// Tokenizes both texts and aligns them word-by-word with the default
/// scoring; substitution, deletion, and insertion columns become `S_w`,
/// `D_w`, and `I_w`. Errors when the evaluated text has no words.
pub fn word_accuracy(
    evaluated: &Text,
    golden: &Text,
    delims: &DelimiterSet,
) -> Result<WordCounts, MetricsError> {
    let evaluated_words = tokenize(evaluated.as_str(), delims);
    if evaluated_words.is_empty() {
        return Err(MetricsError::NoWords);
    }
    let golden_words = tokenize(golden.as_str(), delims);
    let alignment = word_align(&evaluated_words, &golden_words, &Scoring::default())?;
    let mut counts = WordCounts {
        n_w: evaluated_words.len() as u64,
        ..WordCounts::default()
    };
    for col in &alignment.columns {
        match col {
            AlignOp::Substitute(..) => counts.s_w += 1,
            AlignOp::Delete(_) => counts.d_w += 1,
            AlignOp::Insert(_) => counts.i_w += 1,
            AlignOp::Match(_) => {}
        }
    }
    Ok(counts)
}

/// Both measures for one (golden, ocred, fixed) document. Word fields
/// describe the fixed text.
#[derive(Debug, Clone, Serialize)]
pub struct AccuracyReport {
    pub lev_gs_ocred: usize,
    pub lev_gs_fixed: usize,
    pub acc_increase: f64,
    pub n_w: u64,
    pub s_w: u64,
    pub d_w: u64,
    pub i_w: u64,
    pub w_acc: f64,
}

pub fn evaluate_document(
    golden: &Text,
    ocred: &Text,
    fixed: &Text,
    delims: &DelimiterSet,
) -> Result<AccuracyReport, MetricsError> {
    let lev_gs_ocred = text_distance(golden, ocred);
    let lev_gs_fixed = text_distance(golden, fixed);
    let words = word_accuracy(fixed, golden, delims)?;
    Ok(AccuracyReport {
        lev_gs_ocred,
        lev_gs_fixed,
        acc_increase: acc_increase_from_distances(lev_gs_ocred, lev_gs_fixed),
        n_w: words.n_w,
        s_w: words.s_w,
        d_w: words.d_w,
        i_w: words.i_w,
        w_acc: words.accuracy(),
    })
}

/// Corpus-level evaluation of a corrector.
///
/// `mean_acc_increase` is macro-averaged over documents; the word counts
/// are corpus totals (micro-average), kept separately for the OCRed
/// baseline and the fixed output.
#[derive(Debug, Clone, Serialize)]
pub struct CorpusEvaluation {
    pub documents: usize,
    /// Documents dropped because word accuracy was undefined for one of
    /// their texts.
    pub skipped: usize,
    pub mean_acc_increase: f64,
    pub ocred_words: WordCounts,
    pub fixed_words: WordCounts,
}

impl CorpusEvaluation {
    pub fn ocred_word_accuracy(&self) -> f64 {
        self.ocred_words.accuracy()
    }

    pub fn fixed_word_accuracy(&self) -> f64 {
        self.fixed_words.accuracy()
    }
}

/// Evaluates a corrector over (golden, ocred, fixed) document triples.
/// Documents where word accuracy is undefined are skipped and counted.
pub fn evaluate_corrector(
    triples: &[(Text, Text, Text)],
    delims: &DelimiterSet,
) -> Result<CorpusEvaluation, MetricsError> {
    if triples.is_empty() {
        return Err(MetricsError::EmptyInput);
    }
    // accuracy increase plus word counts of (ocred, fixed); None = skipped
    type DocOutcome = Option<(f64, WordCounts, WordCounts)>;
    let per_doc: Result<Vec<DocOutcome>, MetricsError> = triples
        .par_iter()
        .map(|(golden, ocred, fixed)| {
            let increase = acc_increase(golden, ocred, fixed);
            let ocred_words = match word_accuracy(ocred, golden, delims) {
                Ok(w) => w,
                Err(MetricsError::NoWords) => return Ok(None),
                Err(e) => return Err(e),
            };
            let fixed_words = match word_accuracy(fixed, golden, delims) {
                Ok(w) => w,
                Err(MetricsError::NoWords) => return Ok(None),
                Err(e) => return Err(e),
            };
            Ok(Some((increase, ocred_words, fixed_words)))
        })
        .collect();

    let mut documents = 0;
    let mut skipped = 0;
    let mut increase_sum = 0.0;
    let mut ocred_words = WordCounts::default();
    let mut fixed_words = WordCounts::default();
    for item in per_doc? {
        match item {
            Some((increase, ocred, fixed)) => {
                documents += 1;
                increase_sum += increase;
                ocred_words.absorb(&ocred);
                fixed_words.absorb(&fixed);
            }
            None => skipped += 1,
        }
    }
    if documents == 0 {
        return Err(MetricsError::AllSkipped);
    }
    Ok(CorpusEvaluation {
        documents,
        skipped,
        mean_acc_increase: increase_sum / documents as f64,
        ocred_words,
        fixed_words,
    })
}

/// One row of the comparison report.
#[derive(Debug, Clone, Serialize)]
pub struct EvalRow {
    pub name: String,
    pub acc_increase: f64,
    pub word_accuracy: f64,
}

/// Renders rows as a comparison table, percentages with three decimals.
pub fn render_report(rows: &[EvalRow]) -> String {
    let name_width = rows
        .iter()
        .map(|r| r.name.chars().count())
        .chain(["System".chars().count()])
        .max()
        .unwrap_or(6)
        .max(6);
    let mut out = String::new();
    out.push_str(&format!(
        "{:<name_width$}  {:>34}  {:>13}\n",
        "System", "Character-based Accuracy Increase", "Word Accuracy"
    ));
    out.push_str(&format!(
        "{}  {}  {}\n",
        "-".repeat(name_width),
        "-".repeat(34),
        "-".repeat(13)
    ));
    for row in rows {
        out.push_str(&format!(
            "{:<name_width$}  {:>33.3}%  {:>12.3}%\n",
            row.name, row.acc_increase, row.word_accuracy
        ));
    }
    out
}

/// Rows as a JSON array.
pub fn report_json(rows: &[EvalRow]) -> String {
    serde_json::to_string_pretty(rows).expect("report serialization")
}
