//! Global sequence alignment and edit distance.
//!
//! [`nw_align`] computes a maximal-score global alignment with a fixed,
//! documented traceback tie-break so downstream confusion counts are
//! reproducible across runs and platforms. With the default [`Scoring`]
//! (match 0, mismatch -1, gap -1) the negated optimal score equals the
//! Levenshtein distance.

use crate::text::Text;

/// Column scores for global alignment.
///
/// `match_score` must exceed both `mismatch_score` and `gap_score`,
/// otherwise the alignment degenerates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Scoring {
    pub match_score: i32,
    pub mismatch_score: i32,
    pub gap_score: i32,
}

impl Scoring {
    pub fn new(match_score: i32, mismatch_score: i32, gap_score: i32) -> Result<Self, AlignError> {
        if match_score <= mismatch_score || match_score <= gap_score {
            return Err(AlignError::DegenerateScoring {
                match_score,
                mismatch_score,
                gap_score,
            });
        }
        Ok(Self {
            match_score,
            mismatch_score,
            gap_score,
        })
    }
}

impl Default for Scoring {
    /// Match 0, mismatch -1, gap -1: the negated optimal score is the
    /// Levenshtein distance.
    fn default() -> Self {
        Self {
            match_score: 0,
            mismatch_score: -1,
            gap_score: -1,
        }
    }
}

/// One alignment column. `Match` and `Substitute` consume a symbol from
/// both sequences, `Delete` only from the left, `Insert` only from the
/// right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlignOp<T> {
    Match(T),
    Substitute(T, T),
    Delete(T),
    Insert(T),
}

/// A global alignment: column sequence plus its total score.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alignment<T> {
    pub columns: Vec<AlignOp<T>>,
    pub score: i64,
}

impl<T: Clone> Alignment<T> {
    /// Reconstructs the left (first) input sequence.
    pub fn left(&self) -> Vec<T> {
        self.columns
            .iter()
            .filter_map(|col| match col {
                AlignOp::Match(a) | AlignOp::Delete(a) => Some(a.clone()),
                AlignOp::Substitute(a, _) => Some(a.clone()),
                AlignOp::Insert(_) => None,
            })
            .collect()
    }

    /// Reconstructs the right (second) input sequence.
    pub fn right(&self) -> Vec<T> {
        self.columns
            .iter()
            .filter_map(|col| match col {
                AlignOp::Match(b) | AlignOp::Insert(b) => Some(b.clone()),
                AlignOp::Substitute(_, b) => Some(b.clone()),
                AlignOp::Delete(_) => None,
            })
            .collect()
    }
}

impl<T> Alignment<T> {
    /// (matches, substitutions, deletions, insertions)
    pub fn column_counts(&self) -> (usize, usize, usize, usize) {
        let mut counts = (0, 0, 0, 0);
        for col in &self.columns {
            match col {
                AlignOp::Match(_) => counts.0 += 1,
                AlignOp::Substitute(..) => counts.1 += 1,
                AlignOp::Delete(_) => counts.2 += 1,
                AlignOp::Insert(_) => counts.3 += 1,
            }
        }
        counts
    }
}

#[derive(Debug, thiserror::Error)]
pub enum AlignError {
    #[error(
        "degenerate scoring: match {match_score} must exceed mismatch {mismatch_score} and gap {gap_score}"
    )]
    DegenerateScoring {
        match_score: i32,
        mismatch_score: i32,
        gap_score: i32,
    },
    #[error("alignment of {left} x {right} symbols needs {cells} DP cells, above the limit {limit}")]
    TooLarge {
        left: usize,
        right: usize,
        cells: u128,
        limit: usize,
    },
}

/// Default cap on DP matrix size, in cells.
pub const DEFAULT_CELL_LIMIT: usize = 100_000_000;

/// Levenshtein distance: minimal single-symbol insertions, deletions, and
/// substitutions transforming `a` into `b`. Two-row DP, O(|a|·|b|) time,
/// O(min) memory.
pub fn levenshtein<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if short.is_empty() {
        return long.len();
    }
    let mut row: Vec<usize> = (0..=short.len()).collect();
    for (j, long_sym) in long.iter().enumerate() {
        let mut diag = row[0];
        row[0] = j + 1;
        for (i, short_sym) in short.iter().enumerate() {
            let up = row[i + 1];
            let cost = usize::from(short_sym != long_sym);
            row[i + 1] = (diag + cost).min(up + 1).min(row[i] + 1);
            diag = up;
        }
    }
    *row.last().unwrap()
}

/// Levenshtein distance over the Unicode scalars of two strings.
pub fn levenshtein_str(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    levenshtein(&a, &b)
}

const DIAG: u8 = 0;
const UP: u8 = 1;
const LEFT: u8 = 2;

/// Needleman-Wunsch global alignment with the default DP cell limit.
///
/// Traceback tie-break is fixed: on equal scores prefer the diagonal
/// (match/substitute), then delete, then insert.
pub fn nw_align<T: Eq + Clone>(
    a: &[T],
    b: &[T],
    scoring: &Scoring,
) -> Result<Alignment<T>, AlignError> {
    nw_align_with_limit(a, b, scoring, DEFAULT_CELL_LIMIT)
}

/// [`nw_align`] with an explicit cap on DP matrix cells.
pub fn nw_align_with_limit<T: Eq + Clone>(
    a: &[T],
    b: &[T],
    scoring: &Scoring,
    cell_limit: usize,
) -> Result<Alignment<T>, AlignError> {
    let (n, m) = (a.len(), b.len());
    let cells = (n as u128 + 1) * (m as u128 + 1);
    if cells > cell_limit as u128 {
        return Err(AlignError::TooLarge {
            left: n,
            right: m,
            cells,
            limit: cell_limit,
        });
    }

    let gap = scoring.gap_score as i64;
    let width = m + 1;
    // full direction matrix, two rolling score rows
    let mut dirs = vec![LEFT; (n + 1) * width];
    let mut prev: Vec<i64> = (0..=m as i64).map(|j| j * gap).collect();
    let mut curr = vec![0i64; width];
    for i in 1..=n {
        dirs[i * width] = UP;
        curr[0] = i as i64 * gap;
        for j in 1..=m {
            let pair_score = if a[i - 1] == b[j - 1] {
                scoring.match_score
            } else {
                scoring.mismatch_score
            } as i64;
            let diag = prev[j - 1] + pair_score;
            let up = prev[j] + gap;
            let left = curr[j - 1] + gap;
            // tie-break order: diagonal, then up (delete), then left (insert)
            let (best, dir) = if diag >= up && diag >= left {
                (diag, DIAG)
            } else if up >= left {
                (up, UP)
            } else {
                (left, LEFT)
            };
            curr[j] = best;
            dirs[i * width + j] = dir;
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    let score = prev[m];

    let mut columns = Vec::with_capacity(n.max(m));
    let (mut i, mut j) = (n, m);
    while i > 0 || j > 0 {
        match dirs[i * width + j] {
            DIAG if i > 0 && j > 0 => {
                let (x, y) = (a[i - 1].clone(), b[j - 1].clone());
                columns.push(if x == y {
                    AlignOp::Match(x)
                } else {
                    AlignOp::Substitute(x, y)
                });
                i -= 1;
                j -= 1;
            }
            UP if i > 0 => {
                columns.push(AlignOp::Delete(a[i - 1].clone()));
                i -= 1;
            }
            _ => {
                columns.push(AlignOp::Insert(b[j - 1].clone()));
                j -= 1;
            }
        }
    }
    columns.reverse();
    Ok(Alignment { columns, score })
}

/// Global alignment where the symbols are whole words (exact string
/// equality).
pub fn word_align<'a>(
    a: &[&'a str],
    b: &[&'a str],
    scoring: &Scoring,
) -> Result<Alignment<&'a str>, AlignError> {
    nw_align(a, b, scoring)
}

/// Character-level alignments of a text pair, following the line-wise
/// convention: when both texts have the same line count each line pair is
/// aligned separately (errors stay local and DP matrices stay small),
/// otherwise the whole texts are aligned at once.
pub fn align_texts(
    left: &Text,
    right: &Text,
    scoring: &Scoring,
    cell_limit: usize,
) -> Result<Vec<Alignment<char>>, AlignError> {
    let left_lines = left.lines();
    let right_lines = right.lines();
    if left_lines.len() == right_lines.len() {
        left_lines
            .iter()
            .zip(&right_lines)
            .map(|(l, r)| {
                let l: Vec<char> = l.chars().collect();
                let r: Vec<char> = r.chars().collect();
                nw_align_with_limit(&l, &r, scoring, cell_limit)
            })
            .collect()
    } else {
        let l: Vec<char> = left.chars().collect();
        let r: Vec<char> = right.chars().collect();
        Ok(vec![nw_align_with_limit(&l, &r, scoring, cell_limit)?])
    }
}

/// Edit distance between two texts under the same line-wise convention as
/// [`align_texts`]: with equal line counts it is the sum of per-line
/// Levenshtein distances, otherwise the distance over the whole scalar
/// sequences.
pub fn text_distance(a: &Text, b: &Text) -> usize {
    let a_lines = a.lines();
    let b_lines = b.lines();
    if a_lines.len() == b_lines.len() {
        a_lines
            .iter()
            .zip(&b_lines)
            .map(|(x, y)| levenshtein_str(x, y))
            .sum()
    } else {
        levenshtein_str(a.as_str(), b.as_str())
    }
}
