//! Line-pair datasets for sequence-to-sequence trainers.
//!
//! Assembles (input, target) line pairs from parallel documents, splits
//! them into training and validation subsets at document granularity (all
//! lines of a document share a split, preventing near-duplicate leakage),
//! and exports them in trainer-friendly formats.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::rng::{shuffle, SplitMix64};
use crate::text::{escape_field, read_lines, unescape_field, write_lines, ParallelPair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Split {
    Train,
    Validation,
    Unassigned,
}

/// One (input line, target line) training record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinePair {
    pub input: String,
    pub target: String,
    pub doc_id: String,
    pub line_index: usize,
    pub split: Split,
}

/// A document whose sides had different line counts and could not be
/// paired line-by-line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection {
    pub doc_id: String,
    pub ocred_lines: usize,
    pub golden_lines: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinePairDataset {
    pub records: Vec<LinePair>,
    pub rejections: Vec<Rejection>,
}

#[derive(Debug, thiserror::Error)]
pub enum DatasetError {
    #[error("train fraction must be in (0, 1), got {0}")]
    BadFraction(f64),
    #[error("need at least 2 documents to form both splits, got {0}")]
    TooFewDocuments(usize),
    #[error("dataset has unassigned records; run split before export")]
    NotSplit,
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: record {index}: {reason}")]
    Record {
        path: PathBuf,
        index: usize,
        reason: String,
    },
    #[error(transparent)]
    Corpus(#[from] crate::text::CorpusError),
}

/// Builds one record per line of each pair whose sides have equal line
/// counts; other pairs land in the rejection list. Lines empty on both
/// sides are dropped.
pub fn build_line_pairs(pairs: &[ParallelPair]) -> LinePairDataset {
    let mut dataset = LinePairDataset::default();
    for pair in pairs {
        let ocred_lines = pair.ocred.lines();
        let golden_lines = pair.golden.lines();
        if ocred_lines.len() != golden_lines.len() {
            dataset.rejections.push(Rejection {
                doc_id: pair.doc_id.clone(),
                ocred_lines: ocred_lines.len(),
                golden_lines: golden_lines.len(),
            });
            continue;
        }
        for (line_index, (input, target)) in ocred_lines.iter().zip(&golden_lines).enumerate() {
            if input.is_empty() && target.is_empty() {
                continue;
            }
            dataset.records.push(LinePair {
                input: (*input).to_string(),
                target: (*target).to_string(),
                doc_id: pair.doc_id.clone(),
                line_index,
                split: Split::Unassigned,
            });
        }
    }
    dataset
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitSummary {
    pub train_docs: usize,
    pub validation_docs: usize,
}

/// Assigns split tags at document granularity: document ids (in first
/// appearance order) are Fisher-Yates shuffled with `SplitMix64(seed)`,
/// and the first `ceil(train_fraction * n_docs)` documents form the
/// training set.
pub fn split_dataset(
    dataset: &mut LinePairDataset,
    train_fraction: f64,
    seed: u64,
) -> Result<SplitSummary, DatasetError> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(DatasetError::BadFraction(train_fraction));
    }
    let mut docs: Vec<&str> = Vec::new();
    let mut seen = HashSet::new();
    for record in &dataset.records {
        if seen.insert(record.doc_id.as_str()) {
            docs.push(record.doc_id.as_str());
        }
    }
    if docs.len() < 2 {
        return Err(DatasetError::TooFewDocuments(docs.len()));
    }
    shuffle(&mut docs, &mut SplitMix64::new(seed));
    let train_count = (train_fraction * docs.len() as f64).ceil() as usize;
    let train_docs: HashSet<String> = docs[..train_count.min(docs.len())]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let summary = SplitSummary {
        train_docs: train_docs.len(),
        validation_docs: docs.len() - train_docs.len(),
    };
    for record in &mut dataset.records {
        record.split = if train_docs.contains(&record.doc_id) {
            Split::Train
        } else {
            Split::Validation
        };
    }
    Ok(summary)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Jsonl,
    ParallelTxt,
    Tsv,
}

impl ExportFormat {
    pub fn parse(s: &str) -> Result<Self, DatasetError> {
        match s {
            "jsonl" => Ok(Self::Jsonl),
            "parallel-txt" => Ok(Self::ParallelTxt),
            "tsv" => Ok(Self::Tsv),
            other => Err(DatasetError::Record {
                path: PathBuf::new(),
                index: 0,
                reason: format!("unknown export format {other:?}"),
            }),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ExportRecord {
    input: String,
    target: String,
    doc: String,
    line: usize,
}

#[derive(Serialize, Deserialize)]
struct TaggedRecord {
    input: String,
    target: String,
    doc: String,
    line: usize,
    split: Split,
}

fn io_err(path: &Path, source: std::io::Error) -> DatasetError {
    DatasetError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn split_name(split: Split) -> &'static str {
    match split {
        Split::Train => "train",
        Split::Validation => "validation",
        Split::Unassigned => "unassigned",
    }
}

/// Writes the dataset into `out_dir`, one file group per split, and
/// returns the created paths.
///
/// * `jsonl`: `train.jsonl` / `validation.jsonl`, one
///   `{"input", "target", "doc", "line"}` object per record.
/// * `parallel-txt`: `train.input.txt` + `train.target.txt` (and
///   `validation.*`); line `i` of both files forms a pair.
/// * `tsv`: `train.tsv` / `validation.tsv`, two escaped columns
///   `input<TAB>target`.
pub fn export(
    dataset: &LinePairDataset,
    format: ExportFormat,
    out_dir: &Path,
) -> Result<Vec<PathBuf>, DatasetError> {
    if dataset
        .records
        .iter()
        .any(|r| r.split == Split::Unassigned)
    {
        return Err(DatasetError::NotSplit);
    }
    fs::create_dir_all(out_dir).map_err(|e| io_err(out_dir, e))?;
    let mut written = Vec::new();
    for split in [Split::Train, Split::Validation] {
        let records: Vec<&LinePair> = dataset.records.iter().filter(|r| r.split == split).collect();
        let stem = split_name(split);
        match format {
            ExportFormat::Jsonl => {
                let path = out_dir.join(format!("{stem}.jsonl"));
                let mut out = Vec::new();
                for r in &records {
                    let record = ExportRecord {
                        input: r.input.clone(),
                        target: r.target.clone(),
                        doc: r.doc_id.clone(),
                        line: r.line_index,
                    };
                    serde_json::to_writer(&mut out, &record).expect("jsonl serialization");
                    out.push(b'\n');
                }
                fs::write(&path, out).map_err(|e| io_err(&path, e))?;
                written.push(path);
            }
            ExportFormat::ParallelTxt => {
                let input_path = out_dir.join(format!("{stem}.input.txt"));
                let target_path = out_dir.join(format!("{stem}.target.txt"));
                let inputs: Vec<String> = records.iter().map(|r| r.input.clone()).collect();
                let targets: Vec<String> = records.iter().map(|r| r.target.clone()).collect();
                write_lines(&input_path, &inputs)?;
                write_lines(&target_path, &targets)?;
                written.push(input_path);
                written.push(target_path);
            }
            ExportFormat::Tsv => {
                let path = out_dir.join(format!("{stem}.tsv"));
                let lines: Vec<String> = records
                    .iter()
                    .map(|r| format!("{}\t{}", escape_field(&r.input), escape_field(&r.target)))
                    .collect();
                write_lines(&path, &lines)?;
                written.push(path);
            }
        }
    }
    Ok(written)
}

/// Reads back a `jsonl` export with full record identity.
pub fn import_jsonl(out_dir: &Path) -> Result<LinePairDataset, DatasetError> {
    let mut dataset = LinePairDataset::default();
    for split in [Split::Train, Split::Validation] {
        let path = out_dir.join(format!("{}.jsonl", split_name(split)));
        for (index, line) in read_lines(&path)?.iter().enumerate() {
            let record: ExportRecord =
                serde_json::from_str(line).map_err(|e| DatasetError::Record {
                    path: path.clone(),
                    index,
                    reason: e.to_string(),
                })?;
            dataset.records.push(LinePair {
                input: record.input,
                target: record.target,
                doc_id: record.doc,
                line_index: record.line,
                split,
            });
        }
    }
    Ok(dataset)
}

/// (train records, validation records) as bare (input, target) content.
pub type SplitContents = (Vec<(String, String)>, Vec<(String, String)>);

/// Reads back the (input, target) content of any export format, per split.
pub fn import_pairs(out_dir: &Path, format: ExportFormat) -> Result<SplitContents, DatasetError> {
    let mut result: SplitContents = (Vec::new(), Vec::new());
    for split in [Split::Train, Split::Validation] {
        let stem = split_name(split);
        let pairs: Vec<(String, String)> = match format {
            ExportFormat::Jsonl => {
                let path = out_dir.join(format!("{stem}.jsonl"));
                read_lines(&path)?
                    .iter()
                    .enumerate()
                    .map(|(index, line)| {
                        let record: ExportRecord =
                            serde_json::from_str(line).map_err(|e| DatasetError::Record {
                                path: path.clone(),
                                index,
                                reason: e.to_string(),
                            })?;
                        Ok((record.input, record.target))
                    })
                    .collect::<Result<_, DatasetError>>()?
            }
            ExportFormat::ParallelTxt => {
                let inputs = read_lines(&out_dir.join(format!("{stem}.input.txt")))?;
                let targets = read_lines(&out_dir.join(format!("{stem}.target.txt")))?;
                if inputs.len() != targets.len() {
                    return Err(DatasetError::Record {
                        path: out_dir.join(format!("{stem}.input.txt")),
                        index: inputs.len().min(targets.len()),
                        reason: "input and target files have different line counts".to_string(),
                    });
                }
                inputs.into_iter().zip(targets).collect()
            }
            ExportFormat::Tsv => {
                let path = out_dir.join(format!("{stem}.tsv"));
                read_lines(&path)?
                    .iter()
                    .enumerate()
                    .map(|(index, line)| {
                        let bad = |reason: String| DatasetError::Record {
                            path: path.clone(),
                            index,
                            reason,
                        };
                        let mut cols = line.split('\t');
                        match (cols.next(), cols.next(), cols.next()) {
                            (Some(i), Some(t), None) => Ok((
                                unescape_field(i).map_err(&bad)?,
                                unescape_field(t).map_err(&bad)?,
                            )),
                            _ => Err(bad("expected two tab-separated columns".to_string())),
                        }
                    })
                    .collect::<Result<_, DatasetError>>()?
            }
        };
        match split {
            Split::Train => result.0 = pairs,
            Split::Validation => result.1 = pairs,
            Split::Unassigned => unreachable!(),
        }
    }
    Ok(result)
}

/// Writes the tagged dataset (split assignments included) as JSONL.
pub fn write_tagged(dataset: &LinePairDataset, path: &Path) -> Result<(), DatasetError> {
    let mut out = Vec::new();
    for r in &dataset.records {
        let record = TaggedRecord {
            input: r.input.clone(),
            target: r.target.clone(),
            doc: r.doc_id.clone(),
            line: r.line_index,
            split: r.split,
        };
        serde_json::to_writer(&mut out, &record).expect("jsonl serialization");
        out.push(b'\n');
    }
    fs::write(path, out).map_err(|e| io_err(path, e))
}

/// Reads a tagged dataset written by [`write_tagged`].
pub fn read_tagged(path: &Path) -> Result<LinePairDataset, DatasetError> {
    let mut dataset = LinePairDataset::default();
    for (index, line) in read_lines(path)?.iter().enumerate() {
        let record: TaggedRecord =
            serde_json::from_str(line).map_err(|e| DatasetError::Record {
                path: path.to_path_buf(),
                index,
                reason: e.to_string(),
            })?;
        dataset.records.push(LinePair {
            input: record.input,
            target: record.target,
            doc_id: record.doc,
            line_index: record.line,
            split: record.split,
        });
    }
    Ok(dataset)
}
