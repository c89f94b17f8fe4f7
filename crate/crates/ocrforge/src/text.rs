//! Text representation, tokenization, and corpus ingestion.
//!
//! Texts are stored as UTF-8 in logical order and round-trip byte-identically
//! through every reader/writer in this module. No Unicode normalization is
//! applied by default: scripts with positional letter forms encode those forms
//! as distinct scalars, and folding them would destroy confusion statistics.
//! Call [`Text::to_nfc`] to opt in.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use unicode_normalization::UnicodeNormalization;

/// A text, indexed by Unicode scalar value (never by byte).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Text(String);

impl Text {
    pub fn new(content: impl Into<String>) -> Self {
        Self(content.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn chars(&self) -> impl Iterator<Item = char> + '_ {
        self.0.chars()
    }

    /// Number of Unicode scalar values.
    pub fn char_count(&self) -> usize {
        self.0.chars().count()
    }

    /// View of the text split on line feed. A trailing `\n` yields a final
    /// empty line, so `lines().join("\n")` reconstructs the text exactly.
    pub fn lines(&self) -> Vec<&str> {
        self.0.split('\n').collect()
    }

    pub fn from_lines<S: AsRef<str>>(lines: &[S]) -> Self {
        let joined = lines
            .iter()
            .map(|l| l.as_ref())
            .collect::<Vec<_>>()
            .join("\n");
        Self(joined)
    }

    /// NFC-normalized copy. Opt-in only; see the module docs.
    pub fn to_nfc(&self) -> Text {
        Text(self.0.nfc().collect())
    }
}

impl From<&str> for Text {
    fn from(s: &str) -> Self {
        Text(s.to_string())
    }
}

impl From<String> for Text {
    fn from(s: String) -> Self {
        Text(s)
    }
}

impl std::fmt::Display for Text {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// An OCRed text paired with its golden-standard counterpart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelPair {
    pub ocred: Text,
    pub golden: Text,
    pub doc_id: String,
}

/// A standalone document in a plain-text corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Doc {
    pub id: String,
    pub text: Text,
}

/// Word-boundary characters for tokenization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelimiterSet {
    delimiters: BTreeSet<char>,
}

impl DelimiterSet {
    /// Builds a set from the given characters. Errors on an empty set.
    pub fn new(chars: impl IntoIterator<Item = char>) -> Result<Self, CorpusError> {
        let delimiters: BTreeSet<char> = chars.into_iter().collect();
        if delimiters.is_empty() {
            return Err(CorpusError::EmptyDelimiterSet);
        }
        Ok(Self { delimiters })
    }

    pub fn contains(&self, c: char) -> bool {
        self.delimiters.contains(&c)
    }

    pub fn chars(&self) -> impl Iterator<Item = char> + '_ {
        self.delimiters.iter().copied()
    }
}

impl Default for DelimiterSet {
    /// Space, tab, line feed, carriage return, and
    /// `.` `,` `;` `:` `!` `?` `"` `'` `(` `)` `[` `]` `-` `—`.
    fn default() -> Self {
        let chars = [
            ' ', '\t', '\n', '\r', '.', ',', ';', ':', '!', '?', '"', '\'', '(', ')', '[', ']',
            '-', '—',
        ];
        Self {
            delimiters: chars.into_iter().collect(),
        }
    }
}

/// Splits `text` into words: maximal runs of non-delimiter scalars, with
/// empty runs dropped.
pub fn tokenize<'a>(text: &'a str, delims: &DelimiterSet) -> Vec<&'a str> {
    text.split(|c: char| delims.contains(c))
        .filter(|w| !w.is_empty())
        .collect()
}

/// On-disk corpus layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusFormat {
    /// One file (or file pair) per document in a directory.
    PlainDir,
    /// One JSON object per line.
    Jsonl,
    /// One escaped record per line, columns separated by tabs.
    Tsv,
}

impl CorpusFormat {
    pub fn parse(s: &str) -> Result<Self, CorpusError> {
        match s {
            "plain-dir" => Ok(Self::PlainDir),
            "jsonl" => Ok(Self::Jsonl),
            "tsv" => Ok(Self::Tsv),
            other => Err(CorpusError::UnknownFormat(other.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::PlainDir => "plain-dir",
            Self::Jsonl => "jsonl",
            Self::Tsv => "tsv",
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: invalid UTF-8 at byte offset {offset}")]
    Utf8 { path: PathBuf, offset: usize },
    #[error("{path}: record {index}: {reason}")]
    Record {
        path: PathBuf,
        index: usize,
        reason: String,
    },
    #[error("unknown corpus format {0:?} (expected plain-dir, jsonl, or tsv)")]
    UnknownFormat(String),
    #[error("delimiter set must not be empty")]
    EmptyDelimiterSet,
    #[error("{0}: golden-standard file {1} has no OCR counterpart")]
    UnpairedFile(PathBuf, String),
}

fn io_err(path: &Path, source: std::io::Error) -> CorpusError {
    CorpusError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Reads a file and validates UTF-8, reporting the byte offset on failure.
pub fn read_utf8_file(path: &Path) -> Result<String, CorpusError> {
    let bytes = fs::read(path).map_err(|e| io_err(path, e))?;
    String::from_utf8(bytes).map_err(|e| CorpusError::Utf8 {
        path: path.to_path_buf(),
        offset: e.utf8_error().valid_up_to(),
    })
}

/// Escapes a field for tab-separated records: `\` -> `\\`, tab -> `\t`,
/// line feed -> `\n`.
pub fn escape_field(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out
}

/// Inverse of [`escape_field`]. Errors on a dangling or unknown escape.
pub fn unescape_field(s: &str) -> Result<String, String> {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('\\') => out.push('\\'),
            Some('t') => out.push('\t'),
            Some('n') => out.push('\n'),
            Some(other) => return Err(format!("unknown escape `\\{other}`")),
            None => return Err("dangling backslash".to_string()),
        }
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct PairRecord {
    ocr: String,
    gold: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    id: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct DocRecord {
    text: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    id: Option<String>,
}

/// Splits file content into record lines. A trailing line feed does not
/// produce a phantom empty record, but a file holding a single empty
/// line (`"\n"`) is one empty record, not zero.
fn record_lines(content: &str) -> Vec<&str> {
    if content.is_empty() {
        return Vec::new();
    }
    let trimmed = content.strip_suffix('\n').unwrap_or(content);
    trimmed.split('\n').collect()
}

/// Reads a parallel corpus.
///
/// * `plain-dir`: every `<id>.ocr.txt` in the directory is paired with
///   `<id>.gold.txt`; `doc_id` is `<id>`. Pairs are ordered by id.
/// * `jsonl`: objects `{"ocr": ..., "gold": ..., "id": ...}`; a missing
///   `id` is synthesized as the zero-based record ordinal in decimal.
/// * `tsv`: two escaped columns `ocr<TAB>gold`; ids are ordinals.
pub fn read_pairs(path: &Path, format: CorpusFormat) -> Result<Vec<ParallelPair>, CorpusError> {
    match format {
        CorpusFormat::PlainDir => read_pairs_dir(path),
        CorpusFormat::Jsonl => read_pairs_jsonl(path),
        CorpusFormat::Tsv => read_pairs_tsv(path),
    }
}

fn read_pairs_dir(dir: &Path) -> Result<Vec<ParallelPair>, CorpusError> {
    let mut ocr_ids = Vec::new();
    let mut gold_ids = BTreeSet::new();
    for entry in fs::read_dir(dir).map_err(|e| io_err(dir, e))? {
        let entry = entry.map_err(|e| io_err(dir, e))?;
        let name = entry.file_name().to_string_lossy().into_owned();
        if let Some(id) = name.strip_suffix(".ocr.txt") {
            ocr_ids.push(id.to_string());
        } else if let Some(id) = name.strip_suffix(".gold.txt") {
            gold_ids.insert(id.to_string());
        }
    }
    ocr_ids.sort_unstable();
    let mut pairs = Vec::with_capacity(ocr_ids.len());
    for (index, id) in ocr_ids.iter().enumerate() {
        if !gold_ids.remove(id) {
            return Err(CorpusError::Record {
                path: dir.to_path_buf(),
                index,
                reason: format!("document {id:?} has no golden-standard side"),
            });
        }
        let ocred = read_utf8_file(&dir.join(format!("{id}.ocr.txt")))?;
        let golden = read_utf8_file(&dir.join(format!("{id}.gold.txt")))?;
        pairs.push(ParallelPair {
            ocred: Text::new(ocred),
            golden: Text::new(golden),
            doc_id: id.clone(),
        });
    }
    if let Some(orphan) = gold_ids.into_iter().next() {
        return Err(CorpusError::UnpairedFile(dir.to_path_buf(), orphan));
    }
    Ok(pairs)
}

fn read_pairs_jsonl(path: &Path) -> Result<Vec<ParallelPair>, CorpusError> {
    let content = read_utf8_file(path)?;
    let mut pairs = Vec::new();
    for (index, line) in record_lines(&content).iter().enumerate() {
        let record: PairRecord =
            serde_json::from_str(line).map_err(|e| CorpusError::Record {
                path: path.to_path_buf(),
                index,
                reason: e.to_string(),
            })?;
        pairs.push(ParallelPair {
            ocred: Text::new(record.ocr),
            golden: Text::new(record.gold),
            doc_id: record.id.unwrap_or_else(|| index.to_string()),
        });
    }
    Ok(pairs)
}

fn read_pairs_tsv(path: &Path) -> Result<Vec<ParallelPair>, CorpusError> {
    let content = read_utf8_file(path)?;
    let mut pairs = Vec::new();
    for (index, line) in record_lines(&content).iter().enumerate() {
        let mut cols = line.split('\t');
        let (ocr, gold) = match (cols.next(), cols.next(), cols.next()) {
            (Some(o), Some(g), None) => (o, g),
            _ => {
                return Err(CorpusError::Record {
                    path: path.to_path_buf(),
                    index,
                    reason: "expected exactly two tab-separated columns".to_string(),
                })
            }
        };
        let bad = |reason: String| CorpusError::Record {
            path: path.to_path_buf(),
            index,
            reason,
        };
        pairs.push(ParallelPair {
            ocred: Text::new(unescape_field(ocr).map_err(&bad)?),
            golden: Text::new(unescape_field(gold).map_err(&bad)?),
            doc_id: index.to_string(),
        });
    }
    Ok(pairs)
}

/// Writes a parallel corpus in the layout [`read_pairs`] reads.
///
/// For `jsonl` and `tsv`, `path` is the output file; for `plain-dir` it is
/// a directory (created if needed).
pub fn write_pairs(
    path: &Path,
    format: CorpusFormat,
    pairs: &[ParallelPair],
) -> Result<(), CorpusError> {
    match format {
        CorpusFormat::PlainDir => {
            fs::create_dir_all(path).map_err(|e| io_err(path, e))?;
            for pair in pairs {
                fs::write(
                    path.join(format!("{}.ocr.txt", pair.doc_id)),
                    pair.ocred.as_str(),
                )
                .map_err(|e| io_err(path, e))?;
                fs::write(
                    path.join(format!("{}.gold.txt", pair.doc_id)),
                    pair.golden.as_str(),
                )
                .map_err(|e| io_err(path, e))?;
            }
            Ok(())
        }
        CorpusFormat::Jsonl => {
            let mut out = Vec::new();
            for pair in pairs {
                let record = PairRecord {
                    ocr: pair.ocred.as_str().to_string(),
                    gold: pair.golden.as_str().to_string(),
                    id: Some(pair.doc_id.clone()),
                };
                serde_json::to_writer(&mut out, &record).expect("jsonl serialization");
                out.push(b'\n');
            }
            fs::write(path, out).map_err(|e| io_err(path, e))
        }
        CorpusFormat::Tsv => {
            let mut out = String::new();
            for pair in pairs {
                out.push_str(&escape_field(pair.ocred.as_str()));
                out.push('\t');
                out.push_str(&escape_field(pair.golden.as_str()));
                out.push('\n');
            }
            fs::write(path, out).map_err(|e| io_err(path, e))
        }
    }
}

/// Reads a plain-text corpus (one [`Doc`] per record).
///
/// * `plain-dir`: every `<id>.txt` file, ordered by id.
/// * `jsonl`: objects `{"text": ..., "id": ...}`, ids synthesized as
///   ordinals when missing.
/// * `tsv`: one escaped column per line; ids are ordinals.
pub fn read_texts(path: &Path, format: CorpusFormat) -> Result<Vec<Doc>, CorpusError> {
    match format {
        CorpusFormat::PlainDir => {
            let mut ids = Vec::new();
            for entry in fs::read_dir(path).map_err(|e| io_err(path, e))? {
                let entry = entry.map_err(|e| io_err(path, e))?;
                let name = entry.file_name().to_string_lossy().into_owned();
                if let Some(id) = name.strip_suffix(".txt") {
                    ids.push(id.to_string());
                }
            }
            ids.sort_unstable();
            ids.iter()
                .map(|id| {
                    Ok(Doc {
                        id: id.clone(),
                        text: Text::new(read_utf8_file(&path.join(format!("{id}.txt")))?),
                    })
                })
                .collect()
        }
        CorpusFormat::Jsonl => {
            let content = read_utf8_file(path)?;
            record_lines(&content)
                .iter()
                .enumerate()
                .map(|(index, line)| {
                    let record: DocRecord =
                        serde_json::from_str(line).map_err(|e| CorpusError::Record {
                            path: path.to_path_buf(),
                            index,
                            reason: e.to_string(),
                        })?;
                    Ok(Doc {
                        id: record.id.unwrap_or_else(|| index.to_string()),
                        text: Text::new(record.text),
                    })
                })
                .collect()
        }
        CorpusFormat::Tsv => {
            let content = read_utf8_file(path)?;
            record_lines(&content)
                .iter()
                .enumerate()
                .map(|(index, line)| {
                    let text = unescape_field(line).map_err(|reason| CorpusError::Record {
                        path: path.to_path_buf(),
                        index,
                        reason,
                    })?;
                    Ok(Doc {
                        id: index.to_string(),
                        text: Text::new(text),
                    })
                })
                .collect()
        }
    }
}

/// Writes a plain-text corpus in the layout [`read_texts`] reads.
pub fn write_texts(path: &Path, format: CorpusFormat, docs: &[Doc]) -> Result<(), CorpusError> {
    match format {
        CorpusFormat::PlainDir => {
            fs::create_dir_all(path).map_err(|e| io_err(path, e))?;
            for doc in docs {
                fs::write(path.join(format!("{}.txt", doc.id)), doc.text.as_str())
                    .map_err(|e| io_err(path, e))?;
            }
            Ok(())
        }
        CorpusFormat::Jsonl => {
            let mut out = Vec::new();
            for doc in docs {
                let record = DocRecord {
                    text: doc.text.as_str().to_string(),
                    id: Some(doc.id.clone()),
                };
                serde_json::to_writer(&mut out, &record).expect("jsonl serialization");
                out.push(b'\n');
            }
            fs::write(path, out).map_err(|e| io_err(path, e))
        }
        CorpusFormat::Tsv => {
            let mut out = String::new();
            for doc in docs {
                out.push_str(&escape_field(doc.text.as_str()));
                out.push('\n');
            }
            fs::write(path, out).map_err(|e| io_err(path, e))
        }
    }
}

/// Writes `lines` joined with line feeds, with a trailing line feed when
/// non-empty.
pub fn write_lines(path: &Path, lines: &[String]) -> Result<(), CorpusError> {
    let file = fs::File::create(path).map_err(|e| io_err(path, e))?;
    let mut w = std::io::BufWriter::new(file);
    for line in lines {
        w.write_all(line.as_bytes())
            .and_then(|_| w.write_all(b"\n"))
            .map_err(|e| io_err(path, e))?;
    }
    w.flush().map_err(|e| io_err(path, e))
}

/// Reads a file written by [`write_lines`] back into its lines.
pub fn read_lines(path: &Path) -> Result<Vec<String>, CorpusError> {
    let content = read_utf8_file(path)?;
    Ok(record_lines(&content)
        .into_iter()
        .map(str::to_string)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lines_round_trip_through_join() {
        let t = Text::new("a\nb\n");
        assert_eq!(t.lines(), vec!["a", "b", ""]);
        assert_eq!(Text::from_lines(&t.lines()), t);
        let empty = Text::new("");
        assert_eq!(empty.lines(), vec![""]);
    }

    #[test]
    fn char_indexing_is_scalar_based() {
        let t = Text::new("šαב");
        assert_eq!(t.char_count(), 3);
        assert!(t.as_str().len() > 3);
    }

    #[test]
    fn nfc_is_opt_in() {
        // e + combining acute composes under NFC; raw ingestion keeps both scalars
        let t = Text::new("e\u{301}");
        assert_eq!(t.char_count(), 2);
        assert_eq!(t.to_nfc().as_str(), "é");
        // positional letter forms are unaffected by NFC and stay distinct
        let finals = Text::new("ךםןףץ");
        assert_eq!(finals.to_nfc(), finals);
    }

    #[test]
    fn tokenize_basics() {
        let d = DelimiterSet::default();
        assert_eq!(tokenize("the cat.", &d), vec!["the", "cat"]);
        assert_eq!(tokenize("", &d), Vec::<&str>::new());
        assert_eq!(tokenize("a--b", &d), vec!["a", "b"]);
        assert_eq!(tokenize("—dash—", &d), vec!["dash"]);
    }

    #[test]
    fn delimiter_set_rejects_empty() {
        assert!(DelimiterSet::new(std::iter::empty()).is_err());
        assert!(DelimiterSet::new([' ']).is_ok());
    }

    #[test]
    fn jsonl_pair_ingestion() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pairs.jsonl");
        fs::write(&path, "{\"ocr\":\"ab\",\"gold\":\"ab\",\"id\":\"d0\"}\n").unwrap();
        let pairs = read_pairs(&path, CorpusFormat::Jsonl).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].ocred.as_str(), "ab");
        assert_eq!(pairs[0].golden.as_str(), "ab");
        assert_eq!(pairs[0].doc_id, "d0");
    }

    #[test]
    fn empty_jsonl_is_empty_corpus() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pairs.jsonl");
        fs::write(&path, "").unwrap();
        assert!(read_pairs(&path, CorpusFormat::Jsonl).unwrap().is_empty());
    }

    #[test]
    fn tsv_ids_are_ordinals() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pairs.tsv");
        fs::write(&path, "a\tb\nc\td\n").unwrap();
        let pairs = read_pairs(&path, CorpusFormat::Tsv).unwrap();
        assert_eq!(pairs.len(), 2);
        assert_eq!(pairs[0].doc_id, "0");
        assert_eq!(pairs[1].doc_id, "1");
    }

    #[test]
    fn missing_side_names_record_index() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pairs.jsonl");
        fs::write(
            &path,
            "{\"ocr\":\"a\",\"gold\":\"b\"}\n{\"ocr\":\"only\"}\n",
        )
        .unwrap();
        let err = read_pairs(&path, CorpusFormat::Jsonl).unwrap_err();
        match err {
            CorpusError::Record { index, reason, .. } => {
                assert_eq!(index, 1);
                assert!(reason.contains("gold"), "reason: {reason}");
            }
            other => panic!("expected record error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_utf8_names_byte_offset() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.jsonl");
        fs::write(&path, [b'{', b'"', 0xFF, 0xFE]).unwrap();
        match read_pairs(&path, CorpusFormat::Jsonl).unwrap_err() {
            CorpusError::Utf8 { offset, .. } => assert_eq!(offset, 2),
            other => panic!("expected utf8 error, got {other:?}"),
        }
    }

    #[test]
    fn plain_dir_pairs_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let pairs = vec![
            ParallelPair {
                ocred: Text::new("שלום\nעולם"),
                golden: Text::new("שלוס\nעולם"),
                doc_id: "a1".to_string(),
            },
            ParallelPair {
                ocred: Text::new("x"),
                golden: Text::new("y"),
                doc_id: "b2".to_string(),
            },
        ];
        write_pairs(dir.path(), CorpusFormat::PlainDir, &pairs).unwrap();
        let back = read_pairs(dir.path(), CorpusFormat::PlainDir).unwrap();
        assert_eq!(back, pairs);
    }

    #[test]
    fn plain_dir_missing_gold_side_errors() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("d.ocr.txt"), "x").unwrap();
        assert!(read_pairs(dir.path(), CorpusFormat::PlainDir).is_err());
    }

    fn arb_text() -> impl Strategy<Value = String> {
        // strings heavy in delimiters, escapes, and multibyte scalars
        proptest::string::string_regex("[ \\t\\nא-תa-c\\\\.\\-—'\"()\\[\\]]{0,40}").unwrap()
    }

    proptest! {
        #[test]
        fn escape_round_trips(s in arb_text()) {
            let escaped = escape_field(&s);
            prop_assert!(!escaped.contains('\t'));
            prop_assert!(!escaped.contains('\n'));
            prop_assert_eq!(unescape_field(&escaped).unwrap(), s);
        }

        #[test]
        fn pair_corpus_round_trips_jsonl_and_tsv(
            records in proptest::collection::vec((arb_text(), arb_text()), 0..8)
        ) {
            let pairs: Vec<ParallelPair> = records
                .iter()
                .enumerate()
                .map(|(i, (o, g))| ParallelPair {
                    ocred: Text::new(o.clone()),
                    golden: Text::new(g.clone()),
                    doc_id: i.to_string(),
                })
                .collect();
            let dir = tempfile::tempdir().unwrap();
            for format in [CorpusFormat::Jsonl, CorpusFormat::Tsv] {
                let path = dir.path().join("corpus");
                write_pairs(&path, format, &pairs).unwrap();
                prop_assert_eq!(&read_pairs(&path, format).unwrap(), &pairs);
            }
        }

        #[test]
        fn tokens_contain_no_delimiters(s in arb_text()) {
            let d = DelimiterSet::default();
            for word in tokenize(&s, &d) {
                prop_assert!(!word.is_empty());
                prop_assert!(word.chars().all(|c| !d.contains(c)));
            }
        }

        #[test]
        fn delimiter_swap_preserves_words(s in arb_text()) {
            // replacing one delimiter with another only moves boundaries,
            // never word content
            let d = DelimiterSet::default();
            let swapped: String = s
                .chars()
                .map(|c| if c == ' ' { '.' } else { c })
                .collect();
            prop_assert_eq!(tokenize(&s, &d), tokenize(&swapped, &d));
        }
    }
}
