//! Pipeline subcommands.
//!
//! One stage per subcommand: `learn` (parallel corpus -> confusion table),
//! `inject` (clean corpus -> corrupted corpus + error log), `split` and
//! `export` (dataset assembly), `lm-train` and `correct` (the baseline
//! corrector), and `eval` (comparison report).
//!
//! Every run writes a `manifest.json` next to its outputs recording the
//! resolved parameters (defaults included), seed, paths, tool version,
//! and timestamps; re-running with the same parameters reproduces the
//! data outputs byte-identically. Flags may also be supplied through a
//! TOML config file (`--config`); explicit flags override file values.
//! Diagnostics go to standard error, data to files or standard output.
//!
//! Exit codes: 0 success, 1 input or validation error, 2 internal
//! invariant violation.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::confusion::{self, LearnOptions};
use crate::corrector::{self, ChannelModel, CharLM, DEFAULT_BEAM_WIDTH};
use crate::dataset::{self, ExportFormat};
use crate::errorgen::{self, InjectionConfig};
use crate::metrics::{self, EvalRow};
use crate::text::{self, CorpusFormat, DelimiterSet, Doc, Text};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable or malformed inputs. Exit code 1.
    Input(String),
    /// A violated internal invariant. Exit code 2.
    Internal(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "error: {msg}"),
            CliError::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

macro_rules! input_error_from {
    ($($ty:ty),+) => {
        $(impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                CliError::Input(e.to_string())
            }
        })+
    };
}

input_error_from!(
    crate::text::CorpusError,
    crate::confusion::ConfusionError,
    crate::errorgen::InjectError,
    crate::dataset::DatasetError,
    crate::corrector::CorrectorError,
    crate::metrics::MetricsError,
    crate::align::AlignError
);

#[derive(Parser, Debug)]
#[command(
    name = "ocrforge",
    version,
    about = "OCR confusion learning, synthetic corruption, dataset assembly, and correction evaluation"
)]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Corpus or export format (subcommand-specific; see each subcommand).
    #[arg(long, global = true)]
    format: Option<String>,
    /// Output directory. All files are written inside it.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// TOML config file with `key = value` defaults for any flag.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads for per-document parallelism. Output is identical
    /// for every value.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Apply NFC normalization to ingested texts (off by default).
    #[arg(long, global = true)]
    nfc: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Learn a confusion table from a parallel corpus.
    Learn(LearnArgs),
    /// Corrupt a clean corpus with random and corpus-specific errors.
    Inject(InjectArgs),
    /// Build line pairs from a parallel corpus and assign train/validation tags.
    Split(SplitArgs),
    /// Export a tagged dataset in a trainer-friendly format.
    Export(ExportArgs),
    /// Compare corrected output against OCRed input and the golden standard.
    Eval(EvalArgs),
    /// Fix a corpus with the noisy-channel baseline corrector.
    Correct(CorrectArgs),
    /// Train the character n-gram language model on a clean corpus.
    LmTrain(LmTrainArgs),
}

#[derive(Args, Debug)]
struct LearnArgs {
    /// Parallel corpus (file, or directory for plain-dir).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Fraction of pairs used for learning, after a seeded shuffle.
    #[arg(long)]
    fraction: Option<f64>,
    /// How many top confusions to print to standard output.
    #[arg(long)]
    top: Option<usize>,
}

#[derive(Args, Debug)]
struct InjectArgs {
    /// Clean text corpus.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Confusion table TSV; omit for random-only errors.
    #[arg(long)]
    table: Option<PathBuf>,
    #[arg(long)]
    p_delete: Option<f64>,
    #[arg(long)]
    p_insert: Option<f64>,
    #[arg(long)]
    p_swap: Option<f64>,
    #[arg(long)]
    p_confusion: Option<f64>,
    /// Characters for random insertions; default derives from the input.
    #[arg(long)]
    alphabet: Option<String>,
}

#[derive(Args, Debug)]
struct SplitArgs {
    /// Parallel corpus.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Fraction of documents assigned to the training split.
    #[arg(long)]
    train_fraction: Option<f64>,
}

#[derive(Args, Debug)]
struct ExportArgs {
    /// Tagged dataset (the `dataset.jsonl` written by `split`).
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EvalArgs {
    /// Golden-standard text corpus.
    #[arg(long)]
    golden: Option<PathBuf>,
    /// OCRed (uncorrected) text corpus.
    #[arg(long)]
    ocred: Option<PathBuf>,
    /// Corrected text corpus.
    #[arg(long)]
    fixed: Option<PathBuf>,
    /// Row label for the corrected system in the report.
    #[arg(long)]
    name: Option<String>,
    /// Word-boundary characters (a string of delimiters).
    #[arg(long)]
    delimiters: Option<String>,
}

#[derive(Args, Debug)]
struct CorrectArgs {
    /// Text corpus to fix.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Language model TSV from `lm-train`.
    #[arg(long)]
    lm: Option<PathBuf>,
    /// Confusion table TSV from `learn`.
    #[arg(long)]
    table: Option<PathBuf>,
    #[arg(long)]
    beam_width: Option<usize>,
}

#[derive(Args, Debug)]
struct LmTrainArgs {
    /// Clean text corpus.
    #[arg(long)]
    input: Option<PathBuf>,
    /// N-gram order.
    #[arg(long)]
    order: Option<usize>,
}

/// Resolves parameters from CLI flags, the config file, and defaults, and
/// records every resolved value for the manifest.
struct Params {
    config: toml::Table,
    resolved: BTreeMap<String, serde_json::Value>,
}

impl Params {
    fn new(config_path: Option<&Path>) -> Result<Self, CliError> {
        let config = match config_path {
            Some(path) => {
                let content = fs::read_to_string(path).map_err(|e| {
                    CliError::Input(format!("cannot read config {}: {e}", path.display()))
                })?;
                content.parse::<toml::Table>().map_err(|e| {
                    CliError::Input(format!("cannot parse config {}: {e}", path.display()))
                })?
            }
            None => toml::Table::new(),
        };
        Ok(Self {
            config,
            resolved: BTreeMap::new(),
        })
    }

    fn record(&mut self, key: &str, value: serde_json::Value) {
        self.resolved.insert(key.to_string(), value);
    }

    fn config_str(&self, key: &str) -> Result<Option<String>, CliError> {
        match self.config.get(key) {
            None => Ok(None),
            Some(toml::Value::String(s)) => Ok(Some(s.clone())),
            Some(other) => Err(CliError::Input(format!(
                "config key {key:?} must be a string, got {other}"
            ))),
        }
    }

    fn string(&mut self, cli: Option<String>, key: &str, default: &str) -> Result<String, CliError> {
        let value = match cli {
            Some(v) => v,
            None => self.config_str(key)?.unwrap_or_else(|| default.to_string()),
        };
        self.record(key, serde_json::Value::String(value.clone()));
        Ok(value)
    }

    fn string_opt(&mut self, cli: Option<String>, key: &str) -> Result<Option<String>, CliError> {
        let value = match cli {
            Some(v) => Some(v),
            None => self.config_str(key)?,
        };
        self.record(
            key,
            value
                .clone()
                .map(serde_json::Value::String)
                .unwrap_or(serde_json::Value::Null),
        );
        Ok(value)
    }

    fn path_req(&mut self, cli: Option<PathBuf>, key: &str) -> Result<PathBuf, CliError> {
        match self.path_opt(cli, key)? {
            Some(p) => Ok(p),
            None => Err(CliError::Input(format!("missing required --{key}"))),
        }
    }

    fn path_opt(&mut self, cli: Option<PathBuf>, key: &str) -> Result<Option<PathBuf>, CliError> {
        let value = match cli {
            Some(p) => Some(p),
            None => self.config_str(key)?.map(PathBuf::from),
        };
        self.record(
            key,
            value
                .as_ref()
                .map(|p| serde_json::Value::String(p.display().to_string()))
                .unwrap_or(serde_json::Value::Null),
        );
        Ok(value)
    }

    fn u64(&mut self, cli: Option<u64>, key: &str, default: u64) -> Result<u64, CliError> {
        let value = match cli {
            Some(v) => v,
            None => match self.config.get(key) {
                None => default,
                Some(toml::Value::Integer(i)) if *i >= 0 => *i as u64,
                Some(other) => {
                    return Err(CliError::Input(format!(
                        "config key {key:?} must be a non-negative integer, got {other}"
                    )))
                }
            },
        };
        self.record(key, serde_json::Value::from(value));
        Ok(value)
    }

    fn usize(&mut self, cli: Option<usize>, key: &str, default: usize) -> Result<usize, CliError> {
        Ok(self.u64(cli.map(|v| v as u64), key, default as u64)? as usize)
    }

    fn f64(&mut self, cli: Option<f64>, key: &str, default: f64) -> Result<f64, CliError> {
        let value = match cli {
            Some(v) => v,
            None => match self.config.get(key) {
                None => default,
                Some(toml::Value::Float(f)) => *f,
                Some(toml::Value::Integer(i)) => *i as f64,
                Some(other) => {
                    return Err(CliError::Input(format!(
                        "config key {key:?} must be a number, got {other}"
                    )))
                }
            },
        };
        self.record(key, serde_json::Value::from(value));
        Ok(value)
    }

    fn flag(&mut self, cli: bool, key: &str) -> Result<bool, CliError> {
        let value = if cli {
            true
        } else {
            match self.config.get(key) {
                None => false,
                Some(toml::Value::Boolean(b)) => *b,
                Some(other) => {
                    return Err(CliError::Input(format!(
                        "config key {key:?} must be a boolean, got {other}"
                    )))
                }
            }
        };
        self.record(key, serde_json::Value::Bool(value));
        Ok(value)
    }

    fn corpus_format(&mut self, cli: Option<String>, default: &str) -> Result<CorpusFormat, CliError> {
        let raw = self.string(cli, "format", default)?;
        Ok(CorpusFormat::parse(&raw)?)
    }
}

#[derive(Serialize)]
struct RunManifest {
    subcommand: String,
    version: String,
    seed: u64,
    parameters: BTreeMap<String, serde_json::Value>,
    inputs: Vec<String>,
    outputs: Vec<String>,
    started_unix_ms: u64,
    finished_unix_ms: u64,
}

fn now_ms() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0)
}

struct Outcome {
    inputs: Vec<PathBuf>,
    outputs: Vec<PathBuf>,
}

/// Parses arguments and runs the requested subcommand, returning the
/// process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            // usage and parse diagnostics go to standard error, exit 1
            eprint!("{}", err.render());
            return 1;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("{err}");
            err.exit_code()
        }
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let started = now_ms();
    let mut params = Params::new(cli.config.as_deref())?;
    let out_dir = params.path_req(cli.out.clone(), "out")?;
    let seed = params.u64(cli.seed, "seed", 0)?;
    let jobs = params.usize(cli.jobs, "jobs", 0)?;
    let nfc = params.flag(cli.nfc, "nfc")?;

    fs::create_dir_all(&out_dir)
        .map_err(|e| CliError::Input(format!("cannot create {}: {e}", out_dir.display())))?;

    let subcommand = match &cli.command {
        Command::Learn(_) => "learn",
        Command::Inject(_) => "inject",
        Command::Split(_) => "split",
        Command::Export(_) => "export",
        Command::Eval(_) => "eval",
        Command::Correct(_) => "correct",
        Command::LmTrain(_) => "lm-train",
    }
    .to_string();

    let run_command = || -> Result<Outcome, CliError> {
        match cli.command {
            Command::Learn(args) => cmd_learn(args, cli.format, seed, nfc, &out_dir, &mut params),
            Command::Inject(args) => cmd_inject(args, cli.format, seed, nfc, &out_dir, &mut params),
            Command::Split(args) => cmd_split(args, cli.format, seed, nfc, &out_dir, &mut params),
            Command::Export(args) => cmd_export(args, cli.format, &out_dir, &mut params),
            Command::Eval(args) => cmd_eval(args, cli.format, nfc, &out_dir, &mut params),
            Command::Correct(args) => cmd_correct(args, cli.format, nfc, &out_dir, &mut params),
            Command::LmTrain(args) => cmd_lm_train(args, cli.format, nfc, &out_dir, &mut params),
        }
    };

    let outcome = if jobs > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| CliError::Internal(format!("cannot build thread pool: {e}")))?;
        pool.install(run_command)?
    } else {
        run_command()?
    };

    let manifest = RunManifest {
        subcommand,
        version: env!("CARGO_PKG_VERSION").to_string(),
        seed,
        parameters: params.resolved.clone(),
        inputs: outcome.inputs.iter().map(|p| p.display().to_string()).collect(),
        outputs: outcome
            .outputs
            .iter()
            .map(|p| p.display().to_string())
            .collect(),
        started_unix_ms: started,
        finished_unix_ms: now_ms(),
    };
    let manifest_path = out_dir.join("manifest.json");
    let rendered = serde_json::to_string_pretty(&manifest)
        .map_err(|e| CliError::Internal(format!("manifest serialization: {e}")))?;
    fs::write(&manifest_path, rendered + "\n")
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", manifest_path.display())))?;
    Ok(())
}

fn apply_nfc_docs(docs: &mut [Doc], nfc: bool) {
    if nfc {
        for doc in docs {
            doc.text = doc.text.to_nfc();
        }
    }
}

fn cmd_learn(
    args: LearnArgs,
    format: Option<String>,
    seed: u64,
    nfc: bool,
    out_dir: &Path,
    params: &mut Params,
) -> Result<Outcome, CliError> {
    let input = params.path_req(args.input, "input")?;
    let format = params.corpus_format(format, "jsonl")?;
    let fraction = params.f64(args.fraction, "fraction", 0.7)?;
    let top = params.usize(args.top, "top", 10)?;

    let mut pairs = text::read_pairs(&input, format)?;
    if nfc {
        for pair in &mut pairs {
            pair.ocred = pair.ocred.to_nfc();
            pair.golden = pair.golden.to_nfc();
        }
    }
    let report = confusion::learn_confusions(
        &pairs,
        &LearnOptions {
            fraction,
            seed,
            ..LearnOptions::default()
        },
    )?;
    eprintln!(
        "learned {} substitution pairs from {} documents ({} skipped)",
        report.table.distinct_substitutions(),
        report.pairs_used,
        report.pairs_skipped
    );
    for (source, target, count) in confusion::top_k(&report.table, top) {
        println!(
            "{}\t{}\t{}",
            text::escape_field(&source.to_string()),
            text::escape_field(&target.to_string()),
            count
        );
    }
    let table_path = out_dir.join("confusions.tsv");
    confusion::save_table(&report.table, &table_path)?;
    Ok(Outcome {
        inputs: vec![input],
        outputs: vec![table_path],
    })
}

fn corpus_file_name(stem: &str, format: CorpusFormat) -> String {
    match format {
        CorpusFormat::PlainDir => stem.to_string(),
        CorpusFormat::Jsonl => format!("{stem}.jsonl"),
        CorpusFormat::Tsv => format!("{stem}.tsv"),
    }
}

fn cmd_inject(
    args: InjectArgs,
    format: Option<String>,
    seed: u64,
    nfc: bool,
    out_dir: &Path,
    params: &mut Params,
) -> Result<Outcome, CliError> {
    let input = params.path_req(args.input, "input")?;
    let format = params.corpus_format(format, "jsonl")?;
    let table_path = params.path_opt(args.table, "table")?;
    let cfg = InjectionConfig {
        p_delete: params.f64(args.p_delete, "p-delete", 0.01)?,
        p_insert: params.f64(args.p_insert, "p-insert", 0.01)?,
        p_swap: params.f64(args.p_swap, "p-swap", 0.005)?,
        p_confusion: params.f64(args.p_confusion, "p-confusion", 0.06)?,
        alphabet: params
            .string_opt(args.alphabet, "alphabet")?
            .map(|s| s.chars().collect())
            .unwrap_or_default(),
        seed,
    };

    let mut docs = text::read_texts(&input, format)?;
    apply_nfc_docs(&mut docs, nfc);
    let table = table_path.as_deref().map(confusion::load_table).transpose()?;
    let generated = errorgen::generate_dataset(&docs, &cfg, table.as_ref())?;
    eprintln!(
        "injected {} errors over {} characters in {} documents",
        generated.stats.total_events(),
        generated.stats.chars,
        docs.len()
    );

    let corrupted_docs: Vec<Doc> = generated
        .pairs
        .iter()
        .map(|p| Doc {
            id: p.doc_id.clone(),
            text: p.ocred.clone(),
        })
        .collect();
    let corrupted_path = out_dir.join(corpus_file_name("corrupted", format));
    text::write_texts(&corrupted_path, format, &corrupted_docs)?;
    let pairs_path = out_dir.join(corpus_file_name("pairs", format));
    text::write_pairs(&pairs_path, format, &generated.pairs)?;

    let log_path = out_dir.join("errors.jsonl");
    let tagged: Vec<(&str, &errorgen::ErrorLog)> = generated
        .pairs
        .iter()
        .zip(&generated.logs)
        .map(|(p, log)| (p.doc_id.as_str(), log))
        .collect();
    let mut log_file = Vec::new();
    errorgen::write_logs_jsonl(&mut log_file, &tagged)
        .map_err(|e| CliError::Internal(format!("log serialization: {e}")))?;
    fs::write(&log_path, log_file)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", log_path.display())))?;

    let stats_path = out_dir.join("stats.json");
    let stats = serde_json::to_string_pretty(&generated.stats)
        .map_err(|e| CliError::Internal(format!("stats serialization: {e}")))?;
    fs::write(&stats_path, stats + "\n")
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", stats_path.display())))?;

    let mut inputs = vec![input];
    inputs.extend(table_path);
    Ok(Outcome {
        inputs,
        outputs: vec![corrupted_path, pairs_path, log_path, stats_path],
    })
}

fn cmd_split(
    args: SplitArgs,
    format: Option<String>,
    seed: u64,
    nfc: bool,
    out_dir: &Path,
    params: &mut Params,
) -> Result<Outcome, CliError> {
    let input = params.path_req(args.input, "input")?;
    let format = params.corpus_format(format, "jsonl")?;
    let train_fraction = params.f64(args.train_fraction, "train-fraction", 0.8)?;

    let mut pairs = text::read_pairs(&input, format)?;
    if nfc {
        for pair in &mut pairs {
            pair.ocred = pair.ocred.to_nfc();
            pair.golden = pair.golden.to_nfc();
        }
    }
    let mut ds = dataset::build_line_pairs(&pairs);
    for rejection in &ds.rejections {
        eprintln!(
            "rejected document {:?}: {} OCRed lines vs {} golden lines",
            rejection.doc_id, rejection.ocred_lines, rejection.golden_lines
        );
    }
    let summary = dataset::split_dataset(&mut ds, train_fraction, seed)?;
    eprintln!(
        "split {} records into {} train / {} validation documents",
        ds.records.len(),
        summary.train_docs,
        summary.validation_docs
    );
    let dataset_path = out_dir.join("dataset.jsonl");
    dataset::write_tagged(&ds, &dataset_path)?;
    Ok(Outcome {
        inputs: vec![input],
        outputs: vec![dataset_path],
    })
}

fn cmd_export(
    args: ExportArgs,
    format: Option<String>,
    out_dir: &Path,
    params: &mut Params,
) -> Result<Outcome, CliError> {
    let input = params.path_req(args.input, "input")?;
    let format_name = params.string(format, "format", "jsonl")?;
    let format = ExportFormat::parse(&format_name)?;
    let ds = dataset::read_tagged(&input)?;
    let outputs = dataset::export(&ds, format, out_dir)?;
    eprintln!("exported {} records", ds.records.len());
    Ok(Outcome {
        inputs: vec![input],
        outputs,
    })
}

fn read_text_corpus(path: &Path, format: CorpusFormat, nfc: bool) -> Result<Vec<Doc>, CliError> {
    let mut docs = text::read_texts(path, format)?;
    apply_nfc_docs(&mut docs, nfc);
    Ok(docs)
}

fn cmd_eval(
    args: EvalArgs,
    format: Option<String>,
    nfc: bool,
    out_dir: &Path,
    params: &mut Params,
) -> Result<Outcome, CliError> {
    let golden_path = params.path_req(args.golden, "golden")?;
    let ocred_path = params.path_req(args.ocred, "ocred")?;
    let fixed_path = params.path_req(args.fixed, "fixed")?;
    let format = params.corpus_format(format, "jsonl")?;
    let name = params.string(args.name, "name", "fixed")?;
    let delimiters = params.string_opt(args.delimiters, "delimiters")?;

    let delims = match delimiters {
        Some(chars) => DelimiterSet::new(chars.chars())?,
        None => DelimiterSet::default(),
    };
    let golden = read_text_corpus(&golden_path, format, nfc)?;
    let ocred = read_text_corpus(&ocred_path, format, nfc)?;
    let fixed = read_text_corpus(&fixed_path, format, nfc)?;
    if golden.len() != ocred.len() || golden.len() != fixed.len() {
        return Err(CliError::Input(format!(
            "corpora must have equal document counts: golden {}, ocred {}, fixed {}",
            golden.len(),
            ocred.len(),
            fixed.len()
        )));
    }
    let triples: Vec<(Text, Text, Text)> = golden
        .into_iter()
        .zip(ocred)
        .zip(fixed)
        .map(|((g, o), f)| (g.text, o.text, f.text))
        .collect();
    let evaluation = metrics::evaluate_corrector(&triples, &delims)?;
    if evaluation.skipped > 0 {
        eprintln!("skipped {} documents with undefined word accuracy", evaluation.skipped);
    }

    let rows = vec![
        EvalRow {
            name: "ocred".to_string(),
            acc_increase: 0.0,
            word_accuracy: evaluation.ocred_word_accuracy(),
        },
        EvalRow {
            name,
            acc_increase: evaluation.mean_acc_increase,
            word_accuracy: evaluation.fixed_word_accuracy(),
        },
    ];
    let rendered = metrics::render_report(&rows);
    print!("{rendered}");
    let txt_path = out_dir.join("report.txt");
    fs::write(&txt_path, &rendered)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", txt_path.display())))?;
    let json_path = out_dir.join("report.json");
    fs::write(&json_path, metrics::report_json(&rows) + "\n")
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", json_path.display())))?;
    Ok(Outcome {
        inputs: vec![golden_path, ocred_path, fixed_path],
        outputs: vec![txt_path, json_path],
    })
}

fn cmd_correct(
    args: CorrectArgs,
    format: Option<String>,
    nfc: bool,
    out_dir: &Path,
    params: &mut Params,
) -> Result<Outcome, CliError> {
    let input = params.path_req(args.input, "input")?;
    let lm_path = params.path_req(args.lm, "lm")?;
    let table_path = params.path_req(args.table, "table")?;
    let format = params.corpus_format(format, "jsonl")?;
    let beam_width = params.usize(args.beam_width, "beam-width", DEFAULT_BEAM_WIDTH)?;

    let docs = read_text_corpus(&input, format, nfc)?;
    let lm = CharLM::load(&lm_path)?;
    let table = confusion::load_table(&table_path)?;
    let channel = ChannelModel::from_table(&table);
    let fixed = corrector::correct_corpus(&docs, &lm, &channel, beam_width);
    eprintln!("corrected {} documents", fixed.len());
    let fixed_path = out_dir.join(corpus_file_name("fixed", format));
    text::write_texts(&fixed_path, format, &fixed)?;
    Ok(Outcome {
        inputs: vec![input, lm_path, table_path],
        outputs: vec![fixed_path],
    })
}

fn cmd_lm_train(
    args: LmTrainArgs,
    format: Option<String>,
    nfc: bool,
    out_dir: &Path,
    params: &mut Params,
) -> Result<Outcome, CliError> {
    let input = params.path_req(args.input, "input")?;
    let format = params.corpus_format(format, "jsonl")?;
    let order = params.usize(args.order, "order", 4)?;

    let docs = read_text_corpus(&input, format, nfc)?;
    let texts: Vec<Text> = docs.into_iter().map(|d| d.text).collect();
    let lm = CharLM::train(&texts, order)?;
    eprintln!(
        "trained order-{} model, vocabulary {} symbols",
        lm.order(),
        lm.vocab_size()
    );
    let lm_path = out_dir.join("lm.tsv");
    lm.save(&lm_path)?;
    Ok(Outcome {
        inputs: vec![input],
        outputs: vec![lm_path],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_subcommand_exits_1() {
        assert_eq!(run(["ocrforge", "no-such-command"]), 1);
        assert_eq!(run(["ocrforge", "learn", "--bogus-flag"]), 1);
    }

    #[test]
    fn missing_out_is_an_input_error() {
        let dir = tempfile::tempdir().unwrap();
        let input = dir.path().join("pairs.jsonl");
        fs::write(&input, "{\"ocr\":\"adc\",\"gold\":\"abc\"}\n").unwrap();
        let code = run([
            "ocrforge",
            "learn",
            "--input",
            input.to_str().unwrap(),
        ]);
        assert_eq!(code, 1);
    }

    #[test]
    fn config_file_supplies_defaults_and_flags_override() {
        let dir = tempfile::tempdir().unwrap();
        let input = dir.path().join("pairs.jsonl");
        fs::write(&input, "{\"ocr\":\"adc\",\"gold\":\"abc\"}\n{\"ocr\":\"xy\",\"gold\":\"xz\"}\n")
            .unwrap();
        let config = dir.path().join("run.toml");
        let out = dir.path().join("out");
        fs::write(
            &config,
            format!(
                "fraction = 1.0\nseed = 5\nout = {:?}\ntop = 1\n",
                out.display().to_string()
            ),
        )
        .unwrap();
        let code = run([
            "ocrforge",
            "learn",
            "--input",
            input.to_str().unwrap(),
            "--config",
            config.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        let manifest: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
        assert_eq!(manifest["seed"], 5);
        assert_eq!(manifest["parameters"]["fraction"], 1.0);
        assert_eq!(manifest["parameters"]["top"], 1);
        // flag overrides the config value
        let out2 = dir.path().join("out2");
        let code = run([
            "ocrforge",
            "learn",
            "--input",
            input.to_str().unwrap(),
            "--config",
            config.to_str().unwrap(),
            "--out",
            out2.to_str().unwrap(),
            "--seed",
            "9",
        ]);
        assert_eq!(code, 0);
        let manifest: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(out2.join("manifest.json")).unwrap()).unwrap();
        assert_eq!(manifest["seed"], 9);
    }
}
