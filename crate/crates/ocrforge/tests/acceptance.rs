//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion lines.

use std::collections::BTreeSet;
use std::time::Instant;

use ocrforge::align::{levenshtein, nw_align, Scoring};
use ocrforge::confusion::{learn_confusions, ConfusionTable, LearnOptions};
use ocrforge::corrector::{correct_line, correct_text, ChannelModel, CharLM, Sym};
use ocrforge::dataset::{build_line_pairs, split_dataset, Split};
use ocrforge::errorgen::{generate_dataset, inject_errors, InjectionConfig};
use ocrforge::metrics::{
    acc_increase, acc_increase_from_distances, evaluate_corrector, word_accuracy,
};
use ocrforge::rng::SplitMix64;
use ocrforge::text::{DelimiterSet, Doc, Text};

// ---------------------------------------------------------------- helpers

/// Recursive-definition edit distance, memoized; the independent oracle
/// for criterion 1.
fn levenshtein_oracle(a: &[u8], b: &[u8]) -> usize {
    fn rec(a: &[u8], b: &[u8], i: usize, j: usize, memo: &mut [Vec<Option<usize>>]) -> usize {
        if i == 0 {
            return j;
        }
        if j == 0 {
            return i;
        }
        if let Some(v) = memo[i][j] {
            return v;
        }
        let cost = usize::from(a[i - 1] != b[j - 1]);
        let v = (rec(a, b, i - 1, j - 1, memo) + cost)
            .min(rec(a, b, i - 1, j, memo) + 1)
            .min(rec(a, b, i, j - 1, memo) + 1);
        memo[i][j] = Some(v);
        v
    }
    let mut memo = vec![vec![None; b.len() + 1]; a.len() + 1];
    rec(a, b, a.len(), b.len(), &mut memo)
}

/// All strings of length 0..=max_len over the alphabet.
fn all_strings(alphabet: &[u8], max_len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(frontier.len() * alphabet.len());
        for prefix in &frontier {
            for &c in alphabet {
                let mut s = prefix.clone();
                s.push(c);
                next.push(s);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn random_string(rng: &mut SplitMix64, alphabet: &[char], max_len: usize) -> Vec<char> {
    let len = rng.next_range(max_len + 1);
    (0..len).map(|_| alphabet[rng.next_range(alphabet.len())]).collect()
}

/// Average-rank vector (ties share the mean rank).
fn ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap());
    let mut out = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let mean_rank = (i + j) as f64 / 2.0 + 1.0;
        for &idx in &order[i..=j] {
            out[idx] = mean_rank;
        }
        i = j + 1;
    }
    out
}

fn spearman(a: &[f64], b: &[f64]) -> f64 {
    let (ra, rb) = (ranks(a), ranks(b));
    let n = ra.len() as f64;
    let mean_a = ra.iter().sum::<f64>() / n;
    let mean_b = rb.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var_a = 0.0;
    let mut var_b = 0.0;
    for (x, y) in ra.iter().zip(&rb) {
        cov += (x - mean_a) * (y - mean_b);
        var_a += (x - mean_a).powi(2);
        var_b += (y - mean_b).powi(2);
    }
    cov / (var_a.sqrt() * var_b.sqrt())
}

/// Ten substitution pairs: targets a..e live in the clean alphabet,
/// sources p..y do not, so injected errors are attributable exactly.
/// Sources `p` and `q` each have two possible truths, so correcting them
/// genuinely needs the language model.
fn synthetic_table() -> ConfusionTable {
    let entries = [
        ('p', 'a', 50),
        ('q', 'a', 10),
        ('r', 'b', 40),
        ('p', 'b', 20),
        ('t', 'c', 35),
        ('u', 'c', 5),
        ('v', 'd', 30),
        ('q', 'd', 15),
        ('x', 'e', 25),
        ('y', 'e', 45),
    ];
    let mut table = ConfusionTable::new();
    for (source, target, count) in entries {
        table.add_substitution(source, target, count).unwrap();
    }
    table
}

/// Clean fixture corpus for confusion self-consistency: target characters
/// appear proportionally to their per-target totals in the table, so the
/// expected learned pair distribution equals the table's relative
/// frequencies.
fn confusion_fixture_corpus(table: &ConfusionTable, docs: usize, lines: usize, cols: usize) -> Vec<Doc> {
    let mut target_weights: Vec<(char, u64)> = Vec::new();
    for (_, target, count) in table.substitutions() {
        match target_weights.iter_mut().find(|(t, _)| *t == target) {
            Some(entry) => entry.1 += count,
            None => target_weights.push((target, count)),
        }
    }
    let total_weight: u64 = target_weights.iter().map(|(_, w)| w).sum();
    let filler = ['f', 'g', 'h', 'i', 'j', ' '];

    let mut rng = SplitMix64::new(0xF1F2_F3F4);
    (0..docs)
        .map(|doc| {
            let mut doc_lines = Vec::with_capacity(lines);
            for _ in 0..lines {
                let mut line = String::with_capacity(cols);
                for _ in 0..cols {
                    if rng.next_float() < 0.5 {
                        let mut pick = rng.next_u64() % total_weight;
                        let mut chosen = target_weights[0].0;
                        for &(t, w) in &target_weights {
                            if pick < w {
                                chosen = t;
                                break;
                            }
                            pick -= w;
                        }
                        line.push(chosen);
                    } else {
                        line.push(filler[rng.next_range(filler.len())]);
                    }
                }
                doc_lines.push(line);
            }
            Doc {
                id: doc.to_string(),
                text: Text::from_lines(&doc_lines),
            }
        })
        .collect()
}

/// Random-letter corpus for rate-fidelity checks.
fn letters_corpus(chars_total: usize) -> Text {
    let alphabet = ['a', 'b', 'c', 'd', 'e', 'f', 'g', 'h', 'i', 'j', ' '];
    let mut rng = SplitMix64::new(0xAB5E);
    let cols = 60;
    let mut lines = Vec::new();
    let mut produced = 0;
    while produced < chars_total {
        let line: String = (0..cols).map(|_| alphabet[rng.next_range(alphabet.len())]).collect();
        produced += cols;
        lines.push(line);
    }
    Text::from_lines(&lines)
}

fn binomial_band(n: u64, p: f64) -> f64 {
    3.0 * (n as f64 * p * (1.0 - p)).sqrt()
}

// --------------------------------------------------------------- criteria

#[test]
fn criterion_01_edit_distance_oracle() {
    let started = Instant::now();
    let strings = all_strings(b"abc", 5);
    assert_eq!(strings.len(), 364);
    for a in &strings {
        for b in &strings {
            assert_eq!(
                levenshtein(a, b),
                levenshtein_oracle(a, b),
                "mismatch on {a:?} vs {b:?}"
            );
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 10, "took {elapsed:?}, budget 10 s");
    println!(
        "acceptance 1 (edit-distance oracle, 364^2 exhaustive pairs): PASS in {elapsed:?}"
    );
}

#[test]
fn criterion_02_alignment_distance_duality() {
    let alphabet = ['a', 'b', 'c', 'd'];
    let mut rng = SplitMix64::new(2);
    let scoring = Scoring::default();
    for _ in 0..1000 {
        let a = random_string(&mut rng, &alphabet, 40);
        let b = random_string(&mut rng, &alphabet, 40);
        let alignment = nw_align(&a, &b, &scoring).unwrap();
        assert_eq!(-alignment.score, levenshtein(&a, &b) as i64);
        assert_eq!(alignment.left(), a);
        assert_eq!(alignment.right(), b);
    }
    // and exhaustively on every short pair over a 3-symbol alphabet
    let strings: Vec<Vec<char>> = all_strings(b"abc", 5)
        .into_iter()
        .map(|s| s.into_iter().map(char::from).collect())
        .collect();
    for a in &strings {
        for b in &strings {
            let alignment = nw_align(a, b, &scoring).unwrap();
            assert_eq!(-alignment.score, levenshtein(a, b) as i64);
            assert_eq!(&alignment.left(), a);
            assert_eq!(&alignment.right(), b);
        }
    }
    println!(
        "acceptance 2 (alignment/distance duality, 1000 random + 364^2 exhaustive pairs): PASS"
    );
}

#[test]
fn criterion_03_accuracy_increase_exactness() {
    assert!((acc_increase_from_distances(10, 5) - 50.0).abs() < 1e-9);
    for k in [1, 2, 7, 100, 12345] {
        assert!((acc_increase_from_distances(k, 0) - 100.0).abs() < 1e-9);
    }
    for d_o in 0..30usize {
        for extra in 1..10usize {
            assert_eq!(acc_increase_from_distances(d_o, d_o + extra), 0.0);
        }
    }
    // the same numbers through whole texts
    let golden = Text::new("aaaaaaaaaa");
    let ocred = Text::new("bbbbbbbbbb");
    let fixed = Text::new("bbbbbaaaaa");
    assert!((acc_increase(&golden, &ocred, &fixed) - 50.0).abs() < 1e-9);
    assert!((acc_increase(&golden, &ocred, &golden) - 100.0).abs() < 1e-9);
    println!("acceptance 3 (accuracy-increase formula exactness): PASS");
}

#[test]
fn criterion_04_word_accuracy_exactness_and_oracle() {
    let delims = DelimiterSet::default();

    let counts = word_accuracy(&Text::new("the cat sat"), &Text::new("the cat sat"), &delims).unwrap();
    assert_eq!((counts.n_w, counts.s_w, counts.d_w, counts.i_w), (3, 0, 0, 0));
    assert!((counts.accuracy() - 100.0).abs() < 1e-9);

    let counts = word_accuracy(&Text::new("teh cat"), &Text::new("the cat"), &delims).unwrap();
    assert_eq!((counts.n_w, counts.s_w), (2, 1));
    assert!((counts.accuracy() - 50.0).abs() < 1e-9);

    let counts = word_accuracy(&Text::new("the cat"), &Text::new("the black cat"), &delims).unwrap();
    assert_eq!((counts.n_w, counts.i_w), (2, 1));
    assert!((counts.accuracy() - 50.0).abs() < 1e-9);

    // S + D + I equals the word-level edit distance, exactly
    let vocab = ["aa", "ab", "ba", "b", "ccc", "ca"];
    let mut rng = SplitMix64::new(4);
    for _ in 0..1000 {
        let len_a = 1 + rng.next_range(12);
        let len_b = rng.next_range(13);
        let a: Vec<&str> = (0..len_a).map(|_| vocab[rng.next_range(vocab.len())]).collect();
        let b: Vec<&str> = (0..len_b).map(|_| vocab[rng.next_range(vocab.len())]).collect();
        let counts = word_accuracy(&Text::new(a.join(" ")), &Text::new(b.join(" ")), &delims).unwrap();
        assert_eq!(counts.s_w + counts.d_w + counts.i_w, levenshtein(&a, &b) as u64);
    }
    println!("acceptance 4 (word-accuracy formula + word-distance oracle): PASS");
}

#[test]
fn criterion_05_confusion_self_consistency() {
    let started = Instant::now();
    let table = synthetic_table();
    let docs = confusion_fixture_corpus(&table, 160, 110, 60);
    let total_chars: usize = docs.iter().map(|d| d.text.char_count()).sum();
    assert!(total_chars >= 1_000_000, "fixture has {total_chars} chars");

    let cfg = InjectionConfig {
        p_delete: 0.0,
        p_insert: 0.0,
        p_swap: 0.0,
        p_confusion: 0.05,
        seed: 12345,
        ..InjectionConfig::default()
    };
    let generated = generate_dataset(&docs, &cfg, Some(&table)).unwrap();
    let report = learn_confusions(
        &generated.pairs,
        &LearnOptions {
            fraction: 1.0,
            ..LearnOptions::default()
        },
    )
    .unwrap();
    let learned = &report.table;

    // support recovered exactly
    let injected_support: BTreeSet<(char, char)> =
        table.substitutions().map(|(s, t, _)| (s, t)).collect();
    let learned_support: BTreeSet<(char, char)> =
        learned.substitutions().map(|(s, t, _)| (s, t)).collect();
    assert_eq!(learned_support, injected_support);
    assert_eq!(learned.deletions().count(), 0);
    assert_eq!(learned.insertions().count(), 0);

    // each relative frequency within 3 binomial standard errors
    let events = learned.total_substitutions();
    assert!(events > 10_000, "only {events} confusion events");
    for (source, target, _) in table.substitutions() {
        let expected = table.relative_frequency(source, target);
        let observed = learned.relative_frequency(source, target);
        let band = 3.0 * (expected * (1.0 - expected) / events as f64).sqrt();
        assert!(
            (observed - expected).abs() <= band,
            "pair ({source},{target}): observed {observed:.5}, expected {expected:.5}, band {band:.5}"
        );
    }

    // count ranks agree
    let injected_counts: Vec<f64> = table.substitutions().map(|(_, _, c)| c as f64).collect();
    let learned_counts: Vec<f64> = table
        .substitutions()
        .map(|(s, t, _)| learned.substitution_count(s, t) as f64)
        .collect();
    let rho = spearman(&injected_counts, &learned_counts);
    assert!(rho >= 0.9, "spearman {rho}");

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}, budget 60 s");
    println!(
        "acceptance 5 (confusion self-consistency, {events} events, spearman {rho:.3}): PASS in {elapsed:?}"
    );
}

#[test]
fn criterion_06_injection_rate_fidelity() {
    let clean = letters_corpus(1_200_000);
    let zero = InjectionConfig {
        p_delete: 0.0,
        p_insert: 0.0,
        p_swap: 0.0,
        p_confusion: 0.0,
        seed: 6,
        ..InjectionConfig::default()
    };

    let deletes = inject_errors(
        &clean,
        &InjectionConfig {
            p_delete: 0.01,
            ..zero.clone()
        },
        None,
    )
    .unwrap();
    assert!(deletes.stats.delete_opportunities >= 1_000_000);
    let expected = deletes.stats.delete_opportunities as f64 * 0.01;
    assert!(
        (deletes.stats.deletes as f64 - expected).abs()
            <= binomial_band(deletes.stats.delete_opportunities, 0.01),
        "deletes {} vs expected {expected}",
        deletes.stats.deletes
    );
    assert_eq!(deletes.log.replay(&clean), deletes.text);

    let inserts = inject_errors(
        &clean,
        &InjectionConfig {
            p_insert: 0.01,
            ..zero.clone()
        },
        None,
    )
    .unwrap();
    assert!(inserts.stats.insert_opportunities >= 1_000_000);
    let expected = inserts.stats.insert_opportunities as f64 * 0.01;
    assert!(
        (inserts.stats.inserts as f64 - expected).abs()
            <= binomial_band(inserts.stats.insert_opportunities, 0.01),
        "inserts {} vs expected {expected}",
        inserts.stats.inserts
    );
    assert_eq!(inserts.log.replay(&clean), inserts.text);

    let swaps = inject_errors(
        &clean,
        &InjectionConfig {
            p_swap: 0.01,
            ..zero.clone()
        },
        None,
    )
    .unwrap();
    assert!(swaps.stats.swap_opportunities >= 1_000_000);
    let expected = swaps.stats.swap_opportunities as f64 * 0.01;
    assert!(
        (swaps.stats.swaps as f64 - expected).abs()
            <= binomial_band(swaps.stats.swap_opportunities, 0.01),
        "swaps {} vs expected {expected}",
        swaps.stats.swaps
    );
    assert_eq!(swaps.log.replay(&clean), swaps.text);

    // replay also holds with every error kind active at once
    let table = synthetic_table();
    let combined = inject_errors(
        &clean,
        &InjectionConfig {
            p_delete: 0.01,
            p_insert: 0.01,
            p_swap: 0.005,
            p_confusion: 0.06,
            seed: 66,
            ..InjectionConfig::default()
        },
        Some(&table),
    )
    .unwrap();
    assert_eq!(combined.log.replay(&clean), combined.text);

    println!(
        "acceptance 6 (rate fidelity over >=1e6 opportunities + byte-exact replay): PASS"
    );
}

#[test]
fn criterion_07_pipeline_determinism() {
    use std::fs;
    use std::process::Command;

    let bin = env!("CARGO_BIN_EXE_ocrforge");
    let root = tempfile::tempdir().unwrap();

    // fixture: clean corpus + confusion table
    let mut rng = SplitMix64::new(77);
    let words = ["שלום", "עולם", "the", "old", "press", "ink", "page", "type"];
    let docs: Vec<Doc> = (0..120)
        .map(|i| {
            let lines: Vec<String> = (0..6)
                .map(|_| {
                    (0..8)
                        .map(|_| words[rng.next_range(words.len())])
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect();
            Doc {
                id: format!("doc{i:03}"),
                text: Text::from_lines(&lines),
            }
        })
        .collect();
    let corpus_path = root.path().join("clean.jsonl");
    ocrforge::text::write_texts(&corpus_path, ocrforge::text::CorpusFormat::Jsonl, &docs).unwrap();
    let table_path = root.path().join("table.tsv");
    ocrforge::confusion::save_table(&synthetic_table(), &table_path).unwrap();

    let run = |args: &[&str]| {
        let output = Command::new(bin).args(args).output().expect("spawn ocrforge");
        assert!(
            output.status.success(),
            "ocrforge {args:?} failed: {}",
            String::from_utf8_lossy(&output.stderr)
        );
    };
    let data_files = |dir: &std::path::Path| -> Vec<(String, Vec<u8>)> {
        let mut files: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
            .unwrap()
            .map(|e| e.unwrap())
            .filter(|e| e.file_name() != "manifest.json")
            .map(|e| (e.file_name().to_string_lossy().into_owned(), fs::read(e.path()).unwrap()))
            .collect();
        files.sort();
        files
    };
    let manifest_sans_timestamps = |dir: &std::path::Path| -> serde_json::Value {
        let mut v: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap();
        let obj = v.as_object_mut().unwrap();
        obj.remove("started_unix_ms");
        obj.remove("finished_unix_ms");
        // output paths differ per directory by construction
        obj.remove("outputs");
        obj.remove("parameters");
        v
    };

    // inject, four equivalent runs: twice plain, then --jobs 1 vs --jobs 8
    let out: Vec<std::path::PathBuf> =
        (0..4).map(|i| root.path().join(format!("inject{i}"))).collect();
    for (i, dir) in out.iter().enumerate() {
        let jobs = match i {
            2 => Some("1"),
            3 => Some("8"),
            _ => None,
        };
        let mut args = vec![
            "inject",
            "--input",
            corpus_path.to_str().unwrap(),
            "--table",
            table_path.to_str().unwrap(),
            "--seed",
            "42",
            "--p-confusion",
            "0.08",
            "--out",
            dir.to_str().unwrap(),
        ];
        if let Some(jobs) = jobs {
            args.extend(["--jobs", jobs]);
        }
        run(&args);
    }
    let reference = data_files(&out[0]);
    assert!(!reference.is_empty());
    for dir in &out[1..] {
        assert_eq!(data_files(dir), reference, "inject outputs differ in {dir:?}");
    }
    assert_eq!(
        manifest_sans_timestamps(&out[0]),
        manifest_sans_timestamps(&out[1])
    );

    // split twice on the injected pairs
    let pairs = out[0].join("pairs.jsonl");
    let split_out: Vec<std::path::PathBuf> =
        (0..2).map(|i| root.path().join(format!("split{i}"))).collect();
    for dir in &split_out {
        run(&[
            "split",
            "--input",
            pairs.to_str().unwrap(),
            "--train-fraction",
            "0.8",
            "--seed",
            "9",
            "--out",
            dir.to_str().unwrap(),
        ]);
    }
    assert_eq!(data_files(&split_out[0]), data_files(&split_out[1]));

    // export twice from the tagged dataset
    let dataset = split_out[0].join("dataset.jsonl");
    let export_out: Vec<std::path::PathBuf> =
        (0..2).map(|i| root.path().join(format!("export{i}"))).collect();
    for dir in &export_out {
        run(&[
            "export",
            "--input",
            dataset.to_str().unwrap(),
            "--format",
            "parallel-txt",
            "--out",
            dir.to_str().unwrap(),
        ]);
    }
    assert_eq!(data_files(&export_out[0]), data_files(&export_out[1]));

    println!("acceptance 7 (inject/split/export byte-identical across runs and --jobs): PASS");
}

#[test]
fn criterion_08_end_to_end_improvement() {
    // clean corpus of sentences over a small vocabulary the LM can learn
    let vocab = [
        "badge", "beach", "cab", "dab", "decade", "each", "edge", "face", "fade", "gab",
        "hedge", "iced", "jade", "abide", "cage", "chief", "dice", "fig", "gaff", "hide",
    ];
    let mut rng = SplitMix64::new(88);
    let docs: Vec<Doc> = (0..30)
        .map(|i| {
            let lines: Vec<String> = (0..20)
                .map(|_| {
                    (0..8)
                        .map(|_| vocab[rng.next_range(vocab.len())])
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect();
            Doc {
                id: i.to_string(),
                text: Text::from_lines(&lines),
            }
        })
        .collect();

    let table = synthetic_table();
    let cfg = InjectionConfig {
        p_delete: 0.0,
        p_insert: 0.0,
        p_swap: 0.0,
        p_confusion: 0.05,
        seed: 808,
        ..InjectionConfig::default()
    };
    let generated = generate_dataset(&docs, &cfg, Some(&table)).unwrap();

    let clean_texts: Vec<Text> = docs.iter().map(|d| d.text.clone()).collect();
    let lm = CharLM::train(&clean_texts, 4).unwrap();
    let channel = ChannelModel::from_table(&table);

    let triples: Vec<(Text, Text, Text)> = generated
        .pairs
        .iter()
        .map(|pair| {
            let fixed = correct_text(&pair.ocred, &lm, &channel, 16);
            (pair.golden.clone(), pair.ocred.clone(), fixed)
        })
        .collect();
    let eval = evaluate_corrector(&triples, &DelimiterSet::default()).unwrap();

    assert!(
        eval.mean_acc_increase > 0.0,
        "mean accuracy increase {}",
        eval.mean_acc_increase
    );
    assert!(
        eval.fixed_word_accuracy() > eval.ocred_word_accuracy(),
        "fixed WAcc {} must exceed corrupted WAcc {}",
        eval.fixed_word_accuracy(),
        eval.ocred_word_accuracy()
    );
    println!(
        "acceptance 8 (end-to-end improvement: acc-increase {:.3}%, WAcc {:.3}% -> {:.3}%): PASS",
        eval.mean_acc_increase,
        eval.ocred_word_accuracy(),
        eval.fixed_word_accuracy()
    );
}

#[test]
fn criterion_09_beam_matches_exhaustive() {
    // two-entry table over a 6-symbol line alphabet
    let mut table = ConfusionTable::new();
    table.add_substitution('x', 'a', 3).unwrap();
    table.add_substitution('y', 'b', 1).unwrap();
    let channel = ChannelModel::from_table(&table);
    let lm_corpus: Vec<Text> = ["abcd", "aabb", "cdab", "abab", "dcba", "bbca"]
        .iter()
        .map(|s| Text::new(*s))
        .collect();
    let lm = CharLM::train(&lm_corpus, 3).unwrap();

    // exhaustive oracle: enumerate every substitution hypothesis, scoring
    // with the same accumulation order as the beam
    let argmax = |line: &str| -> String {
        let observed: Vec<char> = line.chars().collect();
        let mut hypotheses: Vec<(Vec<char>, f64, Vec<Sym>)> =
            vec![(Vec::new(), 0.0, vec![Sym::Begin; lm.order() - 1])];
        for &a in &observed {
            let mut next = Vec::with_capacity(hypotheses.len() * 2);
            for (prefix, score, ctx) in &hypotheses {
                for truth in std::iter::once(a).chain(channel.candidates_for(a).iter().copied()) {
                    let s = *score + channel.log_prob(a, truth) + lm.log_prob(ctx, Sym::Ch(truth));
                    let mut extended = prefix.clone();
                    extended.push(truth);
                    let mut new_ctx = ctx.clone();
                    new_ctx.remove(0);
                    new_ctx.push(Sym::Ch(truth));
                    next.push((extended, s, new_ctx));
                }
            }
            hypotheses = next;
        }
        hypotheses
            .into_iter()
            .map(|(prefix, score, ctx)| {
                let total = score + lm.log_prob(&ctx, Sym::End);
                (total, prefix.into_iter().collect::<String>())
            })
            .max_by(|(sa, oa), (sb, ob)| sa.partial_cmp(sb).unwrap().then_with(|| ob.cmp(oa)))
            .map(|(_, out)| out)
            .unwrap_or_default()
    };

    let alphabet = ['a', 'b', 'c', 'd', 'x', 'y'];
    let mut checked: u64 = 0;
    let mut line = String::with_capacity(8);
    for len in 0..=8usize {
        let mut digits = vec![0usize; len];
        loop {
            line.clear();
            line.extend(digits.iter().map(|&d| alphabet[d]));
            // width 256 >= 2^8, the largest hypothesis count at length 8
            let beamed = correct_line(&line, &lm, &channel, 256);
            let exhaustive = argmax(&line);
            assert_eq!(beamed, exhaustive, "line {line:?}");
            checked += 1;
            // odometer over digit positions
            let mut pos = 0;
            loop {
                if pos == len {
                    break;
                }
                digits[pos] += 1;
                if digits[pos] < alphabet.len() {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
            if pos == len {
                break;
            }
        }
    }
    assert_eq!(checked, (0..=8u32).map(|l| 6u64.pow(l)).sum::<u64>());
    println!("acceptance 9 (beam equals exhaustive argmax on {checked} lines): PASS");
}

#[test]
fn criterion_10_dataset_split_protocol() {
    use ocrforge::text::ParallelPair;
    let pairs: Vec<ParallelPair> = (0..10)
        .map(|i| ParallelPair {
            ocred: Text::new(format!("ocr {i} first\nocr {i} second\nocr {i} third")),
            golden: Text::new(format!("gold {i} first\ngold {i} second\ngold {i} third")),
            doc_id: format!("doc{i}"),
        })
        .collect();

    for seed in [0u64, 1, 42, 0xDEAD] {
        let mut ds = build_line_pairs(&pairs);
        let summary = split_dataset(&mut ds, 0.8, seed).unwrap();
        assert_eq!(summary.train_docs, 8);
        assert_eq!(summary.validation_docs, 2);

        let train_docs: BTreeSet<&str> = ds
            .records
            .iter()
            .filter(|r| r.split == Split::Train)
            .map(|r| r.doc_id.as_str())
            .collect();
        let validation_docs: BTreeSet<&str> = ds
            .records
            .iter()
            .filter(|r| r.split == Split::Validation)
            .map(|r| r.doc_id.as_str())
            .collect();
        assert_eq!(train_docs.len(), 8);
        assert_eq!(validation_docs.len(), 2);
        assert!(train_docs.is_disjoint(&validation_docs));
        assert_eq!(
            train_docs.union(&validation_docs).count(),
            10,
            "splits must be exhaustive"
        );
        assert!(ds.records.iter().all(|r| r.split != Split::Unassigned));

        // stable under re-runs
        let mut again = build_line_pairs(&pairs);
        split_dataset(&mut again, 0.8, seed).unwrap();
        assert_eq!(again.records, ds.records);
    }
    println!("acceptance 10 (80/20 document split protocol): PASS");
}
