//! The full loop on synthetic data: corrupt a clean corpus with learned
//! confusions, learn the confusions back, build the noisy-channel
//! corrector from them, and measure how much it repairs.
//!
//! Run with: `cargo run --example noisy_channel_end_to_end`

use ocrforge::confusion::{learn_confusions, ConfusionTable, LearnOptions};
use ocrforge::corrector::{correct_text, ChannelModel, CharLM};
use ocrforge::errorgen::{generate_dataset, InjectionConfig};
use ocrforge::metrics::{evaluate_corrector, render_report, EvalRow};
use ocrforge::rng::SplitMix64;
use ocrforge::text::{DelimiterSet, Doc, Text};

fn main() {
    // a clean corpus of sentences over a small vocabulary
    let vocab = [
        "press", "paper", "print", "page", "type", "ink", "plate", "proof", "folio", "spine",
        "serif", "stone", "sheet", "title", "panel",
    ];
    let mut rng = SplitMix64::new(99);
    let docs: Vec<Doc> = (0..25)
        .map(|i| {
            let lines: Vec<String> = (0..12)
                .map(|_| {
                    (0..7)
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

    // the "true" OCR behaviour of our imaginary scanner: letters with
    // lookalike glyphs, two of them ambiguous
    let mut truth = ConfusionTable::new();
    truth.add_substitution('5', 's', 40).unwrap();
    truth.add_substitution('1', 'l', 30).unwrap();
    truth.add_substitution('1', 'i', 15).unwrap();
    truth.add_substitution('0', 'o', 35).unwrap();
    truth.add_substitution('3', 'e', 25).unwrap();

    // corrupt every document with those confusions
    let cfg = InjectionConfig {
        p_delete: 0.0,
        p_insert: 0.0,
        p_swap: 0.0,
        p_confusion: 0.08,
        seed: 4,
        ..InjectionConfig::default()
    };
    let generated = generate_dataset(&docs, &cfg, Some(&truth)).unwrap();
    println!(
        "corrupted {} documents with {} confusion events",
        generated.pairs.len(),
        generated.stats.confusions
    );
    println!("sample: {:?}", generated.pairs[0].ocred.lines()[0]);

    // learn the confusion statistics back from the parallel corpus
    let learned = learn_confusions(
        &generated.pairs,
        &LearnOptions {
            fraction: 0.7,
            ..LearnOptions::default()
        },
    )
    .unwrap();
    println!(
        "learned {} confusion pairs from 70% of the corpus",
        learned.table.distinct_substitutions()
    );

    // noisy channel: n-gram prior over clean text, learned channel
    let clean_texts: Vec<Text> = docs.iter().map(|d| d.text.clone()).collect();
    let lm = CharLM::train(&clean_texts, 4).unwrap();
    let channel = ChannelModel::from_table(&learned.table);

    let triples: Vec<(Text, Text, Text)> = generated
        .pairs
        .iter()
        .map(|pair| {
            let fixed = correct_text(&pair.ocred, &lm, &channel, 16);
            (pair.golden.clone(), pair.ocred.clone(), fixed)
        })
        .collect();
    println!("sample fix: {:?}", triples[0].2.lines()[0]);

    let evaluation = evaluate_corrector(&triples, &DelimiterSet::default()).unwrap();
    let rows = vec![
        EvalRow {
            name: "ocred (baseline)".into(),
            acc_increase: 0.0,
            word_accuracy: evaluation.ocred_word_accuracy(),
        },
        EvalRow {
            name: "noisy channel".into(),
            acc_increase: evaluation.mean_acc_increase,
            word_accuracy: evaluation.fixed_word_accuracy(),
        },
    ];
    println!("\n{}", render_report(&rows));
}
