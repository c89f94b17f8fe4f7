//! Learn a character-confusion table from a parallel corpus.
//!
//! The corpus here is a handful of (OCRed, golden) snippets in the style
//! of scanned Hebrew newsprint, where letters with similar shapes get
//! misread — including word-final forms, which are distinct characters
//! and must stay distinct.
//!
//! Run with: `cargo run --example learn_confusions`

use ocrforge::confusion::{learn_confusions, table_to_tsv, top_k, LearnOptions};
use ocrforge::text::{ParallelPair, Text};

fn main() {
    let samples = [
        // (what the OCR produced, what the page actually says)
        ("העיתוו יצא לאור בבוקר", "העיתון יצא לאור בבוקר"),
        ("הס הלכו אל הים", "הם הלכו אל הים"),
        ("שלוס רב לכולם", "שלום רב לכולם"),
        ("אין דכר רע בלי טוב", "אין דבר רע בלי טוב"),
        ("הדפום הישו עמד ברחוב", "הדפוס הישן עמד ברחוב"),
        ("הס קראו את העיתוו", "הם קראו את העיתון"),
    ];
    let pairs: Vec<ParallelPair> = samples
        .iter()
        .enumerate()
        .map(|(i, (ocr, gold))| ParallelPair {
            ocred: Text::new(*ocr),
            golden: Text::new(*gold),
            doc_id: i.to_string(),
        })
        .collect();

    let report = learn_confusions(
        &pairs,
        &LearnOptions {
            fraction: 1.0,
            ..LearnOptions::default()
        },
    )
    .expect("non-empty corpus");

    println!(
        "learned from {} pairs ({} skipped), {} substitution events\n",
        report.pairs_used,
        report.pairs_skipped,
        report.table.total_substitutions()
    );

    println!("most common confusions (OCR output -> correct character):");
    for (source, target, count) in top_k(&report.table, 5) {
        println!(
            "  {source} -> {target}   count {count}   relative frequency {:.3}",
            report.table.relative_frequency(source, target)
        );
    }

    println!("\nserialized table:\n{}", table_to_tsv(&report.table));
}
