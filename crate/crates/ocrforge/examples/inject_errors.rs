//! Corrupt clean text with random errors plus learned confusions.
//!
//! Shows both modes of the generator: random-only (no table) and
//! corpus-specific (confusions sampled by their learned frequencies),
//! plus the error log and its exact replay.
//!
//! Run with: `cargo run --example inject_errors`

use ocrforge::confusion::ConfusionTable;
use ocrforge::errorgen::{generate_dataset, inject_errors, InjectionConfig};
use ocrforge::text::{Doc, Text};

fn main() {
    let clean = Text::new("the old press printed the morning paper\nthe type was worn and the ink ran thin");

    // random-only corruption: deletions, insertions, adjacent swaps
    let random_cfg = InjectionConfig {
        p_delete: 0.03,
        p_insert: 0.03,
        p_swap: 0.02,
        p_confusion: 0.0,
        seed: 7,
        ..InjectionConfig::default()
    };
    let random = inject_errors(&clean, &random_cfg, None).unwrap();
    println!("clean:     {}", clean.lines().join(" / "));
    println!("random:    {}", random.text.lines().join(" / "));

    // corpus-specific corruption: a table of learned misreadings applied
    // proportionally to their frequencies, on top of the random kinds
    let mut table = ConfusionTable::new();
    table.add_substitution('c', 'e', 40).unwrap(); // e often read as c
    table.add_substitution('o', 'e', 10).unwrap();
    table.add_substitution('1', 'l', 25).unwrap();
    table.add_substitution('0', 'o', 30).unwrap();
    let specific_cfg = InjectionConfig {
        p_confusion: 0.25,
        seed: 7,
        ..random_cfg.clone()
    };
    let specific = inject_errors(&clean, &specific_cfg, Some(&table)).unwrap();
    println!("specific:  {}", specific.text.lines().join(" / "));

    println!("\nerror log ({} entries):", specific.log.len());
    for entry in specific.log.entries.iter().take(12) {
        println!(
            "  line {} col {:>2}  {:<8} {:?} -> {:?}",
            entry.line,
            entry.col,
            format!("{:?}", entry.kind),
            entry.original.map(String::from).unwrap_or_default(),
            entry.replacement.map(String::from).unwrap_or_default(),
        );
    }
    assert_eq!(specific.log.replay(&clean), specific.text);
    println!("replaying the log reproduces the corrupted text exactly");

    // whole-corpus generation: one (corrupted, clean) pair per document
    let docs: Vec<Doc> = (0..3)
        .map(|i| Doc {
            id: format!("doc{i}"),
            text: clean.clone(),
        })
        .collect();
    let generated = generate_dataset(&docs, &specific_cfg, Some(&table)).unwrap();
    println!(
        "\ncorpus generation: {} pairs, {} events over {} characters",
        generated.pairs.len(),
        generated.stats.total_events(),
        generated.stats.chars
    );
    println!(
        "  deletes {} / inserts {} / swaps {} / confusions {}",
        generated.stats.deletes,
        generated.stats.inserts,
        generated.stats.swaps,
        generated.stats.confusions
    );
}
