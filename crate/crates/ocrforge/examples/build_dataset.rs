//! Assemble (input, target) line pairs, split them 80/20 at document
//! granularity, and export trainer-ready files.
//!
//! Run with: `cargo run --example build_dataset`

use ocrforge::dataset::{build_line_pairs, export, split_dataset, ExportFormat, Split};
use ocrforge::errorgen::{generate_dataset, InjectionConfig};
use ocrforge::text::{Doc, Text};

fn main() {
    // ten clean documents, corrupted into a parallel corpus
    let docs: Vec<Doc> = (0..10)
        .map(|i| Doc {
            id: format!("article-{i:02}"),
            text: Text::new(format!(
                "headline of article {i}\nbody line about the press\nbody line about the type"
            )),
        })
        .collect();
    let cfg = InjectionConfig {
        seed: 21,
        ..InjectionConfig::default()
    };
    let generated = generate_dataset(&docs, &cfg, None).unwrap();

    let mut dataset = build_line_pairs(&generated.pairs);
    println!(
        "{} line records from {} documents ({} rejected)",
        dataset.records.len(),
        docs.len(),
        dataset.rejections.len()
    );

    let summary = split_dataset(&mut dataset, 0.8, 42).unwrap();
    println!(
        "split: {} train documents, {} validation documents",
        summary.train_docs, summary.validation_docs
    );
    for record in dataset.records.iter().take(3) {
        println!(
            "  [{:?}] {}#{}: {:?} -> {:?}",
            record.split, record.doc_id, record.line_index, record.input, record.target
        );
    }

    let out_dir = std::env::temp_dir().join("ocrforge-example-dataset");
    for format in [ExportFormat::Jsonl, ExportFormat::ParallelTxt, ExportFormat::Tsv] {
        let files = export(&dataset, format, &out_dir).unwrap();
        for file in files {
            println!("wrote {}", file.display());
        }
    }

    let train_lines = dataset
        .records
        .iter()
        .filter(|r| r.split == Split::Train)
        .count();
    println!(
        "{} train lines / {} validation lines",
        train_lines,
        dataset.records.len() - train_lines
    );
}
