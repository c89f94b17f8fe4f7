//! Character and word alignment, and the edit distance they induce.
//!
//! Run with: `cargo run --example align_and_distance`

use ocrforge::align::{levenshtein, levenshtein_str, nw_align, word_align, AlignOp, Scoring};

fn describe<T: std::fmt::Display>(columns: &[AlignOp<T>]) -> String {
    columns
        .iter()
        .map(|col| match col {
            AlignOp::Match(a) => format!("={a}"),
            AlignOp::Substitute(a, b) => format!("{a}>{b}"),
            AlignOp::Delete(a) => format!("-{a}"),
            AlignOp::Insert(b) => format!("+{b}"),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn main() {
    let scoring = Scoring::default();

    for (ocred, golden) in [
        ("kitten", "sitting"),
        ("the0ld pres", "the old press"),
        ("שלוס עולם", "שלום עולם"),
    ] {
        let a: Vec<char> = ocred.chars().collect();
        let b: Vec<char> = golden.chars().collect();
        let alignment = nw_align(&a, &b, &scoring).expect("within size limit");
        println!("{ocred:>13}  vs  {golden:<13}");
        println!("  distance  {}", levenshtein_str(ocred, golden));
        println!("  score     {}", alignment.score);
        println!("  columns   {}", describe(&alignment.columns));
        println!();
    }

    // the same machinery over words
    let evaluated: Vec<&str> = "teh cat sat on mat".split(' ').collect();
    let golden: Vec<&str> = "the cat sat on the mat".split(' ').collect();
    let alignment = word_align(&evaluated, &golden, &scoring).unwrap();
    println!("word alignment: {}", describe(&alignment.columns));

    // with the default scoring the negated score is the edit distance
    assert_eq!(-alignment.score, levenshtein(&evaluated, &golden) as i64);
    println!("word distance:  {}", -alignment.score);
}
