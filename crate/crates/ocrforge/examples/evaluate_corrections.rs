//! Score corrected output against the golden standard with both measures:
//! character-level accuracy increase and word-level accuracy.
//!
//! Run with: `cargo run --example evaluate_corrections`

use ocrforge::metrics::{
    acc_increase, evaluate_corrector, render_report, word_accuracy, EvalRow,
};
use ocrforge::text::{DelimiterSet, Text};

fn main() {
    let delims = DelimiterSet::default();

    let golden = Text::new("the press printed the morning paper");
    let ocred = Text::new("the pres5 printed hte m0rning papen");
    let partial_fix = Text::new("the press printed hte morning paper");

    println!("golden: {golden}");
    println!("ocred:  {ocred}");
    println!("fixed:  {partial_fix}\n");

    println!(
        "accuracy increase of the partial fix: {:.3}%",
        acc_increase(&golden, &ocred, &partial_fix)
    );
    println!(
        "accuracy increase of a perfect fix:   {:.3}%",
        acc_increase(&golden, &ocred, &golden)
    );
    // a "fix" that adds errors scores zero, never negative
    println!(
        "accuracy increase of a harmful fix:   {:.3}%\n",
        acc_increase(&golden, &ocred, &Text::new("xxx yyy zzz qqq www vvv"))
    );

    for (label, evaluated) in [("ocred", &ocred), ("fixed", &partial_fix)] {
        let counts = word_accuracy(evaluated, &golden, &delims).unwrap();
        println!(
            "{label}: N_w {} S_w {} D_w {} I_w {}  ->  word accuracy {:.3}%",
            counts.n_w,
            counts.s_w,
            counts.d_w,
            counts.i_w,
            counts.accuracy()
        );
    }

    // corpus-level comparison over (golden, ocred, fixed) triples
    let triples = vec![
        (golden.clone(), ocred.clone(), partial_fix.clone()),
        (golden.clone(), ocred.clone(), golden.clone()),
    ];
    let evaluation = evaluate_corrector(&triples, &delims).unwrap();
    let rows = vec![
        EvalRow {
            name: "ocred".into(),
            acc_increase: 0.0,
            word_accuracy: evaluation.ocred_word_accuracy(),
        },
        EvalRow {
            name: "demo corrector".into(),
            acc_increase: evaluation.mean_acc_increase,
            word_accuracy: evaluation.fixed_word_accuracy(),
        },
    ];
    println!("\n{}", render_report(&rows));
}
