//! Segmentation from external classifier probabilities. A toy scorer stands
//! in for the fine-tuned model: it trusts gold spans and doubts the rest.
//!
//!     cargo run --example score_segmentation

use rhesis::bridge::{load_scores, segment_by_scores, write_scores, ScoreTable, DEFAULT_EPSILON};
use rhesis::corpus::{align_gold, parse_conllu, parse_gold};
use rhesis::eval::rhesis_precision;
use rhesis::span::SpanConfig;

fn main() -> rhesis::Result<()> {
    let sentences = parse_conllu(include_str!("../data/jardin.conllu"))?;
    let gold = parse_gold(include_str!("../data/jardin.rhz"))?;
    let corpus = align_gold(&sentences, &gold)?;
    let span = SpanConfig::default();

    // gold spans get 0.8, one-token shifts of them 0.4
    let mut table = ScoreTable::default();
    for e in &corpus.entries {
        let n = e.sentence.len();
        for r in &e.gold.rhesis {
            table.insert(&e.sentence.id, r.start, r.end, 0.8);
            if r.end < n {
                table.insert(&e.sentence.id, r.start, r.end + 1, 0.4);
            }
        }
    }
    let mut file = Vec::new();
    write_scores(&mut file, &table)?;
    let table = load_scores(file.as_slice())?;
    println!("{} scored candidates", table.len());

    let auto = corpus
        .sentences()
        .map(|s| segment_by_scores(s, &table, &span, DEFAULT_EPSILON))
        .collect::<rhesis::Result<Vec<_>>>()?;
    for seg in auto.iter().take(3) {
        for r in &seg.rhesis {
            println!("  | {}", r.text);
        }
        println!();
    }
    let prf = rhesis_precision(&auto, &corpus.gold())?;
    println!("precision {:.3}  recall {:.3}", prf.precision, prf.recall);
    Ok(())
}
