//! Scored-tree segmentation: the cut candidates of one sentence, the
//! optimum found by dynamic programming, and the exhaustive check.
//!
//!     cargo run --example segment_tree

use rhesis::corpus::parse_conllu;
use rhesis::span::SpanConfig;
use rhesis::tree::{cut_score, enumerate_all, segment_best, segmentation_score, ScoringWeights, TreeFeatures};

fn main() -> rhesis::Result<()> {
    let sentences = parse_conllu(include_str!("../data/classmates.conllu"))?;
    let s = &sentences[2];
    let span = SpanConfig::default();
    let mut w = ScoringWeights::default();
    for (label, v) in [("conj", 0.9), ("advcl", 0.8), ("punct", 0.5), ("obl", 0.4), ("det", -1.0), ("case", -0.8)] {
        w.deprel_weights.insert(label.to_string(), v);
    }

    println!("{}\n", s.text);
    let features = TreeFeatures::new(s, &span);
    for p in 1..s.len() {
        let c = features.candidate(p);
        let e = c.primary_edge();
        println!(
            "  after {:<10} severs {} edge(s), primary {}->{} {:<8} depth {}  score {:+.2}",
            s.token(p).form,
            c.crossing.len(),
            e.head,
            e.dep,
            e.deprel,
            c.depth,
            cut_score(c, &w)
        );
    }

    let best = segment_best(s, &w, &span);
    let score = segmentation_score(s, &best, &w, &span);
    println!("\nbest ({score:.3}):");
    for r in &best.rhesis {
        println!("  | {}", r.text);
    }

    let all = enumerate_all(s, &span)?;
    let top = all
        .iter()
        .map(|seg| segmentation_score(s, seg, &w, &span))
        .fold(f64::NEG_INFINITY, f64::max);
    println!("\n{} feasible segmentations, exhaustive maximum {top:.3}", all.len());
    Ok(())
}
