//! Per-document report: the five published rows aggregated by gold rhesis
//! count, then a live report of the cascade on the two fixture documents.
//!
//!     cargo run --example evaluate

use rhesis::cascade::{cascade_and_regroup, CascadeConfig};
use rhesis::corpus::{align_gold, parse_conllu, parse_gold};
use rhesis::eval::{corpus_report, evaluate_corpus, length_stats, DocRow};

fn main() -> rhesis::Result<()> {
    let published = [
        ("Le magicien Tre-Pi", 1633, [58.0, 65.7, 68.7]),
        ("Hercule Navet", 761, [76.7, 71.3, 72.7]),
        ("Emportée par le vent", 1805, [65.7, 71.2, 72.2]),
        ("L'Avare", 7989, [70.6, 77.5, 80.5]),
        ("Le Cid", 6670, [77.6, 75.6, 85.5]),
    ];
    for (col, system) in ["cascade", "tree", "classifier"].iter().enumerate() {
        let rows = published
            .iter()
            .map(|(label, n, p)| DocRow::precision_only(*label, *n, p[col] / 100.0))
            .collect();
        let report = corpus_report(rows)?;
        println!("{system:<10} weighted average {:.1}%", 100.0 * report.weighted_precision);
    }

    let sentences = parse_conllu(include_str!("../data/fr_corpus.conllu"))?;
    let gold = parse_gold(include_str!("../data/fr_corpus.rhz"))?;
    let corpus = align_gold(&sentences, &gold)?;
    let cfg = CascadeConfig::default();
    let auto: Vec<_> = corpus
        .sentences()
        .map(|s| cascade_and_regroup(s, &cfg).segmentation)
        .collect();
    println!("\ncascade on the fixture corpus:\n");
    print!("{}", evaluate_corpus(&corpus, &auto)?.to_table());
    println!("\ngold lengths:\n");
    print!("{}", length_stats(&corpus.gold())?.to_table());
    Ok(())
}
