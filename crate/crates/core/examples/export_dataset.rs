//! Labelled candidates for classifier fine-tuning: a sample of the TSV and
//! the manifest with the recommended settings and the held-out split.
//!
//!     cargo run --example export_dataset [-- <negatives> <seed>]

use rhesis::bridge::{export_candidates, write_candidates, ExportManifest};
use rhesis::corpus::{align_gold, parse_conllu, parse_gold};
use rhesis::span::SpanConfig;

fn main() -> rhesis::Result<()> {
    let mut args = std::env::args().skip(1);
    let k = args.next().and_then(|a| a.parse().ok()).unwrap_or(2);
    let seed = args.next().and_then(|a| a.parse().ok()).unwrap_or(42);

    let sentences = parse_conllu(include_str!("../data/jardin.conllu"))?;
    let gold = parse_gold(include_str!("../data/jardin.rhz"))?;
    let corpus = align_gold(&sentences, &gold)?;
    let span = SpanConfig::default();

    let examples = export_candidates(&corpus, k, seed, &span)?;
    let mut tsv = Vec::new();
    write_candidates(&mut tsv, &examples)?;
    for line in String::from_utf8_lossy(&tsv).lines().take(12) {
        println!("{line}");
    }
    println!("... {} rows\n", examples.len());
    println!("{}", ExportManifest::new(&corpus, &examples, k, seed, &span).to_json()?);
    Ok(())
}
