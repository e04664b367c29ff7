//! Rule cascade on four short English sentences, before and after
//! regrouping, with the level that fired at each step.
//!
//!     cargo run --example segment_cascade [-- <max_chars>]

use rhesis::cascade::{cascade_and_regroup, cascade_segment, CascadeConfig};
use rhesis::corpus::read_conllu;
use rhesis::span::SpanConfig;

fn main() -> rhesis::Result<()> {
    let max: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(45);
    let cfg = CascadeConfig::with_span(SpanConfig::with_max(max));
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/classmates.conllu");
    let sentences = read_conllu(std::io::BufReader::new(std::fs::File::open(path)?))?;

    for s in &sentences {
        println!("{}  ({} chars, span {max})", s.text, s.text.chars().count());
        let raw = cascade_segment(s, &cfg);
        let grouped = cascade_and_regroup(s, &cfg);
        println!("  cut:");
        for r in &raw.segmentation.rhesis {
            println!("    | {}", r.text);
        }
        println!("  regrouped:");
        for r in &grouped.segmentation.rhesis {
            println!("    | {}", r.text);
        }
        for w in &grouped.warnings {
            println!("  warning: {w}");
        }
        println!();
    }
    Ok(())
}
