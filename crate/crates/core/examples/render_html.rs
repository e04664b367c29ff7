//! HTML fragment for an e-reader: one no-wrap span per rhesis so that line
//! breaking never splits a unit. Writes to stdout or to the given path.
//!
//!     cargo run --example render_html [-- out.html]

use rhesis::cascade::{cascade_and_regroup, CascadeConfig};
use rhesis::corpus::parse_conllu;
use rhesis::render::{render_html, RenderOptions};

fn main() -> rhesis::Result<()> {
    let sentences = parse_conllu(include_str!("../data/jardin.conllu"))?;
    let cfg = CascadeConfig::default();
    let segs: Vec<_> = sentences
        .iter()
        .take(6)
        .map(|s| cascade_and_regroup(s, &cfg).segmentation)
        .collect();
    let html = render_html(&segs, Some(&sentences[..6]), &RenderOptions::default());
    match std::env::args().nth(1) {
        Some(path) => std::fs::write(path, html)?,
        None => print!("{html}"),
    }
    Ok(())
}
