//! Evolves tree weights on the 50-sentence French fixture and compares the
//! result with the untuned defaults and with the cascade.
//!
//!     cargo run --release --example tune_weights [-- <seed> <generations>]

use rhesis::cascade::{cascade_and_regroup, CascadeConfig};
use rhesis::corpus::{align_gold, parse_conllu, parse_gold};
use rhesis::eval::rhesis_precision;
use rhesis::evo::{evolve, EvoConfig, FitnessMetric, PreparedCorpus};
use rhesis::span::SpanConfig;
use rhesis::tree::ScoringWeights;

fn main() -> rhesis::Result<()> {
    let mut args = std::env::args().skip(1);
    let seed = args.next().and_then(|a| a.parse().ok()).unwrap_or(42);
    let generations = args.next().and_then(|a| a.parse().ok()).unwrap_or(60);

    let sentences = parse_conllu(include_str!("../data/fr_corpus.conllu"))?;
    let gold = parse_gold(include_str!("../data/fr_corpus.rhz"))?;
    let corpus = align_gold(&sentences, &gold)?;
    let span = SpanConfig::default();
    let cfg = EvoConfig {
        seed,
        generations,
        ..EvoConfig::default()
    };

    let run = evolve(&corpus, &cfg, &span)?;
    for (g, f) in run.trace.iter().enumerate().step_by(10) {
        println!("generation {g:>3}  best {f:.4}");
    }

    let prepared = PreparedCorpus::new(&corpus, &span)?;
    let cascade_cfg = CascadeConfig::with_span(span);
    let cascade: Vec<_> = corpus
        .sentences()
        .map(|s| cascade_and_regroup(s, &cascade_cfg).segmentation)
        .collect();
    println!();
    println!("cascade + regroup  {:.4}", rhesis_precision(&cascade, &corpus.gold())?.precision);
    println!(
        "default weights    {:.4}",
        prepared.fitness(&ScoringWeights::default(), FitnessMetric::Precision)
    );
    println!("tuned weights      {:.4}", run.best_fitness);
    println!("\n{}", run.weights().to_toml()?);
    Ok(())
}
