//! Bridge to an external span classifier.
//!
//! [`export_candidates`] writes labelled (sentence, sub-section) pairs for
//! fine-tuning a classifier elsewhere; [`load_scores`] reads the
//! classifier's probabilities back and [`segment_by_scores`] turns them into
//! the most probable span-feasible segmentation.

use std::collections::{BTreeSet, HashMap};
use std::io::{BufRead, Write};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::{AlignedCorpus, Segmentation, Sentence};
use crate::error::{Error, Result};
use crate::partition::best_partition;
use crate::span::SpanConfig;

pub const DEFAULT_EPSILON: f64 = 0.01;

pub const CANDIDATE_HEADER: &str = "sentence_id\tsentence_text\tstart\tend\tcandidate_text\tlabel";
pub const SCORE_HEADER: &str = "sentence_id\tstart\tend\tprobability";

/// A labelled sub-section of a sentence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateExample {
    pub sentence_id: String,
    pub sentence_text: String,
    pub start: usize,
    pub end: usize,
    pub candidate_text: String,
    /// 1 when `start..=end` is a gold rhesis.
    pub label: u8,
}

fn feasible(sentence: &Sentence, span: &SpanConfig, start: usize, end: usize) -> bool {
    start == end || span.fits(sentence.slice(start, end))
}

fn example(sentence: &Sentence, start: usize, end: usize, label: u8) -> CandidateExample {
    CandidateExample {
        sentence_id: sentence.id.clone(),
        sentence_text: sentence.text.clone(),
        start,
        end,
        candidate_text: sentence.slice(start, end).to_string(),
        label,
    }
}

/// One positive per gold rhesis plus up to `negatives_per_positive`
/// near-miss negatives for each.
///
/// Near misses share exactly one boundary with their gold rhesis; when a
/// rhesis has too few of them, random feasible sub-sections of the same
/// sentence make up the difference. The result is shuffled with `seed`.
pub fn export_candidates(
    corpus: &AlignedCorpus,
    negatives_per_positive: usize,
    seed: u64,
    span: &SpanConfig,
) -> Result<Vec<CandidateExample>> {
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();

    for entry in &corpus.entries {
        let sentence = &entry.sentence;
        let n = sentence.len();
        let gold: BTreeSet<(usize, usize)> =
            entry.gold.rhesis.iter().map(|r| (r.start, r.end)).collect();
        let mut used = gold.clone();

        for r in &entry.gold.rhesis {
            out.push(example(sentence, r.start, r.end, 1));
            if negatives_per_positive == 0 {
                continue;
            }
            let mut near: Vec<(usize, usize)> = (1..=n)
                .flat_map(|s| (s..=n).map(move |e| (s, e)))
                .filter(|&(s, e)| (s == r.start) != (e == r.end))
                .filter(|span_key| !used.contains(span_key))
                .filter(|&(s, e)| feasible(sentence, span, s, e))
                .collect();
            near.shuffle(&mut rng);
            near.truncate(negatives_per_positive);

            if near.len() < negatives_per_positive {
                let taken: BTreeSet<_> = near.iter().copied().collect();
                let mut any: Vec<(usize, usize)> = (1..=n)
                    .flat_map(|s| (s..=n).map(move |e| (s, e)))
                    .filter(|k| !used.contains(k) && !taken.contains(k))
                    .filter(|&(s, e)| feasible(sentence, span, s, e))
                    .collect();
                any.shuffle(&mut rng);
                any.truncate(negatives_per_positive - near.len());
                near.extend(any);
            }
            for (s, e) in near {
                used.insert((s, e));
                out.push(example(sentence, s, e, 0));
            }
        }
    }
    out.shuffle(&mut rng);
    Ok(out)
}

fn clean(field: &str) -> String {
    field.replace(['\t', '\n', '\r'], " ")
}

/// Writes candidates as TSV with a header line.
pub fn write_candidates<W: Write>(mut out: W, examples: &[CandidateExample]) -> Result<()> {
    writeln!(out, "{CANDIDATE_HEADER}")?;
    for ex in examples {
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            clean(&ex.sentence_id),
            clean(&ex.sentence_text),
            ex.start,
            ex.end,
            clean(&ex.candidate_text),
            ex.label
        )?;
    }
    Ok(())
}

/// Recommended settings for fine-tuning a classifier on the export.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FineTuning {
    pub max_seq_length: usize,
    pub batch_size: usize,
    pub learning_rate: f64,
    pub epochs: usize,
}

impl Default for FineTuning {
    fn default() -> Self {
        FineTuning {
            max_seq_length: 48,
            batch_size: 16,
            learning_rate: 2e-5,
            epochs: 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitPlan {
    pub held_out_fraction: f64,
    pub note: String,
    pub held_out_sentence_ids: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExportManifest {
    pub seed: u64,
    pub negatives_per_positive: usize,
    pub sentences: usize,
    pub positives: usize,
    pub negatives: usize,
    pub span: SpanConfig,
    pub fine_tuning: FineTuning,
    pub split: SplitPlan,
}

impl ExportManifest {
    pub fn new(
        corpus: &AlignedCorpus,
        examples: &[CandidateExample],
        negatives_per_positive: usize,
        seed: u64,
        span: &SpanConfig,
    ) -> Self {
        let positives = examples.iter().filter(|e| e.label == 1).count();
        // a separate stream keeps the split independent of K
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x5eed));
        let mut ids: Vec<String> = corpus.sentences().map(|s| s.id.clone()).collect();
        ids.shuffle(&mut rng);
        let held_out = (ids.len() as f64 / 3.0).round() as usize;
        let mut held_out_sentence_ids: Vec<String> = ids.into_iter().take(held_out).collect();
        held_out_sentence_ids.sort();
        ExportManifest {
            seed,
            negatives_per_positive,
            sentences: corpus.len(),
            positives,
            negatives: examples.len() - positives,
            span: *span,
            fine_tuning: FineTuning::default(),
            split: SplitPlan {
                held_out_fraction: 1.0 / 3.0,
                note: "about one third of the sentences are held out of training for evaluation"
                    .to_string(),
                held_out_sentence_ids,
            },
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Classifier probabilities keyed by `(sentence_id, start, end)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ScoreTable {
    pub entries: HashMap<(String, usize, usize), f64>,
    /// Duplicate keys met while loading; the last value was kept.
    pub warnings: Vec<String>,
}

impl ScoreTable {
    pub fn get(&self, sentence_id: &str, start: usize, end: usize) -> Option<f64> {
        self.entries.get(&(sentence_id.to_string(), start, end)).copied()
    }

    pub fn insert(&mut self, sentence_id: &str, start: usize, end: usize, p: f64) {
        self.entries.insert((sentence_id.to_string(), start, end), p);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Reads `sentence_id, start, end, probability` TSV lines. A header line
/// is optional; blank lines are skipped.
pub fn load_scores<R: BufRead>(reader: R) -> Result<ScoreTable> {
    let mut table = ScoreTable::default();
    for (lineno, line) in reader.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line?;
        let line = line.strip_suffix('\r').unwrap_or(&line);
        if line.trim().is_empty() || line.starts_with("sentence_id\t") {
            continue;
        }
        let fail = |message: String| Error::Scores {
            line: lineno,
            message,
        };
        let fields: Vec<&str> = line.split('\t').collect();
        let [id, start, end, p] = fields[..] else {
            return Err(fail(format!("expected 4 fields, found {}", fields.len())));
        };
        let index = |f: &str| {
            f.trim()
                .parse::<usize>()
                .map_err(|_| fail(format!("invalid token index '{f}'")))
        };
        let (start, end) = (index(start)?, index(end)?);
        if start == 0 || start > end {
            return Err(fail(format!("invalid span {start}..={end}")));
        }
        let p: f64 = p
            .trim()
            .parse()
            .map_err(|_| fail(format!("invalid probability '{p}'")))?;
        if !(0.0..=1.0).contains(&p) {
            return Err(fail(format!("probability {p} outside [0, 1]")));
        }
        if table.get(id, start, end).is_some() {
            let w = format!("line {lineno}: duplicate score for {id} {start}..={end}, keeping the last");
            log::warn!("{w}");
            table.warnings.push(w);
        }
        table.insert(id, start, end, p);
    }
    Ok(table)
}

/// Writes a score table as TSV, sorted by key.
pub fn write_scores<W: Write>(mut out: W, table: &ScoreTable) -> Result<()> {
    let mut keys: Vec<_> = table.entries.iter().collect();
    keys.sort_by(|a, b| a.0.cmp(b.0));
    writeln!(out, "{SCORE_HEADER}")?;
    for ((id, s, e), p) in keys {
        writeln!(out, "{id}\t{s}\t{e}\t{p}")?;
    }
    Ok(())
}

/// Most probable segmentation: maximizes the sum of log-probabilities of
/// the chosen rhesis, unscored spans counting as `epsilon`.
pub fn segment_by_scores(
    sentence: &Sentence,
    scores: &ScoreTable,
    span: &SpanConfig,
    epsilon: f64,
) -> Result<Segmentation> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Config(format!("epsilon {epsilon} outside (0, 1)")));
    }
    let (cuts, _) = best_partition(
        sentence.len(),
        |i, j| feasible(sentence, span, i, j),
        |i, j| scores.get(&sentence.id, i, j).unwrap_or(epsilon).ln(),
        |_| 0.0,
    );
    Ok(Segmentation::from_cuts(sentence, &cuts))
}
