//! Segmentation evaluation.
//!
//! The headline metric is common-rhesis precision: the share of automatic
//! rhesis whose exact token span also occurs in the human segmentation.
//! Recall, F1 and boundary-level scores are reported next to it, since
//! precision alone rewards under-segmentation.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::corpus::{AlignedCorpus, Segmentation};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Prf {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl Prf {
    fn from_counts(matches: usize, predicted: usize, reference: usize, empty: f64) -> Prf {
        let ratio = |num: usize, den: usize| if den == 0 { empty } else { num as f64 / den as f64 };
        let precision = ratio(matches, predicted);
        let recall = ratio(matches, reference);
        let f1 = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        Prf {
            precision,
            recall,
            f1,
        }
    }
}

/// Raw match counts behind a [`Prf`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchCounts {
    pub matches: usize,
    pub predicted: usize,
    pub reference: usize,
}

fn check_pairing(auto: &[Segmentation], gold: &[Segmentation]) -> Result<()> {
    if auto.len() != gold.len() {
        return Err(Error::Mismatch(format!(
            "{} automatic sentences but {} gold sentences",
            auto.len(),
            gold.len()
        )));
    }
    for (a, g) in auto.iter().zip(gold) {
        if a.sentence_id != g.sentence_id {
            return Err(Error::Mismatch(format!(
                "sentence {} paired with gold sentence {}",
                a.sentence_id, g.sentence_id
            )));
        }
        if a.token_count() != g.token_count() {
            return Err(Error::Mismatch(format!(
                "sentence {} covers {} tokens, gold covers {}",
                a.sentence_id,
                a.token_count(),
                g.token_count()
            )));
        }
    }
    Ok(())
}

pub fn rhesis_counts(auto: &[Segmentation], gold: &[Segmentation]) -> Result<MatchCounts> {
    check_pairing(auto, gold)?;
    let mut counts = MatchCounts::default();
    for (a, g) in auto.iter().zip(gold) {
        let spans: BTreeSet<(usize, usize)> = g.rhesis.iter().map(|r| (r.start, r.end)).collect();
        counts.matches += a
            .rhesis
            .iter()
            .filter(|r| spans.contains(&(r.start, r.end)))
            .count();
        counts.predicted += a.len();
        counts.reference += g.len();
    }
    Ok(counts)
}

/// Common-rhesis precision, recall and F1 over paired sentences.
pub fn rhesis_precision(auto: &[Segmentation], gold: &[Segmentation]) -> Result<Prf> {
    let c = rhesis_counts(auto, gold)?;
    Ok(Prf::from_counts(c.matches, c.predicted, c.reference, 0.0))
}

pub fn boundary_counts(auto: &[Segmentation], gold: &[Segmentation]) -> Result<MatchCounts> {
    check_pairing(auto, gold)?;
    let mut counts = MatchCounts::default();
    for (a, g) in auto.iter().zip(gold) {
        let gold_cuts: BTreeSet<usize> = g.cuts().into_iter().collect();
        let auto_cuts = a.cuts();
        counts.matches += auto_cuts.iter().filter(|c| gold_cuts.contains(c)).count();
        counts.predicted += auto_cuts.len();
        counts.reference += gold_cuts.len();
    }
    Ok(counts)
}

/// Precision, recall and F1 over internal boundaries.
///
/// An empty denominator counts as perfect, so two unsegmented sentences
/// score (1, 1, 1).
pub fn boundary_prf(auto: &[Segmentation], gold: &[Segmentation]) -> Result<Prf> {
    let c = boundary_counts(auto, gold)?;
    Ok(Prf::from_counts(c.matches, c.predicted, c.reference, 1.0))
}

/// One row of a corpus report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DocRow {
    pub label: String,
    /// Number of gold rhesis, the row weight.
    pub rhesis_count: usize,
    pub precision: f64,
    pub recall: Option<f64>,
    pub f1: Option<f64>,
    pub boundary: Option<Prf>,
}

impl DocRow {
    /// A row for which only the precision is known.
    pub fn precision_only(label: impl Into<String>, rhesis_count: usize, precision: f64) -> Self {
        DocRow {
            label: label.into(),
            rhesis_count,
            precision,
            recall: None,
            f1: None,
            boundary: None,
        }
    }

    /// Scores one document's automatic output against its gold.
    pub fn evaluate(
        label: impl Into<String>,
        auto: &[Segmentation],
        gold: &[Segmentation],
    ) -> Result<Self> {
        let spans = rhesis_precision(auto, gold)?;
        let boundary = boundary_prf(auto, gold)?;
        Ok(DocRow {
            label: label.into(),
            rhesis_count: gold.iter().map(Segmentation::len).sum(),
            precision: spans.precision,
            recall: Some(spans.recall),
            f1: Some(spans.f1),
            boundary: Some(boundary),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub per_doc: Vec<DocRow>,
    pub total_rhesis: usize,
    /// Gold-count weighted mean of the row precisions.
    pub weighted_precision: f64,
    pub weighted_recall: Option<f64>,
    pub weighted_f1: Option<f64>,
}

fn weighted(rows: &[DocRow], total: usize, value: impl Fn(&DocRow) -> Option<f64>) -> Option<f64> {
    let mut sum = 0.0;
    for row in rows {
        sum += row.rhesis_count as f64 * value(row)?;
    }
    Some(sum / total as f64)
}

/// Aggregates document rows with gold rhesis counts as weights.
pub fn corpus_report(rows: Vec<DocRow>) -> Result<EvalReport> {
    let total: usize = rows.iter().map(|r| r.rhesis_count).sum();
    if total == 0 {
        return Err(Error::Mismatch("report rows carry no gold rhesis".into()));
    }
    let weighted_precision = weighted(&rows, total, |r| Some(r.precision)).unwrap();
    let weighted_recall = weighted(&rows, total, |r| r.recall);
    let weighted_f1 = weighted(&rows, total, |r| r.f1);
    Ok(EvalReport {
        per_doc: rows,
        total_rhesis: total,
        weighted_precision,
        weighted_recall,
        weighted_f1,
    })
}

/// Evaluates automatic segmentations of an aligned corpus, one row per
/// document in order of first appearance.
pub fn evaluate_corpus(corpus: &AlignedCorpus, auto: &[Segmentation]) -> Result<EvalReport> {
    if corpus.len() != auto.len() {
        return Err(Error::Mismatch(format!(
            "{} automatic sentences for {} corpus entries",
            auto.len(),
            corpus.len()
        )));
    }
    let mut rows = Vec::new();
    for doc in corpus.documents() {
        let (a, g): (Vec<_>, Vec<_>) = corpus
            .entries
            .iter()
            .zip(auto)
            .filter(|(e, _)| e.doc == doc)
            .map(|(e, a)| (a.clone(), e.gold.clone()))
            .unzip();
        rows.push(DocRow::evaluate(doc, &a, &g)?);
    }
    corpus_report(rows)
}

fn pct(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |v| format!("{:.1}%", v * 100.0))
}

impl EvalReport {
    /// Aligned text table, one line per document plus the weighted line.
    pub fn to_table(&self) -> String {
        let width = self
            .per_doc
            .iter()
            .map(|r| r.label.chars().count())
            .chain(std::iter::once("Weighted Average".len()))
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<width$}  {:>8}  {:>9}  {:>7}  {:>7}  {:>8}  {:>8}  {:>8}",
            "Text", "Rhesis", "Precision", "Recall", "F1", "B-Prec", "B-Rec", "B-F1"
        );
        for r in &self.per_doc {
            let label_pad = width - r.label.chars().count();
            let _ = writeln!(
                out,
                "{}{}  {:>8}  {:>9}  {:>7}  {:>7}  {:>8}  {:>8}  {:>8}",
                r.label,
                " ".repeat(label_pad),
                r.rhesis_count,
                pct(Some(r.precision)),
                pct(r.recall),
                pct(r.f1),
                pct(r.boundary.map(|b| b.precision)),
                pct(r.boundary.map(|b| b.recall)),
                pct(r.boundary.map(|b| b.f1)),
            );
        }
        let _ = writeln!(
            out,
            "{:<width$}  {:>8}  {:>9}  {:>7}  {:>7}",
            "Weighted Average",
            self.total_rhesis,
            pct(Some(self.weighted_precision)),
            pct(self.weighted_recall),
            pct(self.weighted_f1),
        );
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Length distribution of rhesis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LengthStats {
    pub count: usize,
    pub mean_chars: f64,
    pub std_chars: f64,
    pub mean_words: f64,
    pub std_words: f64,
    /// Counts of rhesis whose character length falls in `[5k, 5k + 5)`.
    pub histogram: Vec<usize>,
}

pub const HISTOGRAM_BUCKET: usize = 5;

fn mean_std(values: &[usize]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<usize>() as f64 / n;
    let var = values
        .iter()
        .map(|&v| (v as f64 - mean).powi(2))
        .sum::<f64>()
        / n;
    (mean, var.sqrt())
}

/// Population statistics over rhesis surface lengths.
pub fn length_stats(segs: &[Segmentation]) -> Result<LengthStats> {
    let texts: Vec<&str> = segs
        .iter()
        .flat_map(|s| s.rhesis.iter().map(|r| r.text.as_str()))
        .collect();
    if texts.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let chars: Vec<usize> = texts.iter().map(|t| t.chars().count()).collect();
    let words: Vec<usize> = texts.iter().map(|t| t.split_whitespace().count()).collect();
    let (mean_chars, std_chars) = mean_std(&chars);
    let (mean_words, std_words) = mean_std(&words);
    let mut histogram = vec![0; chars.iter().max().unwrap() / HISTOGRAM_BUCKET + 1];
    for c in &chars {
        histogram[c / HISTOGRAM_BUCKET] += 1;
    }
    Ok(LengthStats {
        count: texts.len(),
        mean_chars,
        std_chars,
        mean_words,
        std_words,
        histogram,
    })
}

impl LengthStats {
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "rhesis      {}", self.count);
        let _ = writeln!(out, "chars       mean {:.2}  std {:.2}", self.mean_chars, self.std_chars);
        let _ = writeln!(out, "words       mean {:.2}  std {:.2}", self.mean_words, self.std_words);
        for (k, n) in self.histogram.iter().enumerate() {
            let lo = k * HISTOGRAM_BUCKET;
            let _ = writeln!(out, "{:>3}-{:<3}  {:>5}", lo, lo + HISTOGRAM_BUCKET - 1, n);
        }
        out
    }
}
