//! Scored-tree segmentation.
//!
//! Every boundary between two tokens is a cut candidate described by the
//! dependency edges it severs. A cut is scored from the relation of its
//! shallowest severed edge, the depth of that edge, how many further edges
//! it severs and a constant per-cut penalty. Each rhesis additionally pays
//! for its distance to the target length. The best segmentation under the
//! span is found exactly with [`crate::partition::best_partition`].

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::corpus::{Segmentation, Sentence};
use crate::error::{Error, Result};
use crate::partition::best_partition;
use crate::span::SpanConfig;

/// Sentences longer than this are refused by [`enumerate_all`].
pub const DEFAULT_ORACLE_CAP: usize = 16;

/// Criterion weights for the tree segmenter.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScoringWeights {
    /// Weight of the severed relation type.
    pub w_dep: f64,
    /// Constant penalty per cut.
    pub w_count: f64,
    /// Penalty per unit of distance between a rhesis length and the target.
    pub w_balance: f64,
    /// Penalty per level of depth of the severed edge.
    pub w_depth: f64,
    /// Penalty per additional severed edge.
    pub w_cross: f64,
    pub default_deprel_weight: f64,
    pub deprel_weights: BTreeMap<String, f64>,
}

impl Default for ScoringWeights {
    fn default() -> Self {
        ScoringWeights {
            w_dep: 1.0,
            w_count: 0.1,
            w_balance: 0.01,
            w_depth: 0.1,
            w_cross: 0.1,
            default_deprel_weight: 0.0,
            deprel_weights: BTreeMap::new(),
        }
    }
}

impl ScoringWeights {
    pub fn zero() -> Self {
        ScoringWeights {
            w_dep: 0.0,
            w_count: 0.0,
            w_balance: 0.0,
            w_depth: 0.0,
            w_cross: 0.0,
            default_deprel_weight: 0.0,
            deprel_weights: BTreeMap::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let scalars = [
            ("w_dep", self.w_dep),
            ("w_count", self.w_count),
            ("w_balance", self.w_balance),
            ("w_depth", self.w_depth),
            ("w_cross", self.w_cross),
        ];
        for (name, value) in scalars {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::Config(format!("{name} must be finite and >= 0, got {value}")));
            }
        }
        let in_range = |v: f64| (-1.0..=1.0).contains(&v);
        if !in_range(self.default_deprel_weight) {
            return Err(Error::Config("default_deprel_weight outside [-1, 1]".into()));
        }
        if let Some((label, v)) = self.deprel_weights.iter().find(|(_, v)| !in_range(**v)) {
            return Err(Error::Config(format!("weight {v} for '{label}' outside [-1, 1]")));
        }
        Ok(())
    }

    pub fn deprel_weight(&self, deprel: &str) -> f64 {
        self.deprel_weights
            .get(deprel)
            .copied()
            .unwrap_or(self.default_deprel_weight)
    }

    pub fn to_toml(&self) -> Result<String> {
        Ok(toml::to_string(self)?)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let w: ScoringWeights = toml::from_str(text)?;
        w.validate()?;
        Ok(w)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        ScoringWeights::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_toml()?)?;
        Ok(())
    }
}

/// A dependency edge, by 1-based token positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub head: usize,
    pub dep: usize,
    pub deprel: String,
}

/// Everything the scorer needs to know about one boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutCandidate {
    pub position: usize,
    pub crossing: Vec<Edge>,
    /// Index into `crossing` of the edge with the shallowest dependent.
    pub primary: usize,
    pub depth: usize,
}

impl CutCandidate {
    pub fn primary_edge(&self) -> &Edge {
        &self.crossing[self.primary]
    }
}

/// Edges severed by the boundary after token `position` (`1 <= position < n`).
pub fn crossing_edges(sentence: &Sentence, position: usize) -> CutCandidate {
    assert!(position >= 1 && position < sentence.len(), "boundary {position} is not internal");
    let crossing: Vec<Edge> = sentence
        .tokens
        .iter()
        .filter(|t| t.head != 0)
        .filter(|t| t.head.min(t.index) <= position && position < t.head.max(t.index))
        .map(|t| Edge {
            head: t.head,
            dep: t.index,
            deprel: t.deprel.clone(),
        })
        .collect();
    let primary = crossing
        .iter()
        .enumerate()
        .min_by_key(|(_, e)| (sentence.token_depth(e.dep), e.head, e.dep))
        .map(|(k, _)| k)
        .expect("a connected tree crosses every internal boundary");
    let depth = sentence.token_depth(crossing[primary].dep);
    CutCandidate {
        position,
        crossing,
        primary,
        depth,
    }
}

/// Score of one cut; higher is better.
pub fn cut_score(cand: &CutCandidate, w: &ScoringWeights) -> f64 {
    w.w_dep * w.deprel_weight(&cand.primary_edge().deprel)
        - w.w_depth * cand.depth as f64
        - w.w_cross * (cand.crossing.len() as f64 - 1.0)
        - w.w_count
}

/// Weight-independent features of a sentence, reusable across weight
/// vectors (the tuner evaluates thousands of them on the same corpus).
#[derive(Clone, Debug)]
pub struct TreeFeatures {
    n: usize,
    candidates: Vec<CutCandidate>,
    // lengths[i][j - i]: measured length of tokens i+1..=j+1
    lengths: Vec<Vec<usize>>,
    span: SpanConfig,
}

impl TreeFeatures {
    pub fn new(sentence: &Sentence, span: &SpanConfig) -> Self {
        let n = sentence.len();
        let candidates = (1..n).map(|p| crossing_edges(sentence, p)).collect();
        let lengths = (1..=n)
            .map(|i| (i..=n).map(|j| span.measure(sentence.slice(i, j))).collect())
            .collect();
        TreeFeatures {
            n,
            candidates,
            lengths,
            span: *span,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn candidate(&self, position: usize) -> &CutCandidate {
        &self.candidates[position - 1]
    }

    /// Measured length of tokens `i..=j`.
    pub fn length(&self, i: usize, j: usize) -> usize {
        self.lengths[i - 1][j - i]
    }

    /// A segment is feasible if it fits the span or is a single token.
    pub fn feasible(&self, i: usize, j: usize) -> bool {
        i == j || self.length(i, j) <= self.span.max_chars
    }

    pub fn balance_penalty(&self, i: usize, j: usize, w: &ScoringWeights) -> f64 {
        w.w_balance * (self.length(i, j) as f64 - self.span.target_chars as f64).abs()
    }

    /// Best cut set and its objective value.
    pub fn best_cuts(&self, w: &ScoringWeights) -> (Vec<usize>, f64) {
        best_partition(
            self.n,
            |i, j| self.feasible(i, j),
            |i, j| -self.balance_penalty(i, j, w),
            |p| cut_score(self.candidate(p), w),
        )
    }

    /// Objective value of an arbitrary cut set, accumulated left to right.
    pub fn score_cuts(&self, cuts: &[usize], w: &ScoringWeights) -> f64 {
        let mut total = 0.0;
        let mut start = 1;
        for &end in cuts.iter().chain(std::iter::once(&self.n)) {
            if start > 1 {
                total += cut_score(self.candidate(start - 1), w);
            }
            total -= self.balance_penalty(start, end, w);
            start = end + 1;
        }
        total
    }
}

/// Highest-scoring span-feasible segmentation of `sentence`.
pub fn segment_best(sentence: &Sentence, w: &ScoringWeights, span: &SpanConfig) -> Segmentation {
    let features = TreeFeatures::new(sentence, span);
    let (cuts, _) = features.best_cuts(w);
    Segmentation::from_cuts(sentence, &cuts)
}

/// Objective value of `seg` under the tree scorer.
pub fn segmentation_score(
    sentence: &Sentence,
    seg: &Segmentation,
    w: &ScoringWeights,
    span: &SpanConfig,
) -> f64 {
    TreeFeatures::new(sentence, span).score_cuts(&seg.cuts(), w)
}

/// Every span-feasible segmentation, in increasing order of the cut bitmask.
///
/// Single oversized tokens are admitted as their own rhesis, the same escape
/// the optimizers use.
pub fn enumerate_all(sentence: &Sentence, span: &SpanConfig) -> Result<Vec<Segmentation>> {
    enumerate_all_capped(sentence, span, DEFAULT_ORACLE_CAP)
}

pub fn enumerate_all_capped(
    sentence: &Sentence,
    span: &SpanConfig,
    cap: usize,
) -> Result<Vec<Segmentation>> {
    let n = sentence.len();
    if n > cap {
        return Err(Error::OracleCap { len: n, cap });
    }
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << (n - 1)) {
        let cuts: Vec<usize> = (1..n).filter(|p| mask & (1 << (p - 1)) != 0).collect();
        let seg = Segmentation::from_cuts(sentence, &cuts);
        if seg
            .rhesis
            .iter()
            .all(|r| r.start == r.end || span.fits(&r.text))
        {
            out.push(seg);
        }
    }
    Ok(out)
}
