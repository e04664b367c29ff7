//! One entry point over the three segmentation strategies.

use rayon::prelude::*;

use crate::bridge::{segment_by_scores, ScoreTable};
use crate::cascade::{cascade_and_regroup, oversized_tokens, CascadeConfig, SpanWarning};
use crate::corpus::{Segmentation, Sentence};
use crate::error::Result;
use crate::span::SpanConfig;
use crate::tree::{segment_best, ScoringWeights};

/// A segmentation strategy and its parameters.
#[derive(Clone, Debug)]
pub enum Method {
    /// Rule cascade followed by regrouping.
    Cascade(CascadeConfig),
    /// Best-scoring division of the dependency tree.
    Tree {
        weights: ScoringWeights,
        span: SpanConfig,
    },
    /// Most probable division under external classifier scores.
    Scores {
        table: ScoreTable,
        span: SpanConfig,
        epsilon: f64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segmented {
    pub segmentation: Segmentation,
    pub warnings: Vec<SpanWarning>,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Cascade(_) => "cascade",
            Method::Tree { .. } => "tree",
            Method::Scores { .. } => "scores",
        }
    }

    pub fn span(&self) -> &SpanConfig {
        match self {
            Method::Cascade(cfg) => &cfg.span,
            Method::Tree { span, .. } | Method::Scores { span, .. } => span,
        }
    }

    pub fn segment(&self, sentence: &Sentence) -> Result<Segmented> {
        let segmentation = match self {
            Method::Cascade(cfg) => cascade_and_regroup(sentence, cfg).segmentation,
            Method::Tree { weights, span } => segment_best(sentence, weights, span),
            Method::Scores {
                table,
                span,
                epsilon,
            } => segment_by_scores(sentence, table, span, *epsilon)?,
        };
        let warnings = oversized_tokens(&segmentation, self.span());
        Ok(Segmented {
            segmentation,
            warnings,
        })
    }

    /// Segments sentences in parallel; output keeps input order.
    pub fn segment_all(&self, sentences: &[Sentence]) -> Result<Vec<Segmented>> {
        sentences.par_iter().map(|s| self.segment(s)).collect()
    }
}
