//! Rule-cascade segmentation.
//!
//! An oversized segment is cut with the first criterion that applies, in
//! the fixed order punctuation, clause, priority preposition, chunk, other
//! preposition, word. All cuts of that level are applied and each piece is
//! handled again starting from the next level. A greedy regrouping pass then
//! merges neighbours back together while they fit the span.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::corpus::{Rhesis, Segmentation, Sentence, Token};
use crate::span::SpanConfig;

/// The six cutting criteria, lowest rank first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CutLevel {
    Punctuation = 1,
    Clause = 2,
    PriorityPreposition = 3,
    Chunk = 4,
    OtherPreposition = 5,
    Word = 6,
}

impl CutLevel {
    pub const ALL: [CutLevel; 6] = [
        CutLevel::Punctuation,
        CutLevel::Clause,
        CutLevel::PriorityPreposition,
        CutLevel::Chunk,
        CutLevel::OtherPreposition,
        CutLevel::Word,
    ];

    pub fn rank(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            CutLevel::Punctuation => "punctuation",
            CutLevel::Clause => "clause",
            CutLevel::PriorityPreposition => "priority_preposition",
            CutLevel::Chunk => "chunk",
            CutLevel::OtherPreposition => "other_preposition",
            CutLevel::Word => "word",
        }
    }

    fn from_rank(rank: usize) -> Option<CutLevel> {
        CutLevel::ALL.get(rank.checked_sub(1)?).copied()
    }
}

impl fmt::Display for CutLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

/// Opening brackets and quotes; the cut goes before them, not after.
const OPENING: &[&str] = &["(", "[", "«", "“"];

/// Forms that end a sentence; regrouping never merges across them.
const SENTENCE_FINAL: &[&str] = &[".", "!", "?", "…", "..."];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CascadeConfig {
    pub span: SpanConfig,
    pub priority_prepositions: BTreeSet<String>,
    pub clause_deprels: BTreeSet<String>,
    pub glue_deprels: BTreeSet<String>,
    pub punctuation: BTreeSet<String>,
}

impl Default for CascadeConfig {
    fn default() -> Self {
        CascadeConfig {
            span: SpanConfig::default(),
            priority_prepositions: set(&[
                "afin", "après", "avant", "chez", "contre", "depuis", "malgré", "pendant", "vers",
            ]),
            clause_deprels: set(&["ccomp", "advcl", "acl", "acl:relcl", "csubj", "parataxis", "conj"]),
            glue_deprels: set(&[
                "det", "amod", "nummod", "case", "fixed", "flat", "goeswith", "aux", "cop", "expl",
            ]),
            punctuation: set(&[",", ";", ":", "—", "(", ")", "«", "»"]),
        }
    }
}

impl CascadeConfig {
    pub fn with_span(span: SpanConfig) -> Self {
        CascadeConfig {
            span,
            ..CascadeConfig::default()
        }
    }
}

/// Inclusive token range `start..=end` of a sentence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TokenRange {
    pub start: usize,
    pub end: usize,
}

impl TokenRange {
    pub fn new(start: usize, end: usize) -> Self {
        assert!(start >= 1 && start <= end, "invalid range {start}..={end}");
        TokenRange { start, end }
    }

    pub fn whole(sentence: &Sentence) -> Self {
        TokenRange::new(1, sentence.len())
    }

    /// Whether boundary `i` (after token `i`) is strictly inside the range.
    fn inside(&self, i: usize) -> bool {
        i >= self.start && i < self.end
    }
}

/// A rhesis left longer than the span because it is a single token.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanWarning {
    pub sentence_id: String,
    pub token: usize,
    pub length: usize,
}

impl fmt::Display for SpanWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "sentence {}: token {} is {} long, above the span",
            self.sentence_id, self.token, self.length
        )
    }
}

/// Warnings for single-token rhesis that exceed the span.
pub fn oversized_tokens(seg: &Segmentation, span: &SpanConfig) -> Vec<SpanWarning> {
    seg.rhesis
        .iter()
        .filter(|r| r.start == r.end && !span.fits(&r.text))
        .map(|r| SpanWarning {
            sentence_id: seg.sentence_id.clone(),
            token: r.start,
            length: span.measure(&r.text),
        })
        .collect()
}

fn is_verbal(sentence: &Sentence, index: usize) -> bool {
    let tok = sentence.token(index);
    matches!(tok.upos.as_str(), "VERB" | "AUX")
        || sentence
            .dependents(index)
            .any(|d| d.deprel == "cop" || d.deprel.starts_with("nsubj"))
}

fn is_adp(tok: &Token) -> bool {
    tok.upos == "ADP" && tok.deprel != "fixed" && tok.deprel != "flat"
}

/// Boundaries produced by one criterion inside `segment`.
///
/// A boundary `i` lies between token `i` and token `i + 1`.
pub fn find_cuts_at_level(
    sentence: &Sentence,
    segment: TokenRange,
    level: CutLevel,
    cfg: &CascadeConfig,
) -> BTreeSet<usize> {
    let tokens = segment.start..=segment.end;
    let before = |i: usize| i.checked_sub(1);
    let cuts: Box<dyn Iterator<Item = usize>> = match level {
        CutLevel::Punctuation => Box::new(tokens.filter_map(|i| {
            let tok = sentence.token(i);
            if !tok.is_punct() || !cfg.punctuation.contains(&tok.form) {
                return None;
            }
            if OPENING.contains(&tok.form.as_str()) {
                before(i)
            } else {
                Some(i)
            }
        })),
        CutLevel::Clause => Box::new(tokens.filter_map(|i| {
            let tok = sentence.token(i);
            let introduces = match tok.upos.as_str() {
                "SCONJ" => tok.deprel != "fixed",
                "CCONJ" => tok.head != 0 && is_verbal(sentence, tok.head),
                _ => false,
            };
            if introduces {
                before(i)
            } else if label_in(&cfg.clause_deprels, &tok.deprel) {
                before(sentence.subtree_left_edge(i))
            } else {
                None
            }
        })),
        CutLevel::PriorityPreposition => Box::new(tokens.filter_map(|i| {
            let tok = sentence.token(i);
            (is_adp(tok) && cfg.priority_prepositions.contains(&tok.form.to_lowercase()))
                .then(|| i - 1)
        })),
        CutLevel::Chunk => return chunk_boundaries(sentence, segment, cfg),
        CutLevel::OtherPreposition => Box::new(tokens.filter_map(|i| {
            let tok = sentence.token(i);
            (is_adp(tok) && !cfg.priority_prepositions.contains(&tok.form.to_lowercase()))
                .then(|| i - 1)
        })),
        CutLevel::Word => Box::new(segment.start..segment.end),
    };
    cuts.filter(|&i| segment.inside(i)).collect()
}

/// A subtyped label such as `aux:pass` matches when either the full label
/// or its base (`aux`) is listed.
fn label_in(set: &BTreeSet<String>, deprel: &str) -> bool {
    set.contains(deprel) || deprel.split_once(':').is_some_and(|(base, _)| set.contains(base))
}

fn glued_to_head(tok: &Token, cfg: &CascadeConfig) -> bool {
    label_in(&cfg.glue_deprels, &tok.deprel)
}

/// Base-chunk boundaries: every internal boundary except those between two
/// glued tokens.
///
/// Neighbours are glued when one heads the other through a glue relation,
/// or when both attach to the same head through glue relations.
pub fn chunk_boundaries(
    sentence: &Sentence,
    segment: TokenRange,
    cfg: &CascadeConfig,
) -> BTreeSet<usize> {
    (segment.start..segment.end)
        .filter(|&i| {
            let left = sentence.token(i);
            let right = sentence.token(i + 1);
            let glued = (right.head == left.index && glued_to_head(right, cfg))
                || (left.head == right.index && glued_to_head(left, cfg))
                || (left.head == right.head
                    && left.head != 0
                    && glued_to_head(left, cfg)
                    && glued_to_head(right, cfg));
            !glued
        })
        .collect()
}

/// Output of the cascade: the segmentation and the oversized single tokens
/// it could not cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CascadeOutcome {
    pub segmentation: Segmentation,
    pub warnings: Vec<SpanWarning>,
}

pub fn cascade_segment(sentence: &Sentence, cfg: &CascadeConfig) -> CascadeOutcome {
    let mut pieces = Vec::new();
    split(sentence, TokenRange::whole(sentence), 1, cfg, &mut pieces);
    let segmentation = Segmentation {
        sentence_id: sentence.id.clone(),
        rhesis: pieces
            .into_iter()
            .map(|r| Rhesis {
                start: r.start,
                end: r.end,
                text: sentence.slice(r.start, r.end).to_string(),
            })
            .collect(),
    };
    let warnings = oversized_tokens(&segmentation, &cfg.span);
    for w in &warnings {
        log::warn!("{w}");
    }
    CascadeOutcome {
        segmentation,
        warnings,
    }
}

fn split(
    sentence: &Sentence,
    segment: TokenRange,
    min_rank: usize,
    cfg: &CascadeConfig,
    out: &mut Vec<TokenRange>,
) {
    if cfg.span.fits(sentence.slice(segment.start, segment.end)) {
        out.push(segment);
        return;
    }
    let productive = (min_rank..=CutLevel::Word.rank())
        .filter_map(CutLevel::from_rank)
        .map(|level| (level, find_cuts_at_level(sentence, segment, level, cfg)))
        .find(|(_, cuts)| !cuts.is_empty());
    let Some((level, cuts)) = productive else {
        out.push(segment);
        return;
    };
    let mut start = segment.start;
    for end in cuts.into_iter().chain(std::iter::once(segment.end)) {
        split(sentence, TokenRange::new(start, end), level.rank() + 1, cfg, out);
        start = end + 1;
    }
}

fn ends_sentence(r: &Rhesis, sentence: &Sentence) -> bool {
    SENTENCE_FINAL.contains(&sentence.token(r.end).form.as_str())
}

/// Greedily merges the leftmost adjacent pair that fits the span, until no
/// pair qualifies. Pairs separated by sentence-final punctuation stay apart.
pub fn regroup(sentence: &Sentence, seg: &Segmentation, cfg: &CascadeConfig) -> Segmentation {
    let mut rhesis = seg.rhesis.clone();
    'merge: loop {
        for k in 0..rhesis.len().saturating_sub(1) {
            let (left, right) = (&rhesis[k], &rhesis[k + 1]);
            if ends_sentence(left, sentence) {
                continue;
            }
            let merged = sentence.slice(left.start, right.end);
            if cfg.span.fits(merged) {
                let merged = Rhesis {
                    start: left.start,
                    end: right.end,
                    text: merged.to_string(),
                };
                rhesis.splice(k..=k + 1, [merged]);
                continue 'merge;
            }
        }
        break;
    }
    Segmentation {
        sentence_id: seg.sentence_id.clone(),
        rhesis,
    }
}

/// Cascade followed by regrouping.
pub fn cascade_and_regroup(sentence: &Sentence, cfg: &CascadeConfig) -> CascadeOutcome {
    let outcome = cascade_segment(sentence, cfg);
    let segmentation = regroup(sentence, &outcome.segmentation, cfg);
    let warnings = oversized_tokens(&segmentation, &cfg.span);
    CascadeOutcome {
        segmentation,
        warnings,
    }
}
