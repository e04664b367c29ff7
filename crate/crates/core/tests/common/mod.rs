//! Random inputs and brute-force reference implementations shared by the
//! integration tests. Nothing here calls the optimizers under test.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rhesis::bridge::ScoreTable;
use rhesis::corpus::{Segmentation, Sentence, Token};
use rhesis::span::{CountMode, SpanConfig};
use rhesis::tree::ScoringWeights;

pub const TOLERANCE: f64 = 1e-9;

pub const DEPRELS: &[&str] = &[
    "nsubj", "obj", "iobj", "obl", "obl:mod", "advcl", "ccomp", "xcomp", "conj", "cc", "mark",
    "case", "det", "amod", "nmod", "acl", "acl:relcl", "aux", "aux:pass", "cop", "advmod", "fixed",
    "flat", "punct", "appos",
];

const UPOS: &[&str] = &[
    "NOUN", "VERB", "ADP", "DET", "PRON", "ADJ", "ADV", "AUX", "PROPN", "SCONJ", "CCONJ", "PUNCT",
];

const PUNCT: &[&str] = &[",", ".", ";", ":", "!", "?", "(", ")", "«", "»", "…"];

const LETTERS: &[char] = &[
    'a', 'b', 'c', 'd', 'e', 'i', 'l', 'm', 'n', 'o', 'r', 's', 't', 'u', 'é', 'è', 'ç', 'à',
];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn word<R: Rng>(rng: &mut R, len: usize) -> String {
    (0..len).map(|_| *LETTERS.choose(rng).unwrap()).collect()
}

/// A sentence of `n` tokens over a uniformly shaped random tree.
///
/// Roughly one sentence in twenty carries a token longer than 45 chars.
pub fn random_sentence<R: Rng>(rng: &mut R, id: &str, n: usize) -> Sentence {
    // attach tokens in random order to already placed ones: always a tree
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(rng);
    let mut heads = vec![0; n + 1];
    for k in 1..n {
        heads[order[k]] = order[rng.gen_range(0..k)];
    }
    let giant = if rng.gen_bool(0.05) { Some(rng.gen_range(1..=n)) } else { None };
    let tokens = (1..=n)
        .map(|i| {
            let upos = *UPOS.choose(rng).unwrap();
            let form = if giant == Some(i) {
                {
                let len = rng.gen_range(46..70);
                word(rng, len)
            }
            } else if upos == "PUNCT" {
                PUNCT.choose(rng).unwrap().to_string()
            } else {
                {
                let len = rng.gen_range(1..10);
                word(rng, len)
            }
            };
            let deprel = if heads[i] == 0 { "root" } else { *DEPRELS.choose(rng).unwrap() };
            let t = Token::new(i, &form, upos, heads[i], deprel);
            if i < n && rng.gen_bool(0.1) {
                t.no_space_after()
            } else {
                t
            }
        })
        .collect();
    Sentence::new(id, tokens).expect("generator builds valid trees")
}

pub fn random_sentences(seed: u64, count: usize, min: usize, max: usize) -> Vec<Sentence> {
    let mut r = rng(seed);
    (0..count)
        .map(|k| {
            let n = r.gen_range(min..=max);
            random_sentence(&mut r, &format!("r{k}"), n)
        })
        .collect()
}

/// Weights on a coarse grid half of the time, so exact ties do occur.
pub fn random_weights<R: Rng>(rng: &mut R) -> ScoringWeights {
    let coarse = rng.gen_bool(0.5);
    let mut draw = |hi: f64| {
        if coarse {
            (rng.gen_range(0..=4) as f64) * hi / 4.0
        } else {
            rng.gen_range(0.0..hi)
        }
    };
    let mut w = ScoringWeights {
        w_dep: draw(1.0),
        w_count: draw(1.0),
        w_balance: draw(0.1),
        w_depth: draw(1.0),
        w_cross: draw(1.0),
        default_deprel_weight: 0.0,
        deprel_weights: Default::default(),
    };
    for label in DEPRELS {
        if rng.gen_bool(0.7) {
            let v = if coarse {
                rng.gen_range(-2..=2) as f64 / 2.0
            } else {
                rng.gen_range(-1.0..=1.0)
            };
            w.deprel_weights.insert(label.to_string(), v);
        }
    }
    w
}

pub fn random_span<R: Rng>(rng: &mut R) -> SpanConfig {
    if rng.gen_bool(0.2) {
        let max = rng.gen_range(2..8);
        SpanConfig {
            max_chars: max,
            target_chars: rng.gen_range(1..=max),
            count_mode: CountMode::Words,
        }
    } else {
        let max = rng.gen_range(10..60);
        SpanConfig {
            max_chars: max,
            target_chars: rng.gen_range(1..=max),
            count_mode: CountMode::Characters,
        }
    }
}

/// Probabilities for a random subset of the sub-sections of `s`.
pub fn random_scores<R: Rng>(rng: &mut R, s: &Sentence) -> ScoreTable {
    let mut table = ScoreTable::default();
    let n = s.len();
    for i in 1..=n {
        for j in i..=n {
            if rng.gen_bool(0.4) {
                let p = if rng.gen_bool(0.5) {
                    [0.1, 0.25, 0.5, 0.9, 1.0][rng.gen_range(0..5)]
                } else {
                    rng.gen_range(0.001..=1.0)
                };
                table.insert(&s.id, i, j, p);
            }
        }
    }
    table
}

// ---------------------------------------------------------------------------
// reference implementations

/// Surface text of tokens `i..=j`, rebuilt from forms and SpaceAfter.
pub fn surface(s: &Sentence, i: usize, j: usize) -> String {
    let mut out = String::new();
    for k in i..=j {
        let t = &s.tokens[k - 1];
        out.push_str(&t.form);
        let glued = t.misc.as_deref().is_some_and(|m| m.split('|').any(|kv| kv == "SpaceAfter=No"));
        if k < j && !glued {
            out.push(' ');
        }
    }
    out
}

pub fn measure(text: &str, span: &SpanConfig) -> usize {
    match span.count_mode {
        CountMode::Characters => text.chars().count(),
        CountMode::Words => text.split_whitespace().count(),
    }
}

fn depth(s: &Sentence, mut i: usize) -> usize {
    let mut d = 0;
    while s.tokens[i - 1].head != 0 {
        i = s.tokens[i - 1].head;
        d += 1;
    }
    d
}

/// Score of the boundary after token `p`, straight from the definition.
pub fn reference_cut(s: &Sentence, p: usize, w: &ScoringWeights) -> f64 {
    let mut crossing: Vec<(usize, usize, usize, &str)> = Vec::new();
    for t in &s.tokens {
        if t.head == 0 {
            continue;
        }
        let (lo, hi) = (t.head.min(t.index), t.head.max(t.index));
        if lo <= p && p < hi {
            crossing.push((depth(s, t.index), t.head, t.index, &t.deprel));
        }
    }
    crossing.sort();
    let (d, _, _, rel) = crossing[0];
    let rel_w = w.deprel_weights.get(rel).copied().unwrap_or(w.default_deprel_weight);
    w.w_dep * rel_w - w.w_depth * d as f64 - w.w_cross * (crossing.len() - 1) as f64 - w.w_count
}

/// Every admissible cut list: each piece fits or is a single token.
pub fn all_cut_lists(s: &Sentence, span: &SpanConfig) -> Vec<Vec<usize>> {
    let n = s.len();
    (0u32..1 << (n - 1))
        .map(|mask| (1..n).filter(|p| mask >> (p - 1) & 1 == 1).collect::<Vec<_>>())
        .filter(|cuts| {
            pieces(n, cuts)
                .iter()
                .all(|&(i, j)| i == j || measure(&surface(s, i, j), span) <= span.max_chars)
        })
        .collect()
}

pub fn pieces(n: usize, cuts: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = 1;
    for &c in cuts.iter().chain(std::iter::once(&n)) {
        out.push((start, c));
        start = c + 1;
    }
    out
}

/// Tree objective, accumulated piece by piece from the left.
pub fn reference_tree_score(s: &Sentence, cuts: &[usize], w: &ScoringWeights, span: &SpanConfig) -> f64 {
    let mut total = 0.0;
    for (i, j) in pieces(s.len(), cuts) {
        if i > 1 {
            total += reference_cut(s, i - 1, w);
        }
        let len = measure(&surface(s, i, j), span) as f64;
        total -= w.w_balance * (len - span.target_chars as f64).abs();
    }
    total
}

pub fn reference_log_score(s: &Sentence, cuts: &[usize], table: &ScoreTable, epsilon: f64) -> f64 {
    pieces(s.len(), cuts)
        .iter()
        .map(|&(i, j)| table.get(&s.id, i, j).unwrap_or(epsilon).ln())
        .sum()
}

pub fn near(a: f64, b: f64) -> bool {
    (a - b).abs() <= TOLERANCE * a.abs().max(b.abs()).max(1.0)
}

/// Arg-max with the published tie rules: among scores within tolerance of
/// the maximum, fewest pieces, then the lexicographically smallest cut list.
pub fn brute_force_best(candidates: Vec<(Vec<usize>, f64)>) -> (Vec<usize>, f64) {
    let top = candidates.iter().map(|c| c.1).fold(f64::NEG_INFINITY, f64::max);
    candidates
        .into_iter()
        .filter(|c| near(c.1, top))
        .min_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)))
        .expect("at least one admissible segmentation")
}

pub fn tree_oracle(s: &Sentence, w: &ScoringWeights, span: &SpanConfig) -> (Vec<usize>, f64) {
    let candidates = all_cut_lists(s, span)
        .into_iter()
        .map(|c| {
            let score = reference_tree_score(s, &c, w, span);
            (c, score)
        })
        .collect();
    brute_force_best(candidates)
}

pub fn scores_oracle(s: &Sentence, t: &ScoreTable, span: &SpanConfig, epsilon: f64) -> (Vec<usize>, f64) {
    let candidates = all_cut_lists(s, span)
        .into_iter()
        .map(|c| {
            let score = reference_log_score(s, &c, t, epsilon);
            (c, score)
        })
        .collect();
    brute_force_best(candidates)
}

/// A random cut list for `s`, ignoring the span.
pub fn random_segmentation<R: Rng>(rng: &mut R, s: &Sentence) -> Segmentation {
    let cuts: Vec<usize> = (1..s.len()).filter(|_| rng.gen_bool(0.35)).collect();
    Segmentation::from_cuts(s, &cuts)
}

/// True when some rhesis neither fits nor is a single, reported token.
pub fn breaks_span(
    seg: &Segmentation,
    warnings: &[rhesis::cascade::SpanWarning],
    span: &SpanConfig,
) -> bool {
    seg.rhesis.iter().any(|r| {
        let fits = measure(&r.text, span) <= span.max_chars;
        let reported = r.start == r.end && warnings.iter().any(|w| w.token == r.start);
        !fits && !reported
    })
}

/// Text content of an HTML fragment with entities decoded.
pub fn html_text(html: &str) -> String {
    let mut out = String::new();
    let mut in_tag = false;
    for c in html.chars() {
        match c {
            '<' => in_tag = true,
            '>' => in_tag = false,
            _ if !in_tag => out.push(c),
            _ => {}
        }
    }
    out.replace("&lt;", "<")
        .replace("&gt;", ">")
        .replace("&quot;", "\"")
        .replace("&amp;", "&")
}
