//! Exact best-partition search shared by the score-driven segmenters.
//!
//! The objective is a sum of per-segment terms and per-cut terms, so a
//! forward dynamic program over boundary positions is exact. Ties are
//! resolved by fewest segments, then by the lexicographically smallest cut
//! sequence.

use std::cmp::Ordering;

/// Relative tolerance under which two objective values count as tied.
pub const SCORE_TOLERANCE: f64 = 1e-9;

/// Compares objective values, treating near-equal values as equal.
pub fn score_cmp(a: f64, b: f64) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    if a.is_finite() && b.is_finite() {
        let scale = a.abs().max(b.abs()).max(1.0);
        if (a - b).abs() <= SCORE_TOLERANCE * scale {
            return Ordering::Equal;
        }
    }
    a.partial_cmp(&b).unwrap_or(Ordering::Equal)
}

/// Orders two candidate solutions: `Greater` means `a` is preferred.
pub fn prefer(a: (f64, &[usize]), b: (f64, &[usize])) -> Ordering {
    score_cmp(a.0, b.0)
        .then_with(|| b.1.len().cmp(&a.1.len()))
        .then_with(|| b.1.cmp(a.1))
}

#[derive(Clone)]
struct State {
    score: f64,
    cuts: Vec<usize>,
}

/// Finds the best cut set for a sentence of `n` tokens.
///
/// `feasible(i, j)` and `segment(i, j)` take 1-based inclusive token ranges;
/// `cut(i)` scores the boundary after token `i`. Single-token segments must
/// be feasible so that a solution always exists. Returns the cuts and the
/// objective value.
pub fn best_partition<F, S, C>(n: usize, feasible: F, segment: S, cut: C) -> (Vec<usize>, f64)
where
    F: Fn(usize, usize) -> bool,
    S: Fn(usize, usize) -> f64,
    C: Fn(usize) -> f64,
{
    let cut_scores: Vec<f64> = (0..n).map(|i| if i == 0 { 0.0 } else { cut(i) }).collect();
    let mut best: Vec<Option<State>> = vec![None; n + 1];
    best[0] = Some(State {
        score: 0.0,
        cuts: Vec::new(),
    });

    for j in 1..=n {
        let mut winner: Option<State> = None;
        for i in 0..j {
            if !feasible(i + 1, j) {
                continue;
            }
            let Some(prev) = &best[i] else { continue };
            let mut score = prev.score;
            if i > 0 {
                score += cut_scores[i];
            }
            score += segment(i + 1, j);
            let mut cuts = prev.cuts.clone();
            if i > 0 {
                cuts.push(i);
            }
            let replace = match &winner {
                None => true,
                Some(w) => prefer((score, &cuts), (w.score, &w.cuts)) == Ordering::Greater,
            };
            if replace {
                winner = Some(State { score, cuts });
            }
        }
        best[j] = winner;
    }

    let last = best[n].take().expect("single-token segments are always feasible");
    (last.cuts, last.score)
}
