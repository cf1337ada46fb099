//! Boundary edit distance and boundary similarity.
//!
//! A segmentation of `n` words is a set of between-word positions in `0..=n`;
//! `0` and `n` are always present. Two segmentations are aligned by a
//! monotone dynamic program: equal positions match for free, positions at
//! most `window` apart may be paired as a transposition costing
//! `distance / window`, and every unpaired position costs 1 (a deletion from
//! the first set or an addition from the second).

use alloc::vec;
use alloc::vec::Vec;

use super::matching::MatchResult;
use super::EvalError;
use crate::document::SentenceSpan;

pub const DEFAULT_TRANSPOSITION_WINDOW: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundarySet {
    n: usize,
    positions: Vec<usize>,
}

impl BoundarySet {
    /// Builds the set from arbitrary positions in `0..=n`, adding `0` and `n`.
    pub fn new(n: usize, positions: impl IntoIterator<Item = usize>) -> Result<Self, EvalError> {
        let mut v: Vec<usize> = positions.into_iter().chain([0, n]).collect();
        if let Some(&p) = v.iter().find(|&&p| p > n) {
            return Err(EvalError::SpanOutOfRange { start: p, end: p, len: n });
        }
        v.sort_unstable();
        v.dedup();
        Ok(BoundarySet { n, positions: v })
    }

    pub fn word_count(&self) -> usize {
        self.n
    }

    /// Sorted, unique.
    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

/// Boundaries of disjoint spans: their starts and ends plus `0` and `n`.
pub fn boundaries_of(spans: &[SentenceSpan], n: usize) -> Result<BoundarySet, EvalError> {
    let mut sorted: Vec<&SentenceSpan> = spans.iter().collect();
    sorted.sort_by_key(|s| (s.start, s.end));
    for s in &sorted {
        if s.start >= s.end || s.end > n {
            return Err(EvalError::SpanOutOfRange { start: s.start, end: s.end, len: n });
        }
    }
    for w in sorted.windows(2) {
        if w[0].overlaps(w[1]) {
            return Err(EvalError::OverlappingSpans(w[0].start, w[0].end, w[1].start, w[1].end));
        }
    }
    BoundarySet::new(n, sorted.iter().flat_map(|s| [s.start, s.end]))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EditSummary {
    pub matches: usize,
    pub additions: usize,
    pub deletions: usize,
    /// Shift distance of every transposition, each in `1..=window`.
    pub transpositions: Vec<usize>,
    pub window: usize,
}

impl EditSummary {
    /// Numerator of the similarity in units of `1 / window`.
    fn scaled_cost(&self) -> usize {
        (self.additions + self.deletions) * self.window + self.transpositions.iter().sum::<usize>()
    }

    pub fn cost(&self) -> f64 {
        self.scaled_cost() as f64 / self.window as f64
    }

    pub fn similarity(&self) -> f64 {
        let den = self.matches + self.additions + self.deletions + self.transpositions.len();
        if den == 0 {
            return 1.0;
        }
        1.0 - self.cost() / den as f64
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Cost {
    /// In units of 1/window.
    scaled: usize,
    /// Negated pair and match counts: fewer edit operations win ties.
    neg_pairs: isize,
    neg_matches: isize,
}

#[derive(Clone, Copy)]
enum Step {
    Start,
    Delete,
    Add,
    Pair,
}

/// Minimum-cost alignment of `s1` onto `s2`.
pub fn boundary_edit_distance(s1: &BoundarySet, s2: &BoundarySet, window: usize) -> Result<EditSummary, EvalError> {
    if window == 0 {
        return Err(EvalError::InvalidWindow);
    }
    if s1.n != s2.n {
        return Err(EvalError::WordCountMismatch(s1.n, s2.n));
    }
    let (a, b) = (&s1.positions, &s2.positions);
    let (la, lb) = (a.len(), b.len());
    let worst = Cost { scaled: usize::MAX, neg_pairs: 0, neg_matches: 0 };
    let mut dp = vec![vec![(worst, Step::Start); lb + 1]; la + 1];
    dp[0][0].0 = Cost { scaled: 0, neg_pairs: 0, neg_matches: 0 };
    for i in 0..=la {
        for j in 0..=lb {
            if i == 0 && j == 0 {
                continue;
            }
            let mut best = (worst, Step::Start);
            if i > 0 {
                let c = dp[i - 1][j].0;
                let c = Cost { scaled: c.scaled + window, ..c };
                if c < best.0 {
                    best = (c, Step::Delete);
                }
            }
            if j > 0 {
                let c = dp[i][j - 1].0;
                let c = Cost { scaled: c.scaled + window, ..c };
                if c < best.0 {
                    best = (c, Step::Add);
                }
            }
            if i > 0 && j > 0 {
                let d = a[i - 1].abs_diff(b[j - 1]);
                if d <= window {
                    let c = dp[i - 1][j - 1].0;
                    let c = Cost {
                        scaled: c.scaled + d,
                        neg_pairs: c.neg_pairs - 1,
                        neg_matches: c.neg_matches - (d == 0) as isize,
                    };
                    if c < best.0 {
                        best = (c, Step::Pair);
                    }
                }
            }
            dp[i][j] = best;
        }
    }

    let mut out = EditSummary { window, ..EditSummary::default() };
    let (mut i, mut j) = (la, lb);
    while i > 0 || j > 0 {
        match dp[i][j].1 {
            Step::Delete => {
                out.deletions += 1;
                i -= 1;
            }
            Step::Add => {
                out.additions += 1;
                j -= 1;
            }
            Step::Pair => {
                match a[i - 1].abs_diff(b[j - 1]) {
                    0 => out.matches += 1,
                    d => out.transpositions.push(d),
                }
                i -= 1;
                j -= 1;
            }
            Step::Start => unreachable!("every non-origin cell has a predecessor"),
        }
    }
    out.transpositions.reverse();
    debug_assert_eq!(out.scaled_cost(), dp[la][lb].0.scaled);
    Ok(out)
}

/// `1 - (A + D + sum(t / window)) / (M + A + D + |T|)`.
pub fn boundary_similarity(s1: &BoundarySet, s2: &BoundarySet, window: usize) -> Result<f64, EvalError> {
    Ok(boundary_edit_distance(s1, s2, window)?.similarity())
}

/// Boundary similarity restricted to true-positive tasks: the predicted side
/// keeps only boundaries of predictions matched to gold tasks, the gold side
/// only boundaries of those matched gold tasks. `None` without true positives.
pub fn b_tp(
    m: &MatchResult,
    preds: &[SentenceSpan],
    golds: &[SentenceSpan],
    n: usize,
    window: usize,
) -> Option<f64> {
    let tps: Vec<_> = m.edges.iter().filter(|e| golds[e.gold_index].label.is_task()).collect();
    if tps.is_empty() {
        return None;
    }
    let s1 = BoundarySet::new(n, tps.iter().flat_map(|e| [preds[e.pred_index].start, preds[e.pred_index].end])).ok()?;
    let s2 = BoundarySet::new(n, tps.iter().flat_map(|e| [golds[e.gold_index].start, golds[e.gold_index].end])).ok()?;
    boundary_similarity(&s1, &s2, window).ok()
}
