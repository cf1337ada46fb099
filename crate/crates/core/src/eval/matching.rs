//! Maximum-weight full matching between predicted task spans and gold
//! sentences, weighted by word-index IOU.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::document::SentenceSpan;

/// Minimum IOU for a match to survive pruning.
pub const DEFAULT_THRESHOLD: f64 = 0.25;

const EPS: f64 = 1e-9;

/// Intersection and union sizes of the two spans' word-index sets.
pub fn iou_counts(pred: &SentenceSpan, gold: &SentenceSpan) -> (usize, usize) {
    let lo = pred.start.max(gold.start);
    let hi = pred.end.min(gold.end);
    let inter = hi.saturating_sub(lo);
    (inter, pred.len() + gold.len() - inter)
}

pub fn iou(pred: &SentenceSpan, gold: &SentenceSpan) -> f64 {
    match iou_counts(pred, gold) {
        (_, 0) => 0.0,
        (inter, union) => inter as f64 / union as f64,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MatchEdge {
    pub pred_index: usize,
    pub gold_index: usize,
    pub weight: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatchResult {
    /// Sorted by `pred_index`.
    pub edges: Vec<MatchEdge>,
    pub unmatched_pred: BTreeSet<usize>,
    pub unmatched_gold: BTreeSet<usize>,
    /// `None` before pruning.
    pub threshold: Option<f64>,
}

impl MatchResult {
    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.weight).sum()
    }
}

/// Hungarian algorithm (shortest augmenting paths with potentials) for a
/// `rows x cols` weight matrix with `rows <= cols`. Returns the column
/// assigned to each row and the maximal total weight.
fn max_assignment(weights: &[Vec<f64>], rows: usize, cols: usize) -> (Vec<usize>, f64) {
    debug_assert!(rows <= cols);
    if rows == 0 {
        return (Vec::new(), 0.0);
    }
    let inf = f64::INFINITY;
    let cost = |i: usize, j: usize| -weights[i][j];
    let mut u = vec![0.0; rows + 1];
    let mut v = vec![0.0; cols + 1];
    let mut owner = vec![0usize; cols + 1];
    let mut way = vec![0usize; cols + 1];
    for i in 1..=rows {
        owner[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![inf; cols + 1];
        let mut used = vec![false; cols + 1];
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta = inf;
            let mut j1 = 0usize;
            for j in 1..=cols {
                if used[j] {
                    continue;
                }
                let cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=cols {
                if used[j] {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assign = vec![0usize; rows];
    for j in 1..=cols {
        if owner[j] > 0 {
            assign[owner[j] - 1] = j - 1;
        }
    }
    let total = assign.iter().enumerate().map(|(i, &j)| weights[i][j]).sum();
    (assign, total)
}

/// Best total weight of a full matching over the given rows and columns.
fn best_value(weights: &[Vec<f64>], rows: &[usize], cols: &[usize]) -> f64 {
    if rows.len() <= cols.len() {
        let sub: Vec<Vec<f64>> = rows.iter().map(|&r| cols.iter().map(|&c| weights[r][c]).collect()).collect();
        max_assignment(&sub, rows.len(), cols.len()).1
    } else {
        let sub: Vec<Vec<f64>> = cols.iter().map(|&c| rows.iter().map(|&r| weights[r][c]).collect()).collect();
        max_assignment(&sub, cols.len(), rows.len()).1
    }
}

/// Maximum-weight full matching (size `min(|P|, |G|)`) on the complete
/// bipartite graph between predicted task spans and gold sentences.
/// Zero-weight edges are matchable. Among optimal matchings the one whose
/// sorted `(pred, gold)` pair list is lexicographically smallest is returned.
pub fn full_matching(preds: &[SentenceSpan], golds: &[SentenceSpan]) -> MatchResult {
    let weights: Vec<Vec<f64>> = preds.iter().map(|p| golds.iter().map(|g| iou(p, g)).collect()).collect();
    let size = preds.len().min(golds.len());
    let all_rows: Vec<usize> = (0..preds.len()).collect();
    let all_cols: Vec<usize> = (0..golds.len()).collect();
    let optimum = best_value(&weights, &all_rows, &all_cols);

    // Fix pairs in lexicographic order, keeping each one only if an optimal
    // matching still extends the fixed set.
    let mut edges: Vec<MatchEdge> = Vec::with_capacity(size);
    let mut row_free = vec![true; preds.len()];
    let mut col_free = vec![true; golds.len()];
    let mut fixed = 0.0;
    for p in 0..preds.len() {
        if edges.len() == size {
            break;
        }
        row_free[p] = false;
        let rows: Vec<usize> = all_rows.iter().copied().filter(|&r| row_free[r]).collect();
        for g in 0..golds.len() {
            if !col_free[g] {
                continue;
            }
            col_free[g] = false;
            let cols: Vec<usize> = all_cols.iter().copied().filter(|&c| col_free[c]).collect();
            let with = fixed + weights[p][g] + best_value(&weights, &rows, &cols);
            if with >= optimum - EPS {
                fixed += weights[p][g];
                edges.push(MatchEdge { pred_index: p, gold_index: g, weight: weights[p][g] });
                break;
            }
            col_free[g] = true;
        }
        if edges.last().map(|e| e.pred_index) != Some(p) {
            row_free[p] = true;
        }
    }

    let matched_p: BTreeSet<usize> = edges.iter().map(|e| e.pred_index).collect();
    let matched_g: BTreeSet<usize> = edges.iter().map(|e| e.gold_index).collect();
    MatchResult {
        unmatched_pred: all_rows.into_iter().filter(|i| !matched_p.contains(i)).collect(),
        unmatched_gold: all_cols.into_iter().filter(|j| !matched_g.contains(j)).collect(),
        edges,
        threshold: None,
    }
}

/// Drops edges with `weight < threshold`; their endpoints become unmatched.
pub fn prune(m: &MatchResult, threshold: f64) -> MatchResult {
    let mut out = MatchResult {
        edges: Vec::with_capacity(m.edges.len()),
        unmatched_pred: m.unmatched_pred.clone(),
        unmatched_gold: m.unmatched_gold.clone(),
        threshold: Some(threshold),
    };
    for e in &m.edges {
        if e.weight < threshold {
            out.unmatched_pred.insert(e.pred_index);
            out.unmatched_gold.insert(e.gold_index);
        } else {
            out.edges.push(*e);
        }
    }
    out
}
