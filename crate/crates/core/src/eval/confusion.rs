//! Confusion counts over a pruned matching and the metrics derived from them.

use core::ops::AddAssign;

use serde::{Deserialize, Serialize};

use super::matching::MatchResult;
use crate::document::SentenceSpan;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionCounts {
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
}

impl AddAssign for ConfusionCounts {
    fn add_assign(&mut self, o: Self) {
        self.tp += o.tp;
        self.fp += o.fp;
        self.tn += o.tn;
        self.fn_ += o.fn_;
    }
}

/// Context-flagged gold sentences and how many of them were recovered:
/// a flagged task counts when matched, a flagged non-task when left unmatched.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextCounts {
    pub task_hits: usize,
    pub task_total: usize,
    pub nontask_hits: usize,
    pub nontask_total: usize,
}

impl AddAssign for ContextCounts {
    fn add_assign(&mut self, o: Self) {
        self.task_hits += o.task_hits;
        self.task_total += o.task_total;
        self.nontask_hits += o.nontask_hits;
        self.nontask_total += o.nontask_total;
    }
}

/// tp: edges to gold tasks. fp: edges to gold non-tasks plus unmatched
/// predictions. tn: unmatched gold non-tasks. fn: unmatched gold tasks.
pub fn confusion(m: &MatchResult, _preds: &[SentenceSpan], golds: &[SentenceSpan]) -> ConfusionCounts {
    let mut c = ConfusionCounts::default();
    for e in &m.edges {
        if golds[e.gold_index].label.is_task() {
            c.tp += 1;
        } else {
            c.fp += 1;
        }
    }
    c.fp += m.unmatched_pred.len();
    for &g in &m.unmatched_gold {
        if golds[g].label.is_task() {
            c.fn_ += 1;
        } else {
            c.tn += 1;
        }
    }
    c
}

pub fn context_counts(m: &MatchResult, golds: &[SentenceSpan]) -> ContextCounts {
    let mut c = ContextCounts::default();
    for (j, g) in golds.iter().enumerate().filter(|(_, g)| g.context) {
        let matched = !m.unmatched_gold.contains(&j);
        if g.label.is_task() {
            c.task_total += 1;
            c.task_hits += matched as usize;
        } else {
            c.nontask_total += 1;
            c.nontask_hits += !matched as usize;
        }
    }
    c
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub recall: Option<f64>,
    pub precision: Option<f64>,
    pub f1: Option<f64>,
    pub context_recall: Option<f64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub task: ClassMetrics,
    pub nontask: ClassMetrics,
    pub accuracy: Option<f64>,
}

fn ratio(num: usize, den: usize) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}

fn harmonic(p: Option<f64>, r: Option<f64>) -> Option<f64> {
    let (p, r) = (p?, r?);
    (p + r > 0.0).then(|| 2.0 * p * r / (p + r))
}

fn metrics(tp: usize, fp: usize, fn_: usize, context: Option<f64>) -> ClassMetrics {
    let precision = ratio(tp, tp + fp);
    let recall = ratio(tp, tp + fn_);
    ClassMetrics { recall, precision, f1: harmonic(precision, recall), context_recall: context }
}

/// Task metrics come straight from the counts; non-task metrics swap
/// positives and negatives. Undefined ratios are `None`.
pub fn classification_report(c: &ConfusionCounts, ctx: &ContextCounts) -> ClassificationReport {
    ClassificationReport {
        task: metrics(c.tp, c.fp, c.fn_, ratio(ctx.task_hits, ctx.task_total)),
        nontask: metrics(c.tn, c.fn_, c.fp, ratio(ctx.nontask_hits, ctx.nontask_total)),
        accuracy: ratio(c.tp + c.tn, c.tp + c.fp + c.tn + c.fn_),
    }
}
