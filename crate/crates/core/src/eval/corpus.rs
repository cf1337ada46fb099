use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::boundary::{b_tp, boundaries_of, boundary_similarity};
use super::confusion::{classification_report, confusion, context_counts, ClassificationReport, ConfusionCounts, ContextCounts};
use super::matching::{full_matching, prune};
use super::EvalError;
use crate::document::{SentenceSpan, WritingRegion};

/// Per-region evaluation result.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RegionEval {
    pub counts: ConfusionCounts,
    pub context: ContextCounts,
    /// `None` unless the prediction is a full segmentation of the region.
    pub b: Option<f64>,
    /// `None` without true positives.
    pub b_tp: Option<f64>,
}

fn is_partition(spans: &[SentenceSpan], n: usize) -> bool {
    let mut sorted: Vec<_> = spans.iter().map(|s| (s.start, s.end)).collect();
    sorted.sort_unstable();
    let mut next = 0;
    for (start, end) in sorted {
        if start != next || end <= start {
            return false;
        }
        next = end;
    }
    next == n && n > 0
}

/// Evaluates one region. `predicted` holds every predicted sentence; the
/// task spans among them enter the matching, and B is computed when they
/// partition the region.
pub fn evaluate_region(region: &WritingRegion, predicted: &[SentenceSpan], threshold: f64, window: usize) -> RegionEval {
    let n = region.words.len();
    let golds = &region.gold_sentences;
    let tasks: Vec<SentenceSpan> = predicted.iter().filter(|s| s.label.is_task()).copied().collect();
    let m = prune(&full_matching(&tasks, golds), threshold);
    let b = if is_partition(predicted, n) {
        match (boundaries_of(predicted, n), boundaries_of(golds, n)) {
            (Ok(p), Ok(g)) => boundary_similarity(&p, &g, window).ok(),
            _ => None,
        }
    } else {
        None
    };
    RegionEval {
        counts: confusion(&m, &tasks, golds),
        context: context_counts(&m, golds),
        b,
        b_tp: b_tp(&m, &tasks, golds, n, window),
    }
}

/// Corpus-level result: micro-summed counts, unweighted per-region means for
/// the boundary metrics.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CorpusEvaluation {
    pub counts: ConfusionCounts,
    pub context: ContextCounts,
    pub report: ClassificationReport,
    /// Defined only when every region has a full predicted segmentation.
    pub b: Option<f64>,
    /// Mean over regions where it is defined.
    pub b_tp: Option<f64>,
    pub regions: usize,
}

/// Summed in sorted order so the result does not depend on region order.
fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let mut v: Vec<f64> = values.collect();
    v.sort_by(f64::total_cmp);
    (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64)
}

impl CorpusEvaluation {
    /// Reduces per-region results in the order given.
    pub fn from_regions(regions: &[RegionEval]) -> Self {
        let mut counts = ConfusionCounts::default();
        let mut context = ContextCounts::default();
        for r in regions {
            counts += r.counts;
            context += r.context;
        }
        let b = if !regions.is_empty() && regions.iter().all(|r| r.b.is_some()) {
            mean(regions.iter().filter_map(|r| r.b))
        } else {
            None
        };
        CorpusEvaluation {
            counts,
            context,
            report: classification_report(&counts, &context),
            b,
            b_tp: mean(regions.iter().filter_map(|r| r.b_tp)),
            regions: regions.len(),
        }
    }
}

/// Evaluates predictions keyed by region id against the gold corpus. Gold
/// regions without a prediction count as having no predicted sentences.
pub fn corpus_evaluate(
    gold: &[WritingRegion],
    predictions: &BTreeMap<String, Vec<SentenceSpan>>,
    threshold: f64,
    window: usize,
) -> Result<CorpusEvaluation, EvalError> {
    if let Some(id) = predictions.keys().find(|id| !gold.iter().any(|r| &r.region_id == *id)) {
        return Err(EvalError::UnknownRegion(id.clone()));
    }
    let per_region: Vec<RegionEval> = gold
        .iter()
        .map(|r| {
            let pred = predictions.get(&r.region_id).map(Vec::as_slice).unwrap_or(&[]);
            evaluate_region(r, pred, threshold, window)
        })
        .collect();
    Ok(CorpusEvaluation::from_regions(&per_region))
}
