//! Evaluation over a corpus and its JSON report.

use std::collections::BTreeMap;
use std::num::NonZeroUsize;
use std::thread;

use serde::Serialize;
use slate_core::eval::{evaluate_region, ClassMetrics, ConfusionCounts, CorpusEvaluation, EvalError, RegionEval};
use slate_core::{SentenceSpan, WritingRegion};

/// Evaluates `predictions` against `gold` on up to `workers` threads. The
/// result does not depend on the worker count.
pub fn evaluate(
    gold: &[WritingRegion],
    predictions: &BTreeMap<String, Vec<SentenceSpan>>,
    threshold: f64,
    window: usize,
    workers: NonZeroUsize,
) -> Result<CorpusEvaluation, EvalError> {
    if let Some(id) = predictions.keys().find(|id| !gold.iter().any(|r| &r.region_id == *id)) {
        return Err(EvalError::UnknownRegion(id.clone()));
    }
    let one = |r: &WritingRegion| {
        let pred = predictions.get(&r.region_id).map(Vec::as_slice).unwrap_or(&[]);
        evaluate_region(r, pred, threshold, window)
    };
    let chunk = gold.len().div_ceil(workers.get()).max(1);
    let per_region: Vec<RegionEval> = if workers.get() == 1 {
        gold.iter().map(one).collect()
    } else {
        thread::scope(|s| {
            let handles: Vec<_> =
                gold.chunks(chunk).map(|c| s.spawn(move || c.iter().map(one).collect::<Vec<_>>())).collect();
            handles.into_iter().flat_map(|h| h.join().expect("eval worker panicked")).collect()
        })
    };
    Ok(CorpusEvaluation::from_regions(&per_region))
}

fn round4(x: Option<f64>) -> Option<f64> {
    x.map(|v| (v * 1e4).round() / 1e4)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MetricsJson {
    pub rec: Option<f64>,
    pub prec: Option<f64>,
    pub f1: Option<f64>,
    pub context_rec: Option<f64>,
}

impl From<&ClassMetrics> for MetricsJson {
    fn from(m: &ClassMetrics) -> Self {
        MetricsJson {
            rec: round4(m.recall),
            prec: round4(m.precision),
            f1: round4(m.f1),
            context_rec: round4(m.context_recall),
        }
    }
}

/// The report printed by `slate eval`. Numbers carry 4 decimals; undefined
/// values are null.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EvalReport {
    pub regions: usize,
    pub counts: ConfusionCounts,
    pub task: MetricsJson,
    pub nontask: MetricsJson,
    pub accuracy: Option<f64>,
    pub b: Option<f64>,
    pub b_tp: Option<f64>,
}

impl From<&CorpusEvaluation> for EvalReport {
    fn from(e: &CorpusEvaluation) -> Self {
        EvalReport {
            regions: e.regions,
            counts: e.counts,
            task: (&e.report.task).into(),
            nontask: (&e.report.nontask).into(),
            accuracy: round4(e.report.accuracy),
            b: round4(e.b),
            b_tp: round4(e.b_tp),
        }
    }
}

impl EvalReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
