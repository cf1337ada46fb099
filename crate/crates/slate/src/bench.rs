//! Per-region extraction latency with invocation counting.

use std::collections::BTreeMap;
use std::hint::black_box;
use std::time::Instant;

use serde::Serialize;
use slate_core::tagger::{Extractor, Invocations};
use slate_core::WritingRegion;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct InvocationCounts {
    pub joint: usize,
    pub segmenter: usize,
    pub classifier: usize,
}

impl From<Invocations> for InvocationCounts {
    fn from(i: Invocations) -> Self {
        InvocationCounts { joint: i.joint, segmenter: i.segmenter, classifier: i.classifier }
    }
}

/// Regions grouped by predicted sentence count.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Bucket {
    pub sentences: usize,
    pub regions: usize,
    pub mean_ms: f64,
    pub invocations: InvocationCounts,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModeStats {
    pub mode: &'static str,
    pub runs: usize,
    pub regions: usize,
    /// Mean per-region latency over all timed runs.
    pub mean_ms: f64,
    pub median_ms: f64,
    pub p95_ms: f64,
    /// Mean per-region latency of each run.
    pub run_means_ms: Vec<f64>,
    /// Counted once, over the warm-up pass.
    pub invocations: InvocationCounts,
    pub buckets: Vec<Bucket>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LatencyReport {
    pub joint: Option<ModeStats>,
    pub two_model: Option<ModeStats>,
    /// two_model.mean_ms / joint.mean_ms.
    pub ratio: Option<f64>,
}

impl LatencyReport {
    pub fn new(joint: Option<ModeStats>, two_model: Option<ModeStats>) -> Self {
        let ratio = match (&joint, &two_model) {
            (Some(j), Some(t)) if j.mean_ms > 0.0 => Some(t.mean_ms / j.mean_ms),
            _ => None,
        };
        LatencyReport { joint, two_model, ratio }
    }
}

fn percentile(sorted: &[f64], p: f64) -> f64 {
    if sorted.is_empty() {
        return 0.0;
    }
    let rank = (p * (sorted.len() - 1) as f64).round() as usize;
    sorted[rank.min(sorted.len() - 1)]
}

fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        0.0
    } else {
        xs.iter().sum::<f64>() / xs.len() as f64
    }
}

/// Runs one untimed warm-up pass that also counts invocations, then `runs`
/// timed passes over `regions`. Single-threaded.
pub fn measure(extractor: &dyn Extractor, regions: &[WritingRegion], runs: usize) -> ModeStats {
    measure_groups(extractor, &[regions], runs).pop().expect("one group")
}

/// Like [`measure`] for several region groups at once.
pub fn measure_groups(extractor: &dyn Extractor, groups: &[&[WritingRegion]], runs: usize) -> Vec<ModeStats> {
    measure_all(&[extractor], groups, runs).pop().expect("one extractor")
}

/// Stats indexed by `[extractor][group]`. Each timed pass runs one extractor
/// and alternates between groups region by region; passes alternate between
/// extractors. Drift in machine speed then hits every combination alike
/// without one model evicting the other from cache mid-pass.
pub fn measure_all(extractors: &[&dyn Extractor], groups: &[&[WritingRegion]], runs: usize) -> Vec<Vec<ModeStats>> {
    let runs = runs.max(1);
    let warm: Vec<Vec<Vec<(usize, Invocations)>>> = extractors
        .iter()
        .map(|ex| {
            groups
                .iter()
                .map(|regions| {
                    regions
                        .iter()
                        .map(|r| {
                            let mut calls = Invocations::default();
                            let spans = ex.extract(r, &mut calls);
                            (spans.len(), calls)
                        })
                        .collect()
                })
                .collect()
        })
        .collect();

    let mut samples: Vec<Vec<Vec<Vec<f64>>>> = extractors
        .iter()
        .map(|_| groups.iter().map(|g| vec![Vec::with_capacity(runs); g.len()]).collect())
        .collect();
    let longest = groups.iter().map(|g| g.len()).max().unwrap_or(0);
    for _ in 0..runs {
        for (ex, ex_samples) in extractors.iter().zip(samples.iter_mut()) {
            for i in 0..longest {
                for (regions, group_samples) in groups.iter().zip(ex_samples.iter_mut()) {
                    let Some(r) = regions.get(i) else { continue };
                    let mut scratch = Invocations::default();
                    let t = Instant::now();
                    black_box(ex.extract(black_box(r), &mut scratch));
                    group_samples[i].push(t.elapsed().as_secs_f64() * 1e3);
                }
            }
        }
    }

    extractors
        .iter()
        .zip(warm.iter().zip(samples))
        .map(|(ex, (w, s))| w.iter().zip(s).map(|(w, s)| summarize(ex.name(), runs, w, &s)).collect())
        .collect()
}

/// `samples[region][run]` in milliseconds.
fn summarize(mode: &'static str, runs: usize, warm: &[(usize, Invocations)], samples: &[Vec<f64>]) -> ModeStats {
    let mut total = Invocations::default();
    for (_, calls) in warm {
        total.joint += calls.joint;
        total.segmenter += calls.segmenter;
        total.classifier += calls.classifier;
    }
    let run_means: Vec<f64> =
        (0..runs).map(|run| mean(&samples.iter().map(|s| s[run]).collect::<Vec<_>>())).collect();
    let mut all: Vec<f64> = samples.iter().flatten().copied().collect();
    all.sort_by(f64::total_cmp);

    let mut groups: BTreeMap<usize, (Vec<f64>, Invocations)> = BTreeMap::new();
    for ((sentences, calls), s) in warm.iter().zip(samples) {
        let g = groups.entry(*sentences).or_default();
        g.0.push(mean(s));
        g.1.joint += calls.joint;
        g.1.segmenter += calls.segmenter;
        g.1.classifier += calls.classifier;
    }
    let buckets = groups
        .into_iter()
        .map(|(sentences, (ms, calls))| Bucket { sentences, regions: ms.len(), mean_ms: mean(&ms), invocations: calls.into() })
        .collect();

    ModeStats {
        mode,
        runs,
        regions: samples.len(),
        mean_ms: mean(&run_means),
        median_ms: percentile(&all, 0.5),
        p95_ms: percentile(&all, 0.95),
        run_means_ms: run_means,
        invocations: total.into(),
        buckets,
    }
}
