//! Averaged structured perceptron with first-order Viterbi decoding.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::features::word_features;
use super::window::{window_ranges, MAX_WINDOW_WORDS};
use super::{TaggerError, TrainConfig};
use crate::codec::encode_word_labels;
use crate::document::WritingRegion;
use crate::label::{Label, Scheme, WordLabelSequence};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TaggerModel {
    pub scheme: Scheme,
    pub config: TrainConfig,
    /// Per-feature weight vector, indexed like `scheme.alphabet()`.
    pub features: BTreeMap<String, Vec<f64>>,
    /// `transitions[prev][next]`, indexed like `scheme.alphabet()`.
    pub transitions: Vec<Vec<f64>>,
}

impl TaggerModel {
    pub fn validate(&self) -> Result<(), TaggerError> {
        let k = self.scheme.alphabet().len();
        if self.transitions.len() != k || self.transitions.iter().any(|r| r.len() != k) {
            return Err(TaggerError::MalformedModel("transition matrix does not match the scheme alphabet"));
        }
        if self.features.values().any(|v| v.len() != k) {
            return Err(TaggerError::MalformedModel("feature weight vector does not match the scheme alphabet"));
        }
        let finite = |x: &f64| x.is_finite();
        if !self.features.values().flatten().all(finite) || !self.transitions.iter().flatten().all(finite) {
            return Err(TaggerError::MalformedModel("non-finite weight"));
        }
        self.config.validate()
    }

    /// Same weights with layout features switched on or off at prediction time.
    pub fn with_layout(mut self, on: bool) -> Self {
        self.config.use_layout = self.config.use_layout && on;
        self
    }

    fn emissions(&self, region: &WritingRegion, window: &Range<usize>) -> Vec<Vec<f64>> {
        let k = self.scheme.alphabet().len();
        window
            .clone()
            .map(|i| {
                let mut e = vec![0.0; k];
                for f in word_features(region, window, i, &self.config) {
                    if let Some(w) = self.features.get(&f) {
                        for (acc, x) in e.iter_mut().zip(w) {
                            *acc += x;
                        }
                    }
                }
                e
            })
            .collect()
    }

    /// Labels one window (one model invocation).
    pub fn label_window(&self, region: &WritingRegion, window: &Range<usize>) -> Vec<Label> {
        let em = self.emissions(region, window);
        let alphabet = self.scheme.alphabet();
        viterbi(self.scheme, &em, &self.transitions).into_iter().map(|l| alphabet[l]).collect()
    }
}

/// Best label path under the scheme grammar: the first label must be a
/// legal beginning and disallowed transitions are never taken. Ties go to the
/// lower alphabet index.
fn viterbi(scheme: Scheme, emissions: &[Vec<f64>], trans: &[Vec<f64>]) -> Vec<usize> {
    let alphabet = scheme.alphabet();
    let k = alphabet.len();
    let len = emissions.len();
    if len == 0 {
        return Vec::new();
    }
    let neg = f64::NEG_INFINITY;
    let mut score = vec![vec![neg; k]; len];
    let mut back = vec![vec![0usize; k]; len];
    for l in 0..k {
        if scheme.is_initial(alphabet[l]) {
            score[0][l] = emissions[0][l];
        }
    }
    for i in 1..len {
        for cur in 0..k {
            let mut best = neg;
            let mut arg = 0;
            for prev in 0..k {
                if score[i - 1][prev] == neg || !scheme.allows(alphabet[prev], alphabet[cur]) {
                    continue;
                }
                let s = score[i - 1][prev] + trans[prev][cur];
                if s > best {
                    best = s;
                    arg = prev;
                }
            }
            if best > neg {
                score[i][cur] = best + emissions[i][cur];
                back[i][cur] = arg;
            }
        }
    }
    let mut last = 0;
    for l in 1..k {
        if score[len - 1][l] > score[len - 1][last] {
            last = l;
        }
    }
    let mut path = vec![0usize; len];
    path[len - 1] = last;
    for i in (1..len).rev() {
        path[i - 1] = back[i][path[i]];
    }
    path
}

struct Instance {
    features: Vec<Vec<usize>>,
    gold: Vec<usize>,
}

/// Weights with lazily accumulated running totals for averaging.
struct Averaged {
    w: Vec<f64>,
    total: Vec<f64>,
    stamp: Vec<usize>,
}

impl Averaged {
    fn new(len: usize) -> Self {
        Averaged { w: vec![0.0; len], total: vec![0.0; len], stamp: vec![0; len] }
    }

    fn add(&mut self, idx: usize, step: usize, delta: f64) {
        self.total[idx] += (step - self.stamp[idx]) as f64 * self.w[idx];
        self.stamp[idx] = step;
        self.w[idx] += delta;
    }

    fn finish(mut self, step: usize, averaging: bool) -> Vec<f64> {
        if !averaging || step == 0 {
            return self.w;
        }
        for idx in 0..self.w.len() {
            self.total[idx] += (step - self.stamp[idx]) as f64 * self.w[idx];
        }
        self.total.iter().map(|t| t / step as f64).collect()
    }
}

/// Gold labels for a window. A window that starts inside a sentence gets a
/// beginning label there, since windows are decoded independently.
fn window_gold(scheme: Scheme, region: &WritingRegion, gold: &[Label], window: &Range<usize>) -> Vec<usize> {
    let mut labels = gold[window.clone()].to_vec();
    if let Some(first) = labels.first_mut() {
        if !scheme.is_initial(*first) {
            let in_task = region
                .gold_sentences
                .iter()
                .find(|s| s.start <= window.start && window.start < s.end)
                .is_some_and(|s| s.label.is_task());
            *first = match scheme {
                Scheme::SentenceBi | Scheme::SlateBio => Label::B,
                Scheme::SlateNti if in_task => Label::T,
                Scheme::SlateNti => Label::N,
            };
        }
    }
    labels.into_iter().map(|l| scheme.index_of(l).expect("encoded label in alphabet")).collect()
}

/// Trains a tagger for `scheme` on annotated regions. Deterministic given the
/// corpus order and `cfg.seed`.
pub fn train_joint(corpus: &[WritingRegion], scheme: Scheme, cfg: &TrainConfig) -> Result<TaggerModel, TaggerError> {
    cfg.validate()?;
    if corpus.is_empty() {
        return Err(TaggerError::EmptyCorpus);
    }
    let k = scheme.alphabet().len();
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    let mut instances = Vec::new();
    for region in corpus {
        let gold = encode_word_labels(region, scheme).map_err(|_| TaggerError::Unannotated(region.region_id.clone()))?;
        for window in window_ranges(region, MAX_WINDOW_WORDS) {
            let features = window
                .clone()
                .map(|i| {
                    word_features(region, &window, i, cfg)
                        .into_iter()
                        .map(|f| {
                            let next = index.len();
                            *index.entry(f).or_insert(next)
                        })
                        .collect()
                })
                .collect();
            instances.push(Instance { features, gold: window_gold(scheme, region, gold.labels(), &window) });
        }
    }

    let mut weights = Averaged::new(index.len() * k);
    let mut trans = Averaged::new(k * k);
    let mut order: Vec<usize> = (0..instances.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut step = 0usize;
    for _ in 0..cfg.epochs {
        order.shuffle(&mut rng);
        for &n in &order {
            let inst = &instances[n];
            let em: Vec<Vec<f64>> = inst
                .features
                .iter()
                .map(|fs| {
                    let mut e = vec![0.0; k];
                    for &f in fs {
                        for (l, acc) in e.iter_mut().enumerate() {
                            *acc += weights.w[f * k + l];
                        }
                    }
                    e
                })
                .collect();
            let t: Vec<Vec<f64>> = (0..k).map(|p| trans.w[p * k..(p + 1) * k].to_vec()).collect();
            let pred = viterbi(scheme, &em, &t);
            if pred != inst.gold {
                for (i, (&g, &p)) in inst.gold.iter().zip(&pred).enumerate() {
                    if g != p {
                        for &f in &inst.features[i] {
                            weights.add(f * k + g, step, 1.0);
                            weights.add(f * k + p, step, -1.0);
                        }
                    }
                    if i > 0 {
                        let (gp, pp) = (inst.gold[i - 1], pred[i - 1]);
                        if (gp, g) != (pp, p) {
                            trans.add(gp * k + g, step, 1.0);
                            trans.add(pp * k + p, step, -1.0);
                        }
                    }
                }
            }
            step += 1;
        }
    }

    let w = weights.finish(step, cfg.averaging);
    let t = trans.finish(step, cfg.averaging);
    let features = index
        .into_iter()
        .filter_map(|(name, id)| {
            let v = w[id * k..(id + 1) * k].to_vec();
            v.iter().any(|&x| x != 0.0).then_some((name, v))
        })
        .collect();
    let transitions = (0..k).map(|p| t[p * k..(p + 1) * k].to_vec()).collect();
    Ok(TaggerModel { scheme, config: cfg.clone(), features, transitions })
}

/// Word labels for a whole region, window by window.
pub fn predict_labels(model: &TaggerModel, region: &WritingRegion) -> WordLabelSequence {
    let mut labels = Vec::with_capacity(region.words.len());
    for window in window_ranges(region, MAX_WINDOW_WORDS) {
        labels.extend(model.label_window(region, &window));
    }
    WordLabelSequence::new(model.scheme, labels).expect("viterbi emits alphabet labels")
}
