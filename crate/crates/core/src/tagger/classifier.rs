//! Averaged binary perceptron for task / non-task sentence classification.
//! Each sentence is classified in isolation, with no neighboring context.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::features::sentence_features;
use super::{TaggerError, TrainConfig};
use crate::document::WritingRegion;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledSentence {
    pub words: Vec<String>,
    pub is_task: bool,
}

/// Gold sentences of annotated regions, in corpus order.
pub fn sentences_from_regions(regions: &[WritingRegion]) -> Vec<LabeledSentence> {
    regions
        .iter()
        .flat_map(|r| {
            r.gold_sentences.iter().map(move |s| LabeledSentence {
                words: r.words[s.start..s.end].iter().map(|w| w.text.clone()).collect(),
                is_task: s.label.is_task(),
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SentenceClassifierModel {
    pub config: TrainConfig,
    pub weights: BTreeMap<String, f64>,
    pub bias: f64,
}

impl SentenceClassifierModel {
    pub fn score<S: AsRef<str>>(&self, words: &[S]) -> f64 {
        sentence_features(words, &self.config)
            .iter()
            .filter_map(|f| self.weights.get(f))
            .fold(self.bias, |acc, w| acc + w)
    }

    /// One classifier invocation.
    pub fn is_task<S: AsRef<str>>(&self, words: &[S]) -> bool {
        self.score(words) > 0.0
    }

    pub fn validate(&self) -> Result<(), TaggerError> {
        if !self.bias.is_finite() || !self.weights.values().all(|w| w.is_finite()) {
            return Err(TaggerError::MalformedModel("non-finite weight"));
        }
        self.config.validate()
    }
}

pub fn train_sentence_classifier(
    sentences: &[LabeledSentence],
    cfg: &TrainConfig,
) -> Result<SentenceClassifierModel, TaggerError> {
    cfg.validate()?;
    if sentences.is_empty() {
        return Err(TaggerError::EmptyCorpus);
    }
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    let data: Vec<(Vec<usize>, f64)> = sentences
        .iter()
        .map(|s| {
            let ids = sentence_features(&s.words, cfg)
                .into_iter()
                .map(|f| {
                    let next = index.len();
                    *index.entry(f).or_insert(next)
                })
                .collect();
            (ids, if s.is_task { 1.0 } else { -1.0 })
        })
        .collect();

    // Slot `len` holds the bias.
    let dim = index.len() + 1;
    let bias = index.len();
    let mut w = alloc::vec![0.0f64; dim];
    let mut total = alloc::vec![0.0f64; dim];
    let mut stamp = alloc::vec![0usize; dim];
    let mut order: Vec<usize> = (0..data.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut step = 0usize;
    for _ in 0..cfg.epochs {
        order.shuffle(&mut rng);
        for &n in &order {
            let (ids, y) = &data[n];
            let score = ids.iter().fold(w[bias], |acc, &f| acc + w[f]);
            // Ties count as errors so that training moves off zero.
            if score * y <= 0.0 {
                for &f in ids.iter().chain(core::iter::once(&bias)) {
                    total[f] += (step - stamp[f]) as f64 * w[f];
                    stamp[f] = step;
                    w[f] += y;
                }
            }
            step += 1;
        }
    }
    let final_w: Vec<f64> = if cfg.averaging && step > 0 {
        (0..dim).map(|f| (total[f] + (step - stamp[f]) as f64 * w[f]) / step as f64).collect()
    } else {
        w
    };
    let weights = index
        .into_iter()
        .filter(|&(_, id)| final_w[id] != 0.0)
        .map(|(name, id)| (name, final_w[id]))
        .collect();
    Ok(SentenceClassifierModel { config: cfg.clone(), weights, bias: final_w[bias] })
}
