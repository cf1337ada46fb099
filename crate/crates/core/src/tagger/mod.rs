//! Trainable taggers: the joint single-pass tagger and the two-model
//! baseline (Sentence-BI segmenter plus per-sentence classifier).
//!
//! Both learners are averaged perceptrons. The joint tagger and the
//! segmenter are first-order structured perceptrons decoded with Viterbi
//! under the scheme grammar, so their output never needs decode repair.

mod classifier;
mod extract;
mod features;
mod perceptron;
mod window;

use serde::{Deserialize, Serialize};

use crate::label::Scheme;

pub use classifier::{sentences_from_regions, train_sentence_classifier, LabeledSentence, SentenceClassifierModel};
pub use extract::{extract_joint, extract_two_model, Extractor, Invocations, JointExtractor, TwoModelExtractor};
pub use features::{sentence_features, word_features};
pub use perceptron::{predict_labels, train_joint, TaggerModel};
pub use window::{window_ranges, MAX_WINDOW_WORDS};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub epochs: usize,
    pub seed: u64,
    pub averaging: bool,
    /// Bullet / line-break features.
    pub use_layout: bool,
    /// Word-shape features.
    pub use_shape: bool,
    /// Longest prefix/suffix feature, 1..=6.
    pub affix_max_len: usize,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig { epochs: 10, seed: 1, averaging: true, use_layout: true, use_shape: true, affix_max_len: 3 }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<(), TaggerError> {
        if self.epochs == 0 {
            return Err(TaggerError::InvalidConfig("epochs must be at least 1"));
        }
        if !(1..=6).contains(&self.affix_max_len) {
            return Err(TaggerError::InvalidConfig("affix_max_len must be in 1..=6"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TaggerError {
    #[error("empty corpus")]
    EmptyCorpus,
    #[error("invalid config: {0}")]
    InvalidConfig(&'static str),
    #[error("expected a {expected} model, got {found}")]
    WrongScheme { expected: &'static str, found: Scheme },
    #[error("region {0} has no gold annotations")]
    Unannotated(alloc::string::String),
    #[error("malformed model: {0}")]
    MalformedModel(&'static str),
}
