//! Span extraction with the joint tagger or the two-model baseline.

use alloc::vec::Vec;

use super::perceptron::TaggerModel;
use super::window::{window_ranges, MAX_WINDOW_WORDS};
use super::{SentenceClassifierModel, TaggerError};
use crate::codec::decode;
use crate::document::{SentenceLabel, SentenceSpan, WritingRegion};
use crate::label::{Scheme, WordLabelSequence};

/// Model invocation counters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Invocations {
    /// Joint tagger calls (one per window).
    pub joint: usize,
    /// Segmenter calls (one per window).
    pub segmenter: usize,
    /// Classifier calls (one per predicted sentence).
    pub classifier: usize,
}

impl Invocations {
    pub fn total(&self) -> usize {
        self.joint + self.segmenter + self.classifier
    }
}

/// Region in, predicted sentences out.
pub trait Extractor {
    fn name(&self) -> &'static str;

    fn extract(&self, region: &WritingRegion, calls: &mut Invocations) -> Vec<SentenceSpan>;
}

fn tag_windows(model: &TaggerModel, region: &WritingRegion) -> (WordLabelSequence, usize) {
    let windows = window_ranges(region, MAX_WINDOW_WORDS);
    let mut labels = Vec::with_capacity(region.words.len());
    for w in &windows {
        labels.extend(model.label_window(region, w));
    }
    (WordLabelSequence::new(model.scheme, labels).expect("alphabet labels"), windows.len())
}

#[derive(Clone, Copy, Debug)]
pub struct JointExtractor<'a> {
    model: &'a TaggerModel,
}

impl<'a> JointExtractor<'a> {
    pub fn new(model: &'a TaggerModel) -> Result<Self, TaggerError> {
        match model.scheme {
            Scheme::SlateBio | Scheme::SlateNti => Ok(JointExtractor { model }),
            found => Err(TaggerError::WrongScheme { expected: "bio or nti", found }),
        }
    }
}

impl Extractor for JointExtractor<'_> {
    fn name(&self) -> &'static str {
        "joint"
    }

    fn extract(&self, region: &WritingRegion, calls: &mut Invocations) -> Vec<SentenceSpan> {
        let (labels, windows) = tag_windows(self.model, region);
        calls.joint += windows;
        decode(&labels).spans
    }
}

#[derive(Clone, Copy, Debug)]
pub struct TwoModelExtractor<'a> {
    segmenter: &'a TaggerModel,
    classifier: &'a SentenceClassifierModel,
}

impl<'a> TwoModelExtractor<'a> {
    pub fn new(segmenter: &'a TaggerModel, classifier: &'a SentenceClassifierModel) -> Result<Self, TaggerError> {
        if segmenter.scheme != Scheme::SentenceBi {
            return Err(TaggerError::WrongScheme { expected: "bi", found: segmenter.scheme });
        }
        Ok(TwoModelExtractor { segmenter, classifier })
    }
}

impl Extractor for TwoModelExtractor<'_> {
    fn name(&self) -> &'static str {
        "two-model"
    }

    fn extract(&self, region: &WritingRegion, calls: &mut Invocations) -> Vec<SentenceSpan> {
        let (labels, windows) = tag_windows(self.segmenter, region);
        calls.segmenter += windows;
        let mut spans = decode(&labels).spans;
        for span in &mut spans {
            let words: Vec<&str> = region.words[span.start..span.end].iter().map(|w| w.text.as_str()).collect();
            calls.classifier += 1;
            span.label = if self.classifier.is_task(&words) { SentenceLabel::Task } else { SentenceLabel::NonTask };
        }
        spans
    }
}

/// Predicted sentences from the joint tagger: a partition for NTI, task
/// spans only for BIO.
pub fn extract_joint(model: &TaggerModel, region: &WritingRegion) -> Result<Vec<SentenceSpan>, TaggerError> {
    Ok(JointExtractor::new(model)?.extract(region, &mut Invocations::default()))
}

/// Segment with the BI tagger, then classify each sentence on its own.
pub fn extract_two_model(
    segmenter: &TaggerModel,
    classifier: &SentenceClassifierModel,
    region: &WritingRegion,
) -> Result<Vec<SentenceSpan>, TaggerError> {
    Ok(TwoModelExtractor::new(segmenter, classifier)?.extract(region, &mut Invocations::default()))
}
