use alloc::vec::Vec;

use crate::document::{SentenceLabel, SentenceSpan};
use crate::label::{Label, Scheme, WordLabelSequence};

/// A label rewritten by decode to keep the sequence grammatical.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Repair {
    pub index: usize,
    pub from: Label,
    pub to: Label,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Decoded {
    pub spans: Vec<SentenceSpan>,
    /// Non-empty when the input was ungrammatical.
    pub repairs: Vec<Repair>,
}

impl Decoded {
    pub fn task_spans(&self) -> impl Iterator<Item = &SentenceSpan> + '_ {
        self.spans.iter().filter(|s| s.label.is_task())
    }
}

/// Returns the labels with repairs applied:
/// a leading `I` becomes `B` (BI) or `N` (NTI); in BIO an `I` that does not
/// follow `B` or `I` becomes `O`.
fn repaired(seq: &WordLabelSequence) -> (Vec<Label>, Vec<Repair>) {
    let scheme = seq.scheme();
    let mut labels = seq.labels().to_vec();
    let mut repairs = Vec::new();
    for i in 0..labels.len() {
        let fix = match (scheme, labels[i]) {
            (Scheme::SentenceBi, Label::I) if i == 0 => Some(Label::B),
            (Scheme::SlateNti, Label::I) if i == 0 => Some(Label::N),
            (Scheme::SlateBio, Label::I) if i == 0 || labels[i - 1] == Label::O => Some(Label::O),
            _ => None,
        };
        if let Some(to) = fix {
            repairs.push(Repair { index: i, from: labels[i], to });
            labels[i] = to;
        }
    }
    (labels, repairs)
}

/// Decodes word labels into spans. BI yields unlabeled sentences, BIO yields
/// task spans only, NTI yields a labeled partition of the region.
pub fn decode(seq: &WordLabelSequence) -> Decoded {
    let scheme = seq.scheme();
    let (labels, repairs) = repaired(seq);
    let mut spans = Vec::new();
    let mut open: Option<(usize, SentenceLabel)> = None;
    for (i, &label) in labels.iter().enumerate() {
        let starts = match (scheme, label) {
            (Scheme::SentenceBi, Label::B) => Some(Some(SentenceLabel::Unlabeled)),
            (Scheme::SlateBio, Label::B) | (Scheme::SlateNti, Label::T) => Some(Some(SentenceLabel::Task)),
            (Scheme::SlateNti, Label::N) => Some(Some(SentenceLabel::NonTask)),
            (Scheme::SlateBio, Label::O) => Some(None),
            _ => None,
        };
        if let Some(next) = starts {
            if let Some((start, l)) = open.take() {
                spans.push(SentenceSpan::new(start, i, l));
            }
            open = next.map(|l| (i, l));
        }
    }
    if let Some((start, l)) = open {
        spans.push(SentenceSpan::new(start, labels.len(), l));
    }
    Decoded { spans, repairs }
}

/// Maps NTI word labels onto BIO: task runs keep `B I*`, non-task runs become
/// `O`. Decoding the result gives the same task spans as decoding the input.
pub fn nti_to_bio(seq: &WordLabelSequence) -> WordLabelSequence {
    debug_assert_eq!(seq.scheme(), Scheme::SlateNti);
    let (labels, _) = repaired(seq);
    let mut in_task = false;
    let out = labels
        .iter()
        .map(|&l| match l {
            Label::T => {
                in_task = true;
                Label::B
            }
            Label::N => {
                in_task = false;
                Label::O
            }
            _ if in_task => Label::I,
            _ => Label::O,
        })
        .collect();
    WordLabelSequence::new(Scheme::SlateBio, out).expect("B/I/O are in the BIO alphabet")
}
