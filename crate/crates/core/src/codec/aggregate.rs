//! Token-to-word label aggregation, one rule per scheme.

use alloc::vec::Vec;

use super::{CodecError, RenderedToken};
use crate::label::{Label, Scheme, TokenLabelSequence, WordLabelSequence};

fn check(scheme: Scheme, labels: &[Label]) -> Result<(), CodecError> {
    if labels.is_empty() {
        return Err(CodecError::EmptyLabelList { word: 0 });
    }
    match labels.iter().find(|&&l| !scheme.contains(l)) {
        Some(&label) => Err(CodecError::OutsideAlphabet { label, scheme }),
        None => Ok(()),
    }
}

fn count(labels: &[Label], which: Label) -> usize {
    labels.iter().filter(|&&l| l == which).count()
}

/// `B` if any piece says `B`, else `I`.
pub fn aggregate_bi(labels: &[Label]) -> Result<Label, CodecError> {
    check(Scheme::SentenceBi, labels)?;
    Ok(if labels.contains(&Label::B) { Label::B } else { Label::I })
}

/// `B` if any piece says `B`, else the most frequent label. `I` wins a tie
/// with `O`.
pub fn aggregate_bio(labels: &[Label]) -> Result<Label, CodecError> {
    check(Scheme::SlateBio, labels)?;
    if labels.contains(&Label::B) {
        return Ok(Label::B);
    }
    Ok(if count(labels, Label::I) >= count(labels, Label::O) { Label::I } else { Label::O })
}

/// If `N` or `T` is present: `T` when it strictly outnumbers `N`, otherwise
/// `N`. With neither present, `I`.
pub fn aggregate_nti(labels: &[Label]) -> Result<Label, CodecError> {
    check(Scheme::SlateNti, labels)?;
    let t = count(labels, Label::T);
    let n = count(labels, Label::N);
    Ok(if t + n == 0 {
        Label::I
    } else if t > n {
        Label::T
    } else {
        Label::N
    })
}

pub fn aggregate(scheme: Scheme, labels: &[Label]) -> Result<Label, CodecError> {
    match scheme {
        Scheme::SentenceBi => aggregate_bi(labels),
        Scheme::SlateBio => aggregate_bio(labels),
        Scheme::SlateNti => aggregate_nti(labels),
    }
}

/// Reduces token labels to one label per word. Marker tokens are ignored.
pub fn aggregate_tokens(
    token_labels: &TokenLabelSequence,
    tokens: &[RenderedToken],
) -> Result<WordLabelSequence, CodecError> {
    let labels = token_labels.labels();
    if labels.len() != tokens.len() {
        return Err(CodecError::TokenWordMismatch("label count differs from token count"));
    }
    let scheme = token_labels.scheme();
    let mut out = Vec::new();
    let mut group: Vec<Label> = Vec::new();
    let mut current: Option<usize> = None;
    for (token, &label) in tokens.iter().zip(labels) {
        let Some(w) = token.word_index else { continue };
        if current != Some(w) {
            if let Some(prev) = current {
                if w != prev + 1 {
                    return Err(CodecError::TokenWordMismatch("word pieces out of order"));
                }
                out.push(aggregate(scheme, &group).map_err(|e| at_word(e, prev))?);
                group.clear();
            } else if w != 0 {
                return Err(CodecError::TokenWordMismatch("first word piece is not word 0"));
            }
            current = Some(w);
        }
        group.push(label);
    }
    if let Some(last) = current {
        out.push(aggregate(scheme, &group).map_err(|e| at_word(e, last))?);
    }
    WordLabelSequence::new(scheme, out)
}

fn at_word(err: CodecError, word: usize) -> CodecError {
    match err {
        CodecError::EmptyLabelList { .. } => CodecError::EmptyLabelList { word },
        other => other,
    }
}
