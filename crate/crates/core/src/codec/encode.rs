use alloc::vec;
use alloc::vec::Vec;

use super::{CodecError, RenderedToken};
use crate::document::WritingRegion;
use crate::label::{Label, Scheme, TokenLabelSequence, WordLabelSequence};

/// Encodes the region's gold sentences as word labels under `scheme`.
pub fn encode_word_labels(
    region: &WritingRegion,
    scheme: Scheme,
) -> Result<WordLabelSequence, CodecError> {
    if region.gold_sentences.is_empty() {
        return Err(CodecError::MissingGold(region.region_id.clone()));
    }
    let fill = match scheme {
        Scheme::SlateBio => Label::O,
        _ => Label::I,
    };
    let mut labels = vec![fill; region.words.len()];
    for span in &region.gold_sentences {
        let (first, rest) = match scheme {
            Scheme::SentenceBi => (Label::B, Label::I),
            Scheme::SlateBio if span.label.is_task() => (Label::B, Label::I),
            Scheme::SlateBio => (Label::O, Label::O),
            Scheme::SlateNti if span.label.is_task() => (Label::T, Label::I),
            Scheme::SlateNti => (Label::N, Label::I),
        };
        if span.end > labels.len() || span.start >= span.end {
            return Err(CodecError::LengthMismatch { labels: span.end, words: labels.len() });
        }
        labels[span.start] = first;
        for l in &mut labels[span.start + 1..span.end] {
            *l = rest;
        }
    }
    WordLabelSequence::new(scheme, labels)
}

/// Spreads word labels over rendered tokens. Only a word's first piece keeps a
/// beginning label; later pieces get `I`. Markers copy the label of the next
/// word's first piece, or the scheme's continuation label at the region end.
pub fn project_to_tokens(
    word_labels: &WordLabelSequence,
    tokens: &[RenderedToken],
) -> Result<TokenLabelSequence, CodecError> {
    let scheme = word_labels.scheme();
    let words = word_labels.labels();
    let mut out = vec![scheme.continuation(); tokens.len()];
    let mut expected_word = 0usize;
    let mut pending_markers: Vec<usize> = Vec::new();
    let mut prev_word: Option<usize> = None;

    for (t, token) in tokens.iter().enumerate() {
        let Some(w) = token.word_index else {
            pending_markers.push(t);
            continue;
        };
        let first_piece = prev_word != Some(w);
        if first_piece {
            if w != expected_word {
                return Err(CodecError::TokenWordMismatch("word pieces out of order"));
            }
            expected_word += 1;
        } else if !pending_markers.is_empty() {
            return Err(CodecError::TokenWordMismatch("marker inside a word"));
        }
        let label = *words.get(w).ok_or(CodecError::LengthMismatch {
            labels: words.len(),
            words: w + 1,
        })?;
        out[t] = if first_piece || !scheme.is_beginning(label) { label } else { Label::I };
        if first_piece {
            for m in pending_markers.drain(..) {
                out[m] = label;
            }
        }
        prev_word = Some(w);
    }
    if expected_word != words.len() {
        return Err(CodecError::LengthMismatch { labels: words.len(), words: expected_word });
    }
    TokenLabelSequence::new(scheme, out)
}
