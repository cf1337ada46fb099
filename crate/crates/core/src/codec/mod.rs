//! Labeling-scheme codec: layout rendering, gold encoding, token projection,
//! token-to-word aggregation and span decoding.

mod aggregate;
mod decode;
mod encode;
mod render;

use alloc::string::String;

use crate::label::{Label, Scheme};

pub use aggregate::{aggregate, aggregate_bi, aggregate_bio, aggregate_nti, aggregate_tokens};
pub use decode::{decode, nti_to_bio, Decoded, Repair};
pub use encode::{encode_word_labels, project_to_tokens};
pub use render::{
    render, render_with_layout, ChunkSplitter, IdentitySplitter, RenderedToken, Splitter, TokenKind,
    BULLET_MARKER, LINE_BREAK_MARKER,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CodecError {
    #[error("empty tokenization for word {word}")]
    EmptyTokenization { word: usize },
    #[error("label {label} is not in the {scheme} alphabet")]
    OutsideAlphabet { label: Label, scheme: Scheme },
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("unknown scheme {0:?}")]
    UnknownScheme(String),
    #[error("empty label list for word {word}")]
    EmptyLabelList { word: usize },
    #[error("region {0} has no gold annotations")]
    MissingGold(String),
    #[error("token/word mismatch: {0}")]
    TokenWordMismatch(&'static str),
    #[error("length mismatch: {labels} labels for {words} words")]
    LengthMismatch { labels: usize, words: usize },
}
