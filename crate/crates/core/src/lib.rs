//! Joint sentence segmentation and task-sentence extraction for recognized
//! ink text, framed as sequence labeling.
//!
//! The crate is `no_std` and only needs `alloc`. It contains:
//!
//! - [`document`]: writing regions, layout metadata and sentence spans.
//! - [`label`] and [`codec`]: the Sentence-BI, BIO and NTI labeling schemes,
//!   layout-token rendering, token-to-word aggregation and span decoding.
//! - [`tagger`]: an averaged structured perceptron tagger for the joint
//!   single-pass approach and the two-model baseline (BI segmenter followed by
//!   a per-sentence classifier).
//! - [`eval`]: IOU bipartite matching, confusion counts and classification
//!   metrics, boundary edit distance and boundary similarity.
//!
//! File formats, the CLI and wall-clock benchmarking live in the `slate`
//! crate.
#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

pub mod codec;
pub mod document;
pub mod eval;
pub mod label;
pub mod tagger;

pub use document::{
    validate_region, LayoutMetadata, SentenceLabel, SentenceSpan, Violation, Word, WritingRegion,
};
pub use label::{Label, Scheme, TokenLabelSequence, WordLabelSequence};
