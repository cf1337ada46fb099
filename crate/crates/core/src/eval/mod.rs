//! Evaluation: IOU bipartite matching with classification metrics, and
//! boundary-edit-distance segmentation metrics.

pub mod boundary;
pub mod confusion;
pub mod corpus;
pub mod matching;

use alloc::string::String;

pub use boundary::{
    b_tp, boundaries_of, boundary_edit_distance, boundary_similarity, BoundarySet, EditSummary,
    DEFAULT_TRANSPOSITION_WINDOW,
};
pub use confusion::{
    classification_report, confusion, context_counts, ClassMetrics, ClassificationReport,
    ConfusionCounts, ContextCounts,
};
pub use corpus::{corpus_evaluate, evaluate_region, CorpusEvaluation, RegionEval};
pub use matching::{full_matching, iou, iou_counts, prune, MatchEdge, MatchResult, DEFAULT_THRESHOLD};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("spans [{0},{1}) and [{2},{3}) overlap")]
    OverlappingSpans(usize, usize, usize, usize),
    #[error("span [{start},{end}) outside region of {len} words")]
    SpanOutOfRange { start: usize, end: usize, len: usize },
    #[error("boundary sets cover different word counts ({0} vs {1})")]
    WordCountMismatch(usize, usize),
    #[error("transposition window must be at least 1")]
    InvalidWindow,
    #[error("prediction for unknown region {0}")]
    UnknownRegion(String),
}
