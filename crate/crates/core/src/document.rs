//! In-memory representation of a recognized-ink writing region.
//!
//! Words are positioned occurrences: two words with the same text at
//! different indices are distinct. Boundary positions elsewhere in the crate
//! are between words, numbered `0..=n` where position `k` sits before word `k`.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Word {
    pub text: String,
    pub index: usize,
}

/// Layout signals produced by ink layout analysis. Both sets hold word
/// indices; they are independent of each other.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayoutMetadata {
    /// A new document line starts at these words.
    pub line_break_before: BTreeSet<usize>,
    /// A bullet precedes these words.
    pub bullet_before: BTreeSet<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SentenceLabel {
    Task,
    #[serde(rename = "nontask")]
    NonTask,
    /// Segmentation-only output (Sentence-BI decode). Never valid in gold data.
    Unlabeled,
}

impl SentenceLabel {
    pub fn is_task(self) -> bool {
        self == SentenceLabel::Task
    }
}

/// A contiguous half-open word span `[start, end)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SentenceSpan {
    pub start: usize,
    pub end: usize,
    pub label: SentenceLabel,
    /// Labeled task/non-task only because of the neighboring sentences.
    pub context: bool,
}

impl SentenceSpan {
    pub fn new(start: usize, end: usize, label: SentenceLabel) -> Self {
        SentenceSpan { start, end, label, context: false }
    }

    pub fn task(start: usize, end: usize) -> Self {
        Self::new(start, end, SentenceLabel::Task)
    }

    pub fn nontask(start: usize, end: usize) -> Self {
        Self::new(start, end, SentenceLabel::NonTask)
    }

    pub fn with_context(mut self, context: bool) -> Self {
        self.context = context;
        self
    }

    pub fn len(&self) -> usize {
        self.end.saturating_sub(self.start)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn overlaps(&self, other: &SentenceSpan) -> bool {
        self.start < other.end && other.start < self.end
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WritingRegion {
    pub region_id: String,
    pub doc_id: String,
    pub words: Vec<Word>,
    pub layout: LayoutMetadata,
    /// Empty for unlabeled regions.
    pub gold_sentences: Vec<SentenceSpan>,
}

impl WritingRegion {
    /// Builds a region from word texts, assigning indices in order.
    pub fn from_texts<I, S>(region_id: &str, doc_id: &str, texts: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let words = texts
            .into_iter()
            .enumerate()
            .map(|(index, text)| Word { text: text.into(), index })
            .collect();
        WritingRegion {
            region_id: region_id.into(),
            doc_id: doc_id.into(),
            words,
            layout: LayoutMetadata::default(),
            gold_sentences: Vec::new(),
        }
    }

    pub fn with_gold(mut self, spans: Vec<SentenceSpan>) -> Self {
        self.gold_sentences = spans;
        self
    }

    pub fn with_layout(mut self, layout: LayoutMetadata) -> Self {
        self.layout = layout;
        self
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_annotated(&self) -> bool {
        !self.gold_sentences.is_empty()
    }

    pub fn gold_tasks(&self) -> impl Iterator<Item = &SentenceSpan> {
        self.gold_sentences.iter().filter(|s| s.label.is_task())
    }
}

/// A single invariant violation found by [`validate_region`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    EmptyRegion,
    WordIndexMismatch { position: usize, index: usize },
    EmptyWordText { index: usize },
    LayoutIndexOutOfRange { kind: &'static str, index: usize, len: usize },
    EmptySpan { start: usize, end: usize },
    SpanOutOfRange { start: usize, end: usize, len: usize },
    Overlap { word: usize },
    Gap { word: usize },
    UnlabeledGold { start: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyRegion => write!(f, "region has no words"),
            Violation::WordIndexMismatch { position, index } => {
                write!(f, "word at position {position} carries index {index}")
            }
            Violation::EmptyWordText { index } => write!(f, "empty text at word {index}"),
            Violation::LayoutIndexOutOfRange { kind, index, len } => {
                write!(f, "layout index out of range: {kind} {index} (word count {len})")
            }
            Violation::EmptySpan { start, end } => write!(f, "empty span [{start},{end})"),
            Violation::SpanOutOfRange { start, end, len } => {
                write!(f, "span [{start},{end}) out of range (word count {len})")
            }
            Violation::Overlap { word } => write!(f, "overlap at word {word}"),
            Violation::Gap { word } => write!(f, "gap at word {word}"),
            Violation::UnlabeledGold { start } => {
                write!(f, "gold sentence at word {start} has no task/nontask label")
            }
        }
    }
}

/// Collects every invariant violation of `region`. An empty result means the
/// region is well formed.
pub fn validate_region(region: &WritingRegion) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = region.words.len();
    if n == 0 {
        out.push(Violation::EmptyRegion);
    }
    for (position, word) in region.words.iter().enumerate() {
        if word.index != position {
            out.push(Violation::WordIndexMismatch { position, index: word.index });
        }
        if word.text.is_empty() {
            out.push(Violation::EmptyWordText { index: position });
        }
    }
    for (kind, set) in [
        ("line_break", &region.layout.line_break_before),
        ("bullet", &region.layout.bullet_before),
    ] {
        for &index in set.range(n..) {
            out.push(Violation::LayoutIndexOutOfRange { kind, index, len: n });
        }
    }
    if !region.gold_sentences.is_empty() {
        check_partition(&region.gold_sentences, n, &mut out);
    }
    out
}

fn check_partition(spans: &[SentenceSpan], n: usize, out: &mut Vec<Violation>) {
    let mut cover = alloc::vec![0u32; n];
    for span in spans {
        if span.start >= span.end {
            out.push(Violation::EmptySpan { start: span.start, end: span.end });
            continue;
        }
        if span.end > n {
            out.push(Violation::SpanOutOfRange { start: span.start, end: span.end, len: n });
        }
        if span.label == SentenceLabel::Unlabeled {
            out.push(Violation::UnlabeledGold { start: span.start });
        }
        for c in cover.iter_mut().take(span.end.min(n)).skip(span.start) {
            *c += 1;
        }
    }
    for (word, &c) in cover.iter().enumerate() {
        match c {
            0 => out.push(Violation::Gap { word }),
            1 => {}
            _ => out.push(Violation::Overlap { word }),
        }
    }
}
