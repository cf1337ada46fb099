//! Labels and the three labeling schemes.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::codec::CodecError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Label {
    B,
    I,
    O,
    N,
    T,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::B => "B",
            Label::I => "I",
            Label::O => "O",
            Label::N => "N",
            Label::T => "T",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = CodecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "B" => Ok(Label::B),
            "I" => Ok(Label::I),
            "O" => Ok(Label::O),
            "N" => Ok(Label::N),
            "T" => Ok(Label::T),
            _ => Err(CodecError::UnknownLabel(s.into())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Scheme {
    /// Sentence segmentation only: {B, I}.
    #[serde(rename = "bi")]
    SentenceBi,
    /// Task extraction: {B, I, O}.
    #[serde(rename = "bio")]
    SlateBio,
    /// Joint task extraction and segmentation: {N, T, I}.
    #[serde(rename = "nti")]
    SlateNti,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::SentenceBi, Scheme::SlateBio, Scheme::SlateNti];

    /// The scheme's labels in a fixed order; tagger weight vectors are
    /// indexed by position in this slice.
    pub fn alphabet(self) -> &'static [Label] {
        match self {
            Scheme::SentenceBi => &[Label::B, Label::I],
            Scheme::SlateBio => &[Label::B, Label::I, Label::O],
            Scheme::SlateNti => &[Label::N, Label::T, Label::I],
        }
    }

    pub fn contains(self, label: Label) -> bool {
        self.alphabet().contains(&label)
    }

    pub fn index_of(self, label: Label) -> Option<usize> {
        self.alphabet().iter().position(|&l| l == label)
    }

    /// Labels allowed on the first word of a region (or window).
    pub fn is_initial(self, label: Label) -> bool {
        match self {
            Scheme::SentenceBi => label == Label::B,
            Scheme::SlateBio => matches!(label, Label::B | Label::O),
            Scheme::SlateNti => matches!(label, Label::N | Label::T),
        }
    }

    /// Whether `next` may follow `prev` without decode repair.
    pub fn allows(self, prev: Label, next: Label) -> bool {
        match self {
            Scheme::SlateBio => !(prev == Label::O && next == Label::I),
            _ => true,
        }
    }

    /// Whether `label` starts a new span.
    pub fn is_beginning(self, label: Label) -> bool {
        matches!(label, Label::B | Label::N | Label::T)
    }

    /// Label for non-beginning continuation tokens.
    pub fn continuation(self) -> Label {
        match self {
            Scheme::SlateBio => Label::O,
            _ => Label::I,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Scheme::SentenceBi => "bi",
            Scheme::SlateBio => "bio",
            Scheme::SlateNti => "nti",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = CodecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "bi" | "sentence-bi" | "sentence_bi" => Ok(Scheme::SentenceBi),
            "bio" | "slate-bio" | "slate_bio" => Ok(Scheme::SlateBio),
            "nti" | "slate-nti" | "slate_nti" => Ok(Scheme::SlateNti),
            _ => Err(CodecError::UnknownScheme(s.into())),
        }
    }
}

fn check_alphabet(scheme: Scheme, labels: &[Label]) -> Result<(), CodecError> {
    match labels.iter().find(|&&l| !scheme.contains(l)) {
        Some(&label) => Err(CodecError::OutsideAlphabet { label, scheme }),
        None => Ok(()),
    }
}

/// Labels aligned 1:1 with rendered tokens.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TokenLabelSequence {
    scheme: Scheme,
    labels: Vec<Label>,
}

impl TokenLabelSequence {
    pub fn new(scheme: Scheme, labels: Vec<Label>) -> Result<Self, CodecError> {
        check_alphabet(scheme, &labels)?;
        Ok(TokenLabelSequence { scheme, labels })
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }
}

/// Labels aligned 1:1 with region words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WordLabelSequence {
    scheme: Scheme,
    labels: Vec<Label>,
}

impl WordLabelSequence {
    pub fn new(scheme: Scheme, labels: Vec<Label>) -> Result<Self, CodecError> {
        check_alphabet(scheme, &labels)?;
        Ok(WordLabelSequence { scheme, labels })
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn into_labels(self) -> Vec<Label> {
        self.labels
    }
}
