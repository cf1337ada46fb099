use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::CodecError;
use crate::document::WritingRegion;

pub const LINE_BREAK_MARKER: &str = "</>";
pub const BULLET_MARKER: &str = "<.>";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TokenKind {
    WordPiece,
    LineBreakMarker,
    BulletMarker,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderedToken {
    pub text: String,
    pub kind: TokenKind,
    /// Absent for layout markers.
    pub word_index: Option<usize>,
}

impl RenderedToken {
    pub fn piece(text: impl Into<String>, word_index: usize) -> Self {
        RenderedToken { text: text.into(), kind: TokenKind::WordPiece, word_index: Some(word_index) }
    }

    pub fn line_break() -> Self {
        RenderedToken { text: LINE_BREAK_MARKER.into(), kind: TokenKind::LineBreakMarker, word_index: None }
    }

    pub fn bullet() -> Self {
        RenderedToken { text: BULLET_MARKER.into(), kind: TokenKind::BulletMarker, word_index: None }
    }

    pub fn is_marker(&self) -> bool {
        self.kind != TokenKind::WordPiece
    }
}

/// Splits a word into subword pieces whose concatenation is the word.
pub trait Splitter {
    fn split(&self, word: &str) -> Vec<String>;
}

/// One word, one piece.
#[derive(Clone, Copy, Debug, Default)]
pub struct IdentitySplitter;

impl Splitter for IdentitySplitter {
    fn split(&self, word: &str) -> Vec<String> {
        if word.is_empty() {
            Vec::new()
        } else {
            alloc::vec![word.to_string()]
        }
    }
}

/// Fixed-length character chunks of at most `max_chars` characters.
#[derive(Clone, Copy, Debug)]
pub struct ChunkSplitter {
    pub max_chars: usize,
}

impl Default for ChunkSplitter {
    fn default() -> Self {
        ChunkSplitter { max_chars: 6 }
    }
}

impl Splitter for ChunkSplitter {
    fn split(&self, word: &str) -> Vec<String> {
        let chars: Vec<char> = word.chars().collect();
        chars.chunks(self.max_chars.max(1)).map(|c| c.iter().collect()).collect()
    }
}

impl<F> Splitter for F
where
    F: Fn(&str) -> Vec<String>,
{
    fn split(&self, word: &str) -> Vec<String> {
        self(word)
    }
}

/// Renders a region as model input tokens, inserting `<.>` and `</>` before
/// the words they precede. When both apply to one word the bullet comes first.
pub fn render_with_layout(
    region: &WritingRegion,
    splitter: &dyn Splitter,
) -> Result<Vec<RenderedToken>, CodecError> {
    render(region, splitter, true)
}

/// Like [`render_with_layout`]; with `layout == false` no markers are emitted.
pub fn render(
    region: &WritingRegion,
    splitter: &dyn Splitter,
    layout: bool,
) -> Result<Vec<RenderedToken>, CodecError> {
    let mut out = Vec::with_capacity(region.words.len() * 2);
    for (i, word) in region.words.iter().enumerate() {
        if layout {
            if region.layout.bullet_before.contains(&i) {
                out.push(RenderedToken::bullet());
            }
            if region.layout.line_break_before.contains(&i) {
                out.push(RenderedToken::line_break());
            }
        }
        let pieces = splitter.split(&word.text);
        if pieces.is_empty() || pieces.iter().any(String::is_empty) {
            return Err(CodecError::EmptyTokenization { word: i });
        }
        out.extend(pieces.into_iter().map(|p| RenderedToken::piece(p, i)));
    }
    Ok(out)
}
