use alloc::vec::Vec;
use core::ops::Range;

use crate::document::WritingRegion;

pub const MAX_WINDOW_WORDS: usize = 128;

/// Splits the region into inference windows of at most `max_words` words,
/// cutting only at line breaks. A single line longer than `max_words` is cut
/// into fixed-size pieces.
pub fn window_ranges(region: &WritingRegion, max_words: usize) -> Vec<Range<usize>> {
    let n = region.words.len();
    let max_words = max_words.max(1);
    let mut starts: Vec<usize> = core::iter::once(0)
        .chain(region.layout.line_break_before.range(1..n).copied())
        .collect();
    starts.push(n);

    let mut out: Vec<Range<usize>> = Vec::new();
    let mut current: Option<Range<usize>> = None;
    for line in starts.windows(2).map(|w| w[0]..w[1]) {
        if line.is_empty() {
            continue;
        }
        if let Some(cur) = current.as_mut() {
            if line.end - cur.start <= max_words {
                cur.end = line.end;
                continue;
            }
            out.push(current.take().unwrap());
        }
        let mut start = line.start;
        while line.end - start > max_words {
            out.push(start..start + max_words);
            start += max_words;
        }
        current = Some(start..line.end);
    }
    out.extend(current);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn region(n: usize, breaks: &[usize]) -> WritingRegion {
        let mut r = WritingRegion::from_texts("r", "d", (0..n).map(|_| "w"));
        r.layout.line_break_before.extend(breaks.iter().copied());
        r
    }

    #[test]
    fn short_region_is_one_window() {
        let w = window_ranges(&region(10, &[3, 6]), 128);
        assert_eq!((w.len(), w[0].clone()), (1, 0..10));
    }

    #[test]
    fn packs_lines() {
        assert_eq!(window_ranges(&region(10, &[3, 6]), 6), [0..6, 6..10]);
        assert_eq!(window_ranges(&region(10, &[3, 6]), 4), [0..3, 3..6, 6..10]);
    }

    #[test]
    fn long_line_is_cut() {
        assert_eq!(window_ranges(&region(10, &[]), 4), [0..4, 4..8, 8..10]);
        assert_eq!(window_ranges(&region(10, &[2]), 4), [0..2, 2..6, 6..10]);
    }

    #[test]
    fn empty_region() {
        assert!(window_ranges(&region(0, &[]), 4).is_empty());
    }
}
