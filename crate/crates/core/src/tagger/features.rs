//! Feature extraction for the word tagger and the sentence classifier.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::ops::Range;

use super::TrainConfig;
use crate::document::WritingRegion;

fn lower(s: &str) -> String {
    s.to_lowercase()
}

/// Compressed character-class shape, e.g. `Buy` -> `Xx`, `3pm` -> `dx`.
fn shape(s: &str) -> String {
    let mut out = String::new();
    for c in s.chars() {
        let k = if c.is_uppercase() {
            'X'
        } else if c.is_lowercase() {
            'x'
        } else if c.is_numeric() {
            'd'
        } else {
            c
        };
        if !out.ends_with(k) {
            out.push(k);
        }
    }
    out
}

fn affixes(word: &str, max: usize, out: &mut Vec<String>) {
    let chars: Vec<char> = word.chars().collect();
    for k in 1..=max.min(chars.len()) {
        out.push(format!("pre{k}={}", chars[..k].iter().collect::<String>()));
        out.push(format!("suf{k}={}", chars[chars.len() - k..].iter().collect::<String>()));
    }
}

fn trailing_punct(word: &str) -> Option<char> {
    word.chars().last().filter(|c| c.is_ascii_punctuation())
}

/// Features for word `i` of `window`. Neighbor features do not cross the
/// window edges.
pub fn word_features(region: &WritingRegion, window: &Range<usize>, i: usize, cfg: &TrainConfig) -> Vec<String> {
    let words = &region.words;
    let text = &words[i].text;
    let w = lower(text);
    let prev = (i > window.start).then(|| &words[i - 1].text);
    let next = (i + 1 < window.end).then(|| &words[i + 1].text);
    let prev_l = prev.map_or_else(|| "<s>".to_string(), |p| lower(p));
    let next_l = next.map_or_else(|| "</s>".to_string(), |n| lower(n));

    let mut f = Vec::with_capacity(24);
    f.push("bias".to_string());
    f.push(format!("w={w}"));
    f.push(format!("p1={prev_l}"));
    f.push(format!("n1={next_l}"));
    f.push(format!("p1w={prev_l}|{w}"));
    f.push(format!("wn1={w}|{next_l}"));
    if i + 2 < window.end {
        f.push(format!("n2={}", lower(&words[i + 2].text)));
    }
    if i == window.start {
        f.push("first".to_string());
    }
    affixes(&w, cfg.affix_max_len, &mut f);
    if let Some(c) = prev.and_then(|p| trailing_punct(p)) {
        f.push(format!("ppunct={c}"));
    }
    if cfg.use_shape {
        f.push(format!("sh={}", shape(text)));
        if let Some(p) = prev {
            f.push(format!("psh={}", shape(p)));
        }
        if text.chars().next().is_some_and(char::is_uppercase) {
            f.push("cap".to_string());
        }
    }
    if cfg.use_layout {
        let layout = &region.layout;
        let bullet = layout.bullet_before.contains(&i);
        let lb = layout.line_break_before.contains(&i);
        if bullet {
            f.push("bullet".to_string());
        }
        if lb {
            f.push("linebreak".to_string());
            if let Some(c) = prev.and_then(|p| trailing_punct(p)) {
                f.push(format!("linebreak&ppunct={c}"));
            }
            if text.chars().next().is_some_and(char::is_uppercase) {
                f.push("linebreak&cap".to_string());
            }
            // An unbulleted line inside a bulleted list usually wraps an item.
            if !bullet && !layout.bullet_before.is_empty() {
                f.push("linebreak&nobullet_in_list".to_string());
            }
        }
        if bullet || lb {
            f.push(format!("marker&w={w}"));
        }
        if i + 1 < words.len() && layout.line_break_before.contains(&(i + 1)) {
            f.push("line_end".to_string());
        }
        let line_start = layout.line_break_before.range(..=i).next_back().copied().unwrap_or(0);
        let pos = (i - line_start).min(3);
        f.push(format!("pil={pos}"));
        let line_bulleted = layout.bullet_before.range(line_start..=i).next().is_some();
        if line_bulleted {
            f.push("in_bullet_line".to_string());
        }
    }
    f
}

/// Bag of features for a sentence seen in isolation.
pub fn sentence_features<S: AsRef<str>>(words: &[S], cfg: &TrainConfig) -> Vec<String> {
    let mut f = Vec::with_capacity(words.len() * 3 + 4);
    let lowered: Vec<String> = words.iter().map(|w| lower(w.as_ref())).collect();
    if let Some(first) = lowered.first() {
        f.push(format!("first={first}"));
        affixes(first, cfg.affix_max_len.min(3), &mut f);
    }
    if let Some(last) = lowered.last() {
        f.push(format!("last={last}"));
    }
    f.push(format!("len={}", lowered.len().min(8)));
    for (k, w) in lowered.iter().enumerate() {
        f.push(format!("w={w}"));
        if let Some(next) = lowered.get(k + 1) {
            f.push(format!("bi={w}|{next}"));
        }
    }
    if cfg.use_shape {
        if let Some(first) = words.first() {
            f.push(format!("first_sh={}", shape(first.as_ref())));
        }
    }
    f
}
