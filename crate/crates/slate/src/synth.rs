//! Synthetic handwritten-notes corpus: bulleted to-do items and fragments,
//! wrapped lines, list headers whose items are tasks only in context, and
//! free-form notes.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slate_core::{LayoutMetadata, SentenceSpan, WritingRegion};

use crate::corpus::{CorpusEntry, Split};

const VERBS: &[&str] = &[
    "buy", "call", "email", "send", "book", "schedule", "review", "submit", "fix", "renew", "order", "pay",
    "finish", "ask", "remind", "print", "update", "cancel", "prepare", "check",
];
const OBJECTS: &[&str] = &[
    "milk", "the report", "bob", "mom", "the slides", "tickets", "the invoice", "a dentist appointment",
    "the budget", "groceries", "the car", "flowers", "anna about the offsite", "the contract", "hotel rooms",
    "the team", "dinner reservations", "the draft", "new tires", "the quarterly numbers",
];
const TAILS: &[&str] = &["", "", "", "tomorrow", "by friday", "before noon", "today", "next week", "asap", "tonight"];
const SUBJECTS: &[&str] = &[
    "the meeting", "lunch", "the weather", "sales", "the demo", "anna", "the new intern", "the kickoff",
    "our team", "the client", "traffic", "the project", "the workshop", "the budget review",
];
const PREDICATES: &[&str] = &[
    "went well", "was great", "ran long", "is up ten percent", "looked promising", "was moved to tuesday",
    "felt rushed", "seems on track", "was cancelled", "got good feedback", "is still pending", "was lovely",
];
const HEADERS: &[&str] = &["shopping list", "packing list", "for the trip", "todo", "before the party", "errands"];
const ITEMS: &[&str] = &[
    "passport", "sunscreen", "eggs", "bread", "chargers", "batteries", "coffee", "snacks", "gift", "umbrella",
    "tape", "candles",
];
const FILLER: &[&str] = &[
    "notes", "about", "plan", "draft", "numbers", "ideas", "client", "design", "review", "weekly", "status",
    "launch", "timeline", "owner", "pending", "follow", "up", "items", "agenda", "summary",
];

#[derive(Clone, Copy, Debug)]
pub struct SynthConfig {
    pub documents: usize,
    pub seed: u64,
    /// Fraction of documents assigned to the test split.
    pub test_fraction: f64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig { documents: 60, seed: 1, test_fraction: 0.3 }
    }
}

struct Builder {
    words: Vec<String>,
    layout: LayoutMetadata,
    gold: Vec<SentenceSpan>,
}

impl Builder {
    fn new() -> Self {
        Builder { words: Vec::new(), layout: LayoutMetadata::default(), gold: Vec::new() }
    }

    fn push_sentence(&mut self, text: &str, task: bool, context: bool, new_line: bool, bullet: bool, wrap: Option<usize>) {
        let start = self.words.len();
        if start > 0 && new_line {
            self.layout.line_break_before.insert(start);
        }
        if bullet {
            self.layout.bullet_before.insert(start);
        }
        for (i, w) in text.split_whitespace().enumerate() {
            if let Some(k) = wrap {
                if i > 0 && i % k == 0 {
                    self.layout.line_break_before.insert(self.words.len());
                }
            }
            self.words.push(w.to_string());
        }
        let span = if task { SentenceSpan::task(start, self.words.len()) } else { SentenceSpan::nontask(start, self.words.len()) };
        self.gold.push(span.with_context(context));
    }

    fn finish(self, region_id: String, doc_id: &str) -> WritingRegion {
        WritingRegion::from_texts(&region_id, doc_id, self.words).with_gold(self.gold).with_layout(self.layout)
    }
}

fn pick<'a>(rng: &mut ChaCha8Rng, xs: &[&'a str]) -> &'a str {
    xs.choose(rng).expect("non-empty vocabulary")
}

fn surface(rng: &mut ChaCha8Rng, mut s: String) -> String {
    if rng.gen_bool(0.4) {
        let mut c = s.chars();
        if let Some(f) = c.next() {
            s = f.to_uppercase().chain(c).collect();
        }
    }
    if rng.gen_bool(0.35) {
        s.push_str(" .");
    }
    s
}

fn task_text(rng: &mut ChaCha8Rng) -> String {
    let tail = pick(rng, TAILS);
    let base = format!("{} {}", pick(rng, VERBS), pick(rng, OBJECTS));
    surface(rng, if tail.is_empty() { base } else { format!("{base} {tail}") })
}

fn note_text(rng: &mut ChaCha8Rng) -> String {
    let s = format!("{} {}", pick(rng, SUBJECTS), pick(rng, PREDICATES));
    surface(rng, s)
}

fn long_text(rng: &mut ChaCha8Rng, task: bool) -> String {
    let head = if task { pick(rng, VERBS) } else { pick(rng, SUBJECTS) };
    let mut words = vec![head.to_string()];
    words.extend((0..rng.gen_range(8..=30)).map(|_| pick(rng, FILLER).to_string()));
    words.join(" ")
}

/// A bare noun-phrase fragment such as "status summary".
fn fragment_text(rng: &mut ChaCha8Rng) -> String {
    (0..rng.gen_range(1..=4)).map(|_| pick(rng, FILLER)).collect::<Vec<_>>().join(" ")
}

fn region(rng: &mut ChaCha8Rng, region_id: String, doc_id: &str) -> WritingRegion {
    let mut b = Builder::new();
    if rng.gen_bool(0.2) {
        // A list: the header is a note, each bare item is a task given the header.
        b.push_sentence(pick(rng, HEADERS), false, false, true, false, None);
        for _ in 0..rng.gen_range(2..=5) {
            b.push_sentence(pick(rng, ITEMS), true, true, true, rng.gen_bool(0.7), None);
        }
        return b.finish(region_id, doc_id);
    }
    let bulleted = rng.gen_bool(0.5);
    for _ in 0..rng.gen_range(1..=7) {
        let task = rng.gen_bool(0.35);
        let new_line = bulleted || rng.gen_bool(0.5);
        if bulleted && rng.gen_bool(0.15) {
            // A long run-on item wrapped over several lines.
            let text = long_text(rng, task);
            b.push_sentence(&text, task, false, true, true, Some(rng.gen_range(5..=8)));
            continue;
        }
        if bulleted && rng.gen_bool(0.2) {
            b.push_sentence(&fragment_text(rng), false, false, true, true, None);
            continue;
        }
        let text = if task { task_text(rng) } else { note_text(rng) };
        let wrap_rate = if bulleted { 0.35 } else { 0.1 };
        let wrap = rng.gen_bool(wrap_rate).then(|| rng.gen_range(2..=4));
        b.push_sentence(&text, task, false, new_line, bulleted && new_line, wrap);
    }
    b.finish(region_id, doc_id)
}

/// A deterministic synthetic corpus. Splits are assigned per document.
pub fn synth_corpus(cfg: &SynthConfig) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();
    for d in 0..cfg.documents {
        let doc_id = format!("doc{d:04}");
        let split = if rng.gen_bool(cfg.test_fraction.clamp(0.0, 1.0)) { Split::Test } else { Split::Train };
        for r in 0..rng.gen_range(1..=3) {
            out.push(CorpusEntry { split, region: region(&mut rng, format!("{doc_id}-r{r}"), &doc_id) });
        }
    }
    out
}

/// A region of `k` bulleted sentences sharing `total_words` words, so the
/// word count stays fixed while the sentence count varies. Each sentence
/// is a verb followed by filler on its own line.
pub fn bench_region(k: usize, total_words: usize, seed: u64) -> WritingRegion {
    assert!(k >= 1 && total_words >= k, "need at least one word per sentence");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (k as u64).rotate_left(32));
    let mut b = Builder::new();
    for s in 0..k {
        let len = total_words / k + usize::from(s < total_words % k);
        let mut words = vec![pick(&mut rng, VERBS)];
        words.extend((1..len).map(|_| pick(&mut rng, FILLER)));
        b.push_sentence(&words.join(" "), rng.gen_bool(0.5), false, true, true, None);
    }
    b.finish(format!("bench-k{k}-{seed}"), "bench")
}
