//! Corpus file: one JSON region record per line.

use std::collections::BTreeSet;
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use slate_core::{validate_region, LayoutMetadata, SentenceLabel, SentenceSpan, WritingRegion};

use crate::error::{io_err, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Test,
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Split::Train => "train",
            Split::Test => "test",
        })
    }
}

impl FromStr for Split {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "train" => Ok(Split::Train),
            "test" => Ok(Split::Test),
            other => Err(format!("unknown split {other:?} (expected train or test)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SentenceRecord {
    pub start: usize,
    pub end: usize,
    pub label: SentenceLabel,
    #[serde(default)]
    pub context: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionRecord {
    pub region_id: String,
    pub doc_id: String,
    pub split: Split,
    pub words: Vec<String>,
    #[serde(default)]
    pub line_breaks: Vec<usize>,
    #[serde(default)]
    pub bullets: Vec<usize>,
    #[serde(default)]
    pub sentences: Vec<SentenceRecord>,
}

/// A region together with its split tag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub split: Split,
    pub region: WritingRegion,
}

impl From<RegionRecord> for CorpusEntry {
    fn from(r: RegionRecord) -> Self {
        let gold = r
            .sentences
            .iter()
            .map(|s| SentenceSpan::new(s.start, s.end, s.label).with_context(s.context))
            .collect();
        let layout = LayoutMetadata {
            line_break_before: r.line_breaks.into_iter().collect(),
            bullet_before: r.bullets.into_iter().collect(),
        };
        let region = WritingRegion::from_texts(&r.region_id, &r.doc_id, r.words).with_gold(gold).with_layout(layout);
        CorpusEntry { split: r.split, region }
    }
}

impl From<&CorpusEntry> for RegionRecord {
    fn from(e: &CorpusEntry) -> Self {
        let r = &e.region;
        RegionRecord {
            region_id: r.region_id.clone(),
            doc_id: r.doc_id.clone(),
            split: e.split,
            words: r.words.iter().map(|w| w.text.clone()).collect(),
            line_breaks: r.layout.line_break_before.iter().copied().collect(),
            bullets: r.layout.bullet_before.iter().copied().collect(),
            sentences: r
                .gold_sentences
                .iter()
                .map(|s| SentenceRecord { start: s.start, end: s.end, label: s.label, context: s.context })
                .collect(),
        }
    }
}

/// Reads and validates every record, in file order. Blank lines are skipped.
pub fn read_corpus(path: &Path) -> Result<Vec<CorpusEntry>> {
    let file = File::open(path).map_err(io_err(path))?;
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for (n, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(io_err(path))?;
        if line.trim().is_empty() {
            continue;
        }
        let record: RegionRecord = serde_json::from_str(&line).map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            line: n + 1,
            message: e.to_string(),
        })?;
        if !seen.insert(record.region_id.clone()) {
            return Err(Error::DuplicateRegion(record.region_id));
        }
        let entry = CorpusEntry::from(record);
        let violations = validate_region(&entry.region);
        if !violations.is_empty() {
            return Err(Error::InvalidRegion {
                region: entry.region.region_id,
                violations: violations.iter().map(ToString::to_string).collect(),
            });
        }
        out.push(entry);
    }
    Ok(out)
}

/// Regions of the requested split (all regions for `None`), in file order.
pub fn load_corpus(path: &Path, split: Option<Split>) -> Result<Vec<WritingRegion>> {
    Ok(read_corpus(path)?
        .into_iter()
        .filter(|e| split.is_none_or(|s| s == e.split))
        .map(|e| e.region)
        .collect())
}

pub fn write_corpus(path: &Path, entries: &[CorpusEntry]) -> Result<()> {
    let file = File::create(path).map_err(io_err(path))?;
    write_corpus_to(BufWriter::new(file), entries).map_err(io_err(path))
}

pub fn write_corpus_to(mut w: impl Write, entries: &[CorpusEntry]) -> std::io::Result<()> {
    for e in entries {
        let line = serde_json::to_string(&RegionRecord::from(e)).expect("corpus records serialize");
        writeln!(w, "{line}")?;
    }
    w.flush()
}

/// Gold statistics of a set of regions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CorpusSummary {
    pub documents: usize,
    pub regions: usize,
    pub words: usize,
    pub sentences: usize,
    pub task: usize,
    pub nontask: usize,
    pub context_task: usize,
    pub context_nontask: usize,
}

impl CorpusSummary {
    pub fn of(regions: &[WritingRegion]) -> Self {
        let documents = regions.iter().map(|r| r.doc_id.as_str()).collect::<BTreeSet<_>>().len();
        let mut s = CorpusSummary { documents, regions: regions.len(), ..Default::default() };
        for span in regions.iter().flat_map(|r| &r.gold_sentences) {
            s.sentences += 1;
            match (span.label, span.context) {
                (SentenceLabel::Task, c) => {
                    s.task += 1;
                    s.context_task += c as usize;
                }
                (SentenceLabel::NonTask, c) => {
                    s.nontask += 1;
                    s.context_nontask += c as usize;
                }
                (SentenceLabel::Unlabeled, _) => {}
            }
        }
        s.words = regions.iter().map(|r| r.words.len()).sum();
        s
    }
}
