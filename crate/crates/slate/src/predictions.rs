//! Prediction file: one record per region holding either word labels with a
//! scheme tag or decoded spans.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use slate_core::codec::decode;
use slate_core::{Label, Scheme, SentenceLabel, SentenceSpan, WordLabelSequence, WritingRegion};

use crate::error::{io_err, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpanRecord {
    pub start: usize,
    pub end: usize,
    pub label: SentenceLabel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Prediction {
    Labels(WordLabelSequence),
    Spans(Vec<SentenceSpan>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredictionRecord {
    pub region_id: String,
    pub prediction: Prediction,
}

impl PredictionRecord {
    pub fn labels(region_id: impl Into<String>, labels: WordLabelSequence) -> Self {
        PredictionRecord { region_id: region_id.into(), prediction: Prediction::Labels(labels) }
    }

    pub fn spans(region_id: impl Into<String>, spans: Vec<SentenceSpan>) -> Self {
        PredictionRecord { region_id: region_id.into(), prediction: Prediction::Spans(spans) }
    }

    /// Spans of the record; label records are decoded.
    pub fn to_spans(&self) -> Vec<SentenceSpan> {
        match &self.prediction {
            Prediction::Labels(l) => decode(l).spans,
            Prediction::Spans(s) => s.clone(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    region_id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    scheme: Option<Scheme>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<Label>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    spans: Option<Vec<SpanRecord>>,
}

impl From<&PredictionRecord> for Raw {
    fn from(r: &PredictionRecord) -> Self {
        let mut raw = Raw { region_id: r.region_id.clone(), scheme: None, labels: None, spans: None };
        match &r.prediction {
            Prediction::Labels(l) => {
                raw.scheme = Some(l.scheme());
                raw.labels = Some(l.labels().to_vec());
            }
            Prediction::Spans(s) => {
                raw.spans = Some(s.iter().map(|s| SpanRecord { start: s.start, end: s.end, label: s.label }).collect());
            }
        }
        raw
    }
}

impl TryFrom<Raw> for PredictionRecord {
    type Error = String;

    fn try_from(raw: Raw) -> Result<Self, String> {
        let prediction = match (raw.scheme, raw.labels, raw.spans) {
            (Some(scheme), Some(labels), None) => {
                Prediction::Labels(WordLabelSequence::new(scheme, labels).map_err(|e| e.to_string())?)
            }
            (None, None, Some(spans)) => {
                Prediction::Spans(spans.iter().map(|s| SentenceSpan::new(s.start, s.end, s.label)).collect())
            }
            (None, Some(_), None) => return Err("labels without a scheme".into()),
            _ => return Err("record needs either scheme+labels or spans".into()),
        };
        Ok(PredictionRecord { region_id: raw.region_id, prediction })
    }
}

pub fn save_predictions(path: &Path, records: &[PredictionRecord]) -> Result<()> {
    let file = File::create(path).map_err(io_err(path))?;
    write_predictions(BufWriter::new(file), records).map_err(io_err(path))
}

pub fn write_predictions(mut w: impl Write, records: &[PredictionRecord]) -> std::io::Result<()> {
    for r in records {
        let line = serde_json::to_string(&Raw::from(r)).expect("prediction records serialize");
        writeln!(w, "{line}")?;
    }
    w.flush()
}

/// Parses records without joining them to a corpus.
pub fn read_predictions(path: &Path) -> Result<Vec<PredictionRecord>> {
    let file = File::open(path).map_err(io_err(path))?;
    let mut out = Vec::new();
    for (n, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(io_err(path))?;
        if line.trim().is_empty() {
            continue;
        }
        let parse_err = |message: String| Error::Parse { path: path.to_path_buf(), line: n + 1, message };
        let raw: Raw = serde_json::from_str(&line).map_err(|e| parse_err(e.to_string()))?;
        out.push(PredictionRecord::try_from(raw).map_err(parse_err)?);
    }
    Ok(out)
}

fn check_spans(region: &WritingRegion, spans: &[SentenceSpan]) -> Result<()> {
    let bad = |message: String| Error::BadSpans { region: region.region_id.clone(), message };
    let n = region.words.len();
    let mut sorted: Vec<_> = spans.to_vec();
    sorted.sort_by_key(|s| (s.start, s.end));
    for s in &sorted {
        if s.start >= s.end || s.end > n {
            return Err(bad(format!("span [{},{}) invalid for {n} words", s.start, s.end)));
        }
    }
    if let Some(w) = sorted.windows(2).find(|w| w[1].start < w[0].end) {
        return Err(bad(format!("overlap at word {}", w[1].start)));
    }
    Ok(())
}

/// Joins records against `corpus` and returns spans keyed by region id.
pub fn join_predictions(
    records: &[PredictionRecord],
    corpus: &[WritingRegion],
) -> Result<BTreeMap<String, Vec<SentenceSpan>>> {
    let by_id: BTreeMap<&str, &WritingRegion> = corpus.iter().map(|r| (r.region_id.as_str(), r)).collect();
    let mut seen = BTreeSet::new();
    let mut out = BTreeMap::new();
    for rec in records {
        let region = by_id.get(rec.region_id.as_str()).ok_or_else(|| Error::UnknownRegion(rec.region_id.clone()))?;
        if !seen.insert(rec.region_id.as_str()) {
            return Err(Error::DuplicateRegion(rec.region_id.clone()));
        }
        if let Prediction::Labels(l) = &rec.prediction {
            if l.len() != region.words.len() {
                return Err(Error::LengthMismatch {
                    region: rec.region_id.clone(),
                    labels: l.len(),
                    words: region.words.len(),
                });
            }
        }
        let spans = rec.to_spans();
        check_spans(region, &spans)?;
        out.insert(rec.region_id.clone(), spans);
    }
    Ok(out)
}

pub fn load_predictions(path: &Path, corpus: &[WritingRegion]) -> Result<BTreeMap<String, Vec<SentenceSpan>>> {
    join_predictions(&read_predictions(path)?, corpus)
}
