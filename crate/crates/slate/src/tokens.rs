//! Token-level label records, as produced by a subword tagger, and their
//! reduction to word-level prediction records.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use serde::{Deserialize, Serialize};
use slate_core::codec::{aggregate_tokens, RenderedToken};
use slate_core::{Label, Scheme, TokenLabelSequence};

use crate::error::{io_err, Error, Result};
use crate::predictions::PredictionRecord;

/// `word_index[i]` is the word of token `i`, or null for a layout marker.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TokenRecord {
    pub region_id: String,
    pub scheme: Scheme,
    pub word_index: Vec<Option<usize>>,
    pub labels: Vec<Label>,
}

impl TokenRecord {
    pub fn to_prediction(&self) -> Result<PredictionRecord> {
        let tokens: Vec<RenderedToken> = self
            .word_index
            .iter()
            .map(|w| match w {
                Some(w) => RenderedToken::piece("", *w),
                None => RenderedToken::line_break(),
            })
            .collect();
        let labels = TokenLabelSequence::new(self.scheme, self.labels.clone())?;
        Ok(PredictionRecord::labels(&self.region_id, aggregate_tokens(&labels, &tokens)?))
    }
}

pub fn read_token_records(path: &Path) -> Result<Vec<TokenRecord>> {
    let file = File::open(path).map_err(io_err(path))?;
    let mut out = Vec::new();
    for (n, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(io_err(path))?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            line: n + 1,
            message: e.to_string(),
        })?);
    }
    Ok(out)
}
