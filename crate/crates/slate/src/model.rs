//! Self-describing JSON model files.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use slate_core::tagger::{SentenceClassifierModel, TaggerModel};

use crate::error::{io_err, Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelFile {
    Tagger(TaggerModel),
    SentenceClassifier(SentenceClassifierModel),
}

/// Output is byte-identical for identical models.
pub fn save_model(path: &Path, model: &ModelFile) -> Result<()> {
    let mut text = serde_json::to_string_pretty(model).expect("models serialize");
    text.push('\n');
    fs::write(path, text).map_err(io_err(path))
}

pub fn load_model(path: &Path) -> Result<ModelFile> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let model: ModelFile = serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        message: e.to_string(),
    })?;
    match &model {
        ModelFile::Tagger(m) => m.validate()?,
        ModelFile::SentenceClassifier(m) => m.validate()?,
    }
    Ok(model)
}

pub fn load_tagger(path: &Path) -> Result<TaggerModel> {
    match load_model(path)? {
        ModelFile::Tagger(m) => Ok(m),
        _ => Err(Error::WrongModelKind { path: path.to_path_buf(), expected: "tagger" }),
    }
}

pub fn load_classifier(path: &Path) -> Result<SentenceClassifierModel> {
    match load_model(path)? {
        ModelFile::SentenceClassifier(m) => Ok(m),
        _ => Err(Error::WrongModelKind { path: path.to_path_buf(), expected: "sentence_classifier" }),
    }
}
