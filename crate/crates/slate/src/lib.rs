//! File formats, evaluation reports, latency measurement and a synthetic
//! notes corpus on top of `slate-core`.

pub mod bench;
pub mod corpus;
mod error;
pub mod model;
pub mod predictions;
pub mod report;
pub mod synth;
pub mod tokens;

pub use error::{Error, Result};
