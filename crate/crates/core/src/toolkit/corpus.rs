//! The worked examples shipped with the crate.

use super::{parse, Document};

/// Source text of the built-in corpus.
pub const SOURCE: &str = include_str!("../../../../docs/corpus.fz");

pub fn corpus() -> Document {
    parse(SOURCE).expect("built-in corpus parses")
}
