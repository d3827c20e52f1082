//! Text formats around the library: the `.fz` definition language, plot
//! data, the built-in example corpus and the corpus checks.

mod document;
mod lexer;
mod parser;

pub mod corpus;
pub mod emit;
pub mod verify;

use thiserror::Error;

pub use corpus::corpus;
pub use document::{print, Definition, Document, Entry, LookupError};
pub use parser::parse;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {line}:{col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("semantic error at {line}:{col}: {message}")]
    Semantic { line: usize, col: usize, message: String },
}

impl ParseError {
    pub fn position(&self) -> (usize, usize) {
        match self {
            ParseError::Syntax { line, col, .. } | ParseError::Semantic { line, col, .. } => (*line, *col),
        }
    }
}
