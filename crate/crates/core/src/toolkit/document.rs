//! Parsed `.fz` documents and their canonical printed form.

use std::fmt;

use thiserror::Error;

use crate::convergence::{FuzzySeq, SeqBody};
use crate::endograph::{EndographError, SliceBand, SliceSet};
use crate::expr::{fuzzy_set_from_bands, Band, BandError, Env};
use crate::fuzzy_set::StepFuzzySet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Definition {
    /// cut bands; an empty list is the empty fuzzy set
    FuzzySet(Vec<Band>),
    SliceSet(Vec<Band>),
    Sequence { n_min: u64, body: SeqBody },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub name: String,
    pub def: Definition,
}

/// Named definitions in file order; names are unique.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    pub(crate) entries: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LookupError {
    #[error("no definition named `{0}`")]
    Unknown(String),
    #[error("`{name}` is not a {expected}")]
    WrongKind { name: String, expected: &'static str },
    #[error("`{name}`: {source}")]
    Band { name: String, source: BandError },
    #[error("`{name}`: {source}")]
    Slice { name: String, source: EndographError },
}

impl Document {
    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.name.as_str())
    }

    fn lookup(&self, name: &str) -> Result<&Entry, LookupError> {
        self.get(name).ok_or_else(|| LookupError::Unknown(name.to_string()))
    }

    pub fn fuzzy_set(&self, name: &str) -> Result<StepFuzzySet, LookupError> {
        match &self.lookup(name)?.def {
            Definition::FuzzySet(bands) => fuzzy_set_from_bands(bands, &Env::default())
                .map_err(|source| LookupError::Band { name: name.to_string(), source }),
            _ => Err(LookupError::WrongKind { name: name.to_string(), expected: "fuzzyset" }),
        }
    }

    pub fn sequence(&self, name: &str) -> Result<FuzzySeq, LookupError> {
        match &self.lookup(name)?.def {
            Definition::Sequence { n_min, body } => {
                Ok(FuzzySeq { name: name.to_string(), n_min: *n_min, body: body.clone() })
            }
            _ => Err(LookupError::WrongKind { name: name.to_string(), expected: "sequence" }),
        }
    }

    pub fn slice_set(&self, name: &str) -> Result<SliceSet, LookupError> {
        match &self.lookup(name)?.def {
            Definition::SliceSet(bands) => slice_set_from_bands(bands)
                .map_err(|source| LookupError::Slice { name: name.to_string(), source }),
            _ => Err(LookupError::WrongKind { name: name.to_string(), expected: "sliceset" }),
        }
    }
}

pub(crate) fn slice_set_from_bands(bands: &[Band]) -> Result<SliceSet, EndographError> {
    let mut out = Vec::with_capacity(bands.len());
    for b in bands {
        let range = b.range.eval(&Env::default())?;
        out.push(SliceBand { range, set: b.set.clone() });
    }
    SliceSet::new(out)
}

fn write_bands(f: &mut fmt::Formatter<'_>, keyword: &str, bands: &[Band], indent: &str) -> fmt::Result {
    for b in bands {
        writeln!(f, "{indent}{keyword} alpha in {}: {};", b.range, b.set)?;
    }
    Ok(())
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            match &e.def {
                Definition::FuzzySet(bands) if bands.is_empty() => writeln!(f, "fuzzyset {} empty;", e.name)?,
                Definition::FuzzySet(bands) => {
                    writeln!(f, "fuzzyset {} {{", e.name)?;
                    write_bands(f, "cut", bands, "  ")?;
                    writeln!(f, "}}")?;
                }
                Definition::SliceSet(bands) => {
                    writeln!(f, "sliceset {} {{", e.name)?;
                    write_bands(f, "slice", bands, "  ")?;
                    writeln!(f, "}}")?;
                }
                Definition::Sequence { n_min, body } => {
                    writeln!(f, "sequence {} (n >= {n_min}) {{", e.name)?;
                    match body {
                        SeqBody::Uniform(bands) => write_bands(f, "cut", bands, "  ")?,
                        SeqBody::Parity { even, odd } => {
                            writeln!(f, "  even {{")?;
                            write_bands(f, "cut", even, "    ")?;
                            writeln!(f, "  }}")?;
                            writeln!(f, "  odd {{")?;
                            write_bands(f, "cut", odd, "    ")?;
                            writeln!(f, "  }}")?;
                        }
                    }
                    writeln!(f, "}}")?;
                }
            }
        }
        Ok(())
    }
}

/// Canonical text of a document.
pub fn print(doc: &Document) -> String {
    doc.to_string()
}
