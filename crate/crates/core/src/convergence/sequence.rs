//! Fuzzy set sequences `n ↦ u_n` and the finite index schedules they are
//! sampled on.

use serde::Serialize;
use thiserror::Error;

use crate::expr::{fuzzy_set_from_bands, Band, BandError, Env};
use crate::fuzzy_set::StepFuzzySet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("index {n} is below the first index {n_min} of `{name}`")]
    OutOfDomain { name: String, n: u64, n_min: u64 },
    #[error("`{name}` at n = {n}: {source}")]
    Invalid { name: String, n: u64, source: BandError },
    #[error("schedule must be non-empty and strictly increasing")]
    BadSchedule,
}

/// Anything that yields a step fuzzy set for each index `n >= n_min`.
pub trait FuzzySequence {
    fn name(&self) -> &str;

    fn n_min(&self) -> u64 {
        1
    }

    fn instantiate(&self, n: u64) -> Result<StepFuzzySet, SeqError>;
}

/// How the bands of a sequence depend on the index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeqBody {
    Uniform(Vec<Band>),
    /// separate band lists for even and odd `n`
    Parity { even: Vec<Band>, odd: Vec<Band> },
}

/// Sequence whose thresholds and cut endpoints are expressions in `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzySeq {
    pub name: String,
    pub n_min: u64,
    pub body: SeqBody,
}

impl FuzzySequence for FuzzySeq {
    fn name(&self) -> &str {
        &self.name
    }

    fn n_min(&self) -> u64 {
        self.n_min
    }

    fn instantiate(&self, n: u64) -> Result<StepFuzzySet, SeqError> {
        if n < self.n_min {
            return Err(SeqError::OutOfDomain { name: self.name.clone(), n, n_min: self.n_min });
        }
        let bands = match &self.body {
            SeqBody::Uniform(bands) => bands,
            SeqBody::Parity { even, odd } => {
                if n.is_multiple_of(2) {
                    even
                } else {
                    odd
                }
            }
        };
        fuzzy_set_from_bands(bands, &Env::index(n))
            .map_err(|source| SeqError::Invalid { name: self.name.clone(), n, source })
    }
}

/// Sequence given by a Rust closure.
pub struct FnSeq<F> {
    name: String,
    n_min: u64,
    f: F,
}

impl<F> FnSeq<F>
where
    F: Fn(u64) -> StepFuzzySet,
{
    pub fn new(name: impl Into<String>, f: F) -> FnSeq<F> {
        FnSeq { name: name.into(), n_min: 1, f }
    }
}

impl<F> FuzzySequence for FnSeq<F>
where
    F: Fn(u64) -> StepFuzzySet,
{
    fn name(&self) -> &str {
        &self.name
    }

    fn n_min(&self) -> u64 {
        self.n_min
    }

    fn instantiate(&self, n: u64) -> Result<StepFuzzySet, SeqError> {
        if n < self.n_min {
            return Err(SeqError::OutOfDomain { name: self.name.clone(), n, n_min: self.n_min });
        }
        Ok((self.f)(n))
    }
}

/// The constant sequence `u_n = u`.
pub struct ConstSeq {
    name: String,
    value: StepFuzzySet,
}

impl ConstSeq {
    pub fn new(name: impl Into<String>, value: StepFuzzySet) -> ConstSeq {
        ConstSeq { name: name.into(), value }
    }
}

impl FuzzySequence for ConstSeq {
    fn name(&self) -> &str {
        &self.name
    }

    fn instantiate(&self, _n: u64) -> Result<StepFuzzySet, SeqError> {
        Ok(self.value.clone())
    }
}

/// Strictly increasing, non-empty list of indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Schedule(Vec<u64>);

impl Schedule {
    pub fn new(indices: Vec<u64>) -> Result<Schedule, SeqError> {
        if indices.is_empty() || indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SeqError::BadSchedule);
        }
        Ok(Schedule(indices))
    }

    /// `1, 2, 4, ...` up to `n_max`, with `n_max` appended when it is not a
    /// power of two.
    pub fn geometric(n_max: u64) -> Schedule {
        let n_max = n_max.max(1);
        let mut out = Vec::new();
        let mut n = 1u64;
        while n <= n_max {
            out.push(n);
            match n.checked_mul(2) {
                Some(next) => n = next,
                None => break,
            }
        }
        if out.last() != Some(&n_max) {
            out.push(n_max);
        }
        Schedule(out)
    }

    /// Every index in `from..=to`.
    pub fn linear(from: u64, to: u64) -> Result<Schedule, SeqError> {
        Schedule::new((from.max(1)..=to).collect())
    }

    /// Drops indices below `n_min`; falls back to `[n_min]` if none remain.
    pub fn restricted(&self, n_min: u64) -> Schedule {
        let kept: Vec<u64> = self.0.iter().copied().filter(|&n| n >= n_min).collect();
        if kept.is_empty() {
            Schedule(vec![n_min])
        } else {
            Schedule(kept)
        }
    }

    pub fn indices(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> u64 {
        *self.0.last().expect("schedule is non-empty")
    }

    /// Position where the evidence tail (last quarter, at least two entries)
    /// begins.
    pub fn tail_start(&self) -> usize {
        tail_start(self.0.len())
    }
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule::geometric(1024)
    }
}

pub(crate) fn tail_start(len: usize) -> usize {
    let tail = len.div_ceil(4).max(2).min(len);
    len - tail
}

/// `(n, u_n)` for every scheduled index at or above the sequence's first index.
pub fn instantiate_all(seq: &dyn FuzzySequence, sched: &Schedule) -> Result<Vec<(u64, StepFuzzySet)>, SeqError> {
    sched
        .restricted(seq.n_min())
        .indices()
        .iter()
        .map(|&n| seq.instantiate(n).map(|u| (n, u)))
        .collect()
}
