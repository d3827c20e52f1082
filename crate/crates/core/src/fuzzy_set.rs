//! Step fuzzy sets: upper semicontinuous fuzzy sets on the line with finitely
//! many membership levels, stored as a descending threshold list with nested
//! closed cuts.
//!
//! The cut at level `a` is `C_j` for `a` in `(a_{j+1}, a_j]` (with
//! `a_{K+1} = 0`), empty above `a_1`, and the support `C_K` at level `0`.
//! Because cuts are constant on left-open bands the cut map is automatically
//! left-continuous, and a nested family determines its fuzzy set uniquely.

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::num::{Level, Real};
use crate::spatial::{is_bounded, is_connected, Interval, IntervalUnion};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CutFamilyError {
    #[error("{thresholds} thresholds but {cuts} cuts")]
    LengthMismatch { thresholds: usize, cuts: usize },
    #[error("threshold #{index} is outside (0, 1]")]
    OutOfRange { index: usize },
    #[error("thresholds are not strictly descending at #{index}")]
    NotDescending { index: usize },
    #[error("cut #{index} is not contained in cut #{next}", next = index + 1)]
    NotNested { index: usize },
}

/// Finite-level upper semicontinuous fuzzy set on the real line.
///
/// Canonical form: cuts are non-empty and strictly expanding, so two values
/// compare equal exactly when they are the same fuzzy set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct StepFuzzySet {
    thresholds: Vec<Level>,
    cuts: Vec<IntervalUnion>,
}

/// Class membership of a fuzzy set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassFlags {
    pub is_usc: bool,
    /// every positive cut compact
    pub is_uscg: bool,
    /// compact support
    pub is_uscb: bool,
    pub is_normal: bool,
    /// every cut connected
    pub is_con: bool,
    pub s_value: Level,
    pub s_attained: bool,
}

impl StepFuzzySet {
    /// The empty fuzzy set (membership identically zero).
    pub fn empty() -> StepFuzzySet {
        StepFuzzySet::default()
    }

    /// Indicator of the single point `x`.
    pub fn indicator(x: Real) -> StepFuzzySet {
        StepFuzzySet {
            thresholds: vec![Level::one()],
            cuts: vec![IntervalUnion::from_iter([Interval::point(x)])],
        }
    }

    /// Builds the unique fuzzy set whose cut at `thresholds[j]` is `cuts[j]`.
    ///
    /// Empty leading cuts are dropped and equal consecutive cuts are merged
    /// into one band.
    pub fn from_cut_family(thresholds: Vec<Real>, cuts: Vec<IntervalUnion>) -> Result<StepFuzzySet, CutFamilyError> {
        if thresholds.len() != cuts.len() {
            return Err(CutFamilyError::LengthMismatch { thresholds: thresholds.len(), cuts: cuts.len() });
        }
        let mut levels = Vec::with_capacity(thresholds.len());
        for (index, a) in thresholds.into_iter().enumerate() {
            if a <= Real::zero() || a > Real::one() {
                return Err(CutFamilyError::OutOfRange { index });
            }
            levels.push(Level::new(a).expect("checked range"));
        }
        if let Some(index) = levels.windows(2).position(|w| w[0] <= w[1]) {
            return Err(CutFamilyError::NotDescending { index: index + 1 });
        }
        if let Some(index) = cuts.windows(2).position(|w| !w[0].is_subset(&w[1])) {
            return Err(CutFamilyError::NotNested { index });
        }

        let mut out = StepFuzzySet::empty();
        for (a, c) in levels.into_iter().zip(cuts) {
            if c.is_empty() || out.cuts.last() == Some(&c) {
                continue;
            }
            out.thresholds.push(a);
            out.cuts.push(c);
        }
        Ok(out)
    }

    pub fn thresholds(&self) -> &[Level] {
        &self.thresholds
    }

    pub fn cuts(&self) -> &[IntervalUnion] {
        &self.cuts
    }

    /// Number of distinct positive levels.
    pub fn len(&self) -> usize {
        self.thresholds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thresholds.is_empty()
    }

    /// `max { a_j : x in C_j }`, zero when no cut contains `x`.
    pub fn membership(&self, x: &Real) -> Level {
        self.cuts
            .iter()
            .position(|c| c.contains(x))
            .map_or_else(Level::zero, |j| self.thresholds[j].clone())
    }

    /// `[u]_alpha`; level zero gives the closed support.
    pub fn alpha_cut(&self, alpha: &Level) -> IntervalUnion {
        if alpha.is_zero() {
            return self.support();
        }
        // the smallest threshold >= alpha owns the band containing alpha
        match self.thresholds.iter().rposition(|a| a >= alpha) {
            Some(j) => self.cuts[j].clone(),
            None => IntervalUnion::empty(),
        }
    }

    pub fn support(&self) -> IntervalUnion {
        self.cuts.last().cloned().unwrap_or_default()
    }

    /// `S_u`, the largest membership value.
    pub fn s_value(&self) -> Level {
        self.thresholds.first().cloned().unwrap_or_else(Level::zero)
    }

    pub fn classify(&self) -> ClassFlags {
        let is_uscg = self.cuts.iter().all(is_bounded);
        ClassFlags {
            is_usc: true,
            is_uscg,
            is_uscb: is_bounded(&self.support()),
            is_normal: self.thresholds.first().is_some_and(|a| *a == Level::one()),
            is_con: self.cuts.iter().all(is_connected),
            s_value: self.s_value(),
            // a step set attains its largest level; for the empty set every
            // membership value is the supremum 0
            s_attained: true,
        }
    }
}

impl std::fmt::Display for StepFuzzySet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_empty() {
            return f.write_str("empty");
        }
        let mut lower = "0".to_string();
        for j in (0..self.len()).rev() {
            let open = if j + 1 == self.len() { '[' } else { '(' };
            write!(f, "{open}{lower}, {}]: {}", self.thresholds[j], self.cuts[j])?;
            if j > 0 {
                f.write_str("; ")?;
            }
            lower = self.thresholds[j].to_string();
        }
        Ok(())
    }
}
