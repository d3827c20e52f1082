use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use super::SpatialError;
use crate::num::{ExtReal, Real};

/// Closed interval of the real line; either end may be infinite.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Interval {
    lo: ExtReal,
    hi: ExtReal,
}

impl Interval {
    pub fn new(lo: ExtReal, hi: ExtReal) -> Result<Interval, SpatialError> {
        if lo == ExtReal::PosInf || hi == ExtReal::NegInf || lo > hi {
            return Err(SpatialError::InvalidInterval { lo: lo.to_string(), hi: hi.to_string() });
        }
        Ok(Interval { lo, hi })
    }

    /// `[lo, hi]` with finite ends.
    ///
    /// Panics if `lo > hi`.
    pub fn closed(lo: Real, hi: Real) -> Interval {
        assert!(lo <= hi, "interval with lo > hi");
        Interval { lo: lo.into(), hi: hi.into() }
    }

    pub fn point(x: Real) -> Interval {
        Interval::closed(x.clone(), x)
    }

    pub fn line() -> Interval {
        Interval { lo: ExtReal::NegInf, hi: ExtReal::PosInf }
    }

    /// `[lo, +inf)`
    pub fn ray_up(lo: Real) -> Interval {
        Interval { lo: lo.into(), hi: ExtReal::PosInf }
    }

    /// `(-inf, hi]`
    pub fn ray_down(hi: Real) -> Interval {
        Interval { lo: ExtReal::NegInf, hi: hi.into() }
    }

    pub fn lo(&self) -> &ExtReal {
        &self.lo
    }

    pub fn hi(&self) -> &ExtReal {
        &self.hi
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn contains(&self, x: &Real) -> bool {
        self.lo.cmp_real(x).is_le() && self.hi.cmp_real(x).is_ge()
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersection(&self, other: &Interval) -> Option<Interval> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo <= hi).then_some(Interval { lo, hi })
    }

    /// Distance from `x` to the interval.
    pub fn distance(&self, x: &Real) -> Real {
        if let ExtReal::Finite(lo) = &self.lo {
            if x < lo {
                return lo - x;
            }
        }
        if let ExtReal::Finite(hi) = &self.hi {
            if x > hi {
                return x - hi;
            }
        }
        Real::zero()
    }

    /// Midpoint, when both ends are finite.
    pub fn midpoint(&self) -> Option<Real> {
        match (&self.lo, &self.hi) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => Some(crate::num::half(&(a + b))),
            _ => None,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lo == ExtReal::NegInf { '(' } else { '[' };
        let close = if self.hi == ExtReal::PosInf { ')' } else { ']' };
        write!(f, "{open}{}, {}{close}", self.lo, self.hi)
    }
}

/// Finite union of closed intervals, kept sorted with strict gaps between parts.
///
/// The empty list is the empty set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct IntervalUnion {
    parts: Vec<Interval>,
}

impl IntervalUnion {
    pub fn empty() -> IntervalUnion {
        IntervalUnion::default()
    }

    pub fn line() -> IntervalUnion {
        IntervalUnion { parts: vec![Interval::line()] }
    }

    /// Sorts and merges overlapping or touching parts.
    pub fn normalize(mut parts: Vec<Interval>) -> IntervalUnion {
        parts.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi)));
        let mut merged: Vec<Interval> = Vec::with_capacity(parts.len());
        for part in parts {
            match merged.last_mut() {
                Some(last) if part.lo <= last.hi => {
                    if part.hi > last.hi {
                        last.hi = part.hi;
                    }
                }
                _ => merged.push(part),
            }
        }
        IntervalUnion { parts: merged }
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, x: &Real) -> bool {
        self.parts.iter().any(|p| p.contains(x))
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, other: &IntervalUnion) -> bool {
        self.parts
            .iter()
            .all(|p| other.parts.iter().any(|q| q.contains_interval(p)))
    }

    pub fn union(&self, other: &IntervalUnion) -> IntervalUnion {
        IntervalUnion::normalize(self.parts.iter().chain(&other.parts).cloned().collect())
    }

    pub fn intersection(&self, other: &IntervalUnion) -> IntervalUnion {
        let mut out = Vec::new();
        for p in &self.parts {
            for q in &other.parts {
                if let Some(r) = p.intersection(q) {
                    out.push(r);
                }
            }
        }
        IntervalUnion::normalize(out)
    }

    pub fn intersects(&self, other: &IntervalUnion) -> bool {
        self.parts.iter().any(|p| other.parts.iter().any(|q| p.intersects(q)))
    }

    /// Convex hull, `None` for the empty set.
    pub fn hull(&self) -> Option<Interval> {
        let first = self.parts.first()?;
        let last = self.parts.last()?;
        Some(Interval { lo: first.lo.clone(), hi: last.hi.clone() })
    }

    /// Open gaps between consecutive parts as `(left hi, right lo)`.
    pub fn gaps(&self) -> impl Iterator<Item = (&Real, &Real)> + '_ {
        self.parts.windows(2).filter_map(|w| match (&w[0].hi, &w[1].lo) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => Some((a, b)),
            _ => None,
        })
    }

    /// Every finite endpoint, in order.
    pub fn finite_endpoints(&self) -> Vec<Real> {
        let mut out = Vec::new();
        for p in &self.parts {
            out.extend(p.lo.finite().cloned());
            out.extend(p.hi.finite().cloned());
        }
        out
    }
}

impl FromIterator<Interval> for IntervalUnion {
    fn from_iter<I: IntoIterator<Item = Interval>>(iter: I) -> Self {
        IntervalUnion::normalize(iter.into_iter().collect())
    }
}

impl fmt::Display for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("empty");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// `inf_{y in S} |x - y|`, `+inf` for the empty set.
pub fn dist_point_set(x: &Real, set: &IntervalUnion) -> ExtReal {
    set.parts
        .iter()
        .map(|p| p.distance(x))
        .min()
        .map_or(ExtReal::PosInf, ExtReal::Finite)
}

/// A set is connected when it has at most one part; the empty set counts as connected.
pub fn is_connected(set: &IntervalUnion) -> bool {
    set.parts.len() <= 1
}

pub fn is_bounded(set: &IntervalUnion) -> bool {
    set.parts.iter().all(Interval::is_bounded)
}
