//! Endographs of step sets as unions of prisms `C x [0, a]` under the metric
//! `d((x, a), (y, b)) = |x - y| + |a - b|`.

use num_traits::Zero;
use serde::Serialize;

use super::EndographError;
use crate::fuzzy_set::StepFuzzySet;
use crate::num::{ExtReal, Level, Real};
use crate::spatial::{dist_point_set, DistanceEnvelope, Interval, IntervalUnion};

/// `set x [0, top]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prism {
    pub set: IntervalUnion,
    pub top: Level,
}

/// Finite union of prisms, optionally together with the whole base line
/// `R x {0}`. Tops are strictly descending and sets strictly expanding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrismComplex {
    base_line: bool,
    prisms: Vec<Prism>,
}

/// `end u`: the base line plus `C_j x [0, a_j]` for every band.
pub fn endograph(u: &StepFuzzySet) -> PrismComplex {
    PrismComplex { base_line: true, prisms: prisms_of(u) }
}

/// `send u`: the prisms of `end u` without the base line. The slab
/// `support x {0}` is already the bottom of the widest prism, so no extra
/// piece is stored.
pub fn sendograph(u: &StepFuzzySet) -> PrismComplex {
    PrismComplex { base_line: false, prisms: prisms_of(u) }
}

fn prisms_of(u: &StepFuzzySet) -> Vec<Prism> {
    u.thresholds()
        .iter()
        .zip(u.cuts())
        .map(|(a, c)| Prism { set: c.clone(), top: a.clone() })
        .collect()
}

impl PrismComplex {
    pub fn base_line(&self) -> bool {
        self.base_line
    }

    pub fn prisms(&self) -> &[Prism] {
        &self.prisms
    }

    pub fn is_empty(&self) -> bool {
        !self.base_line && self.prisms.is_empty()
    }

    /// Horizontal section at height `alpha`.
    pub fn slice(&self, alpha: &Level) -> IntervalUnion {
        if alpha.is_zero() && self.base_line {
            return IntervalUnion::line();
        }
        // the widest prism reaching alpha has the smallest top >= alpha
        self.prisms
            .iter()
            .rev()
            .find(|p| p.top >= *alpha)
            .map(|p| p.set.clone())
            .unwrap_or_default()
    }

    /// Pieces `(S, a)` meaning `S x [0, a]`, the base line as `(R, 0)`.
    fn pieces(&self) -> impl Iterator<Item = (IntervalUnion, Real)> + '_ {
        let base = self.base_line.then(|| (IntervalUnion::line(), Real::zero()));
        base.into_iter()
            .chain(self.prisms.iter().map(|p| (p.set.clone(), p.top.value().clone())))
    }

    /// Distance from the point `(x, t)`.
    pub fn distance_from(&self, x: &Real, t: &Level) -> Result<Real, EndographError> {
        self.pieces()
            .filter_map(|(set, top)| {
                let slack = (t.value() - &top).max(Real::zero());
                dist_point_set(x, &set).finite().map(|d| d + slack)
            })
            .min()
            .ok_or(EndographError::EmptyComplex)
    }

    /// Envelope of `x ↦ d((x, a), self)`.
    ///
    /// Every term `d(x, D) + max(0, t - b)` is nondecreasing in `t`, so the
    /// farthest point of a piece `S x [0, a]` always sits on its top face.
    fn envelope_at(&self, a: &Real) -> DistanceEnvelope {
        let mut items = Vec::new();
        for (set, top) in self.pieces() {
            let slack = (a - &top).max(Real::zero());
            items.extend(set.parts().iter().map(|p| (p.clone(), slack.clone())));
        }
        DistanceEnvelope::new(items)
    }

    /// `sup_{p in self} d(p, other)`.
    pub fn directed_distance(&self, other: &PrismComplex) -> Result<ExtReal, EndographError> {
        if self.is_empty() || other.is_empty() {
            return Err(EndographError::EmptyComplex);
        }
        let mut worst = ExtReal::zero();
        for (set, top) in self.pieces() {
            let env = other.envelope_at(&top);
            for part in set.parts() {
                worst = worst.max(env.sup_over(part));
            }
        }
        Ok(worst)
    }

    pub fn hausdorff(&self, other: &PrismComplex) -> Result<ExtReal, EndographError> {
        Ok(self.directed_distance(other)?.max(other.directed_distance(self)?))
    }
}

/// `inf` of the product metric from `(x, t)` to `E`.
pub fn dist_point_endo(x: &Real, t: &Level, e: &PrismComplex) -> Result<Real, EndographError> {
    e.distance_from(x, t)
}

/// Endograph metric. The base lines are at distance 0 from each other and
/// every point `(x, t)` lies within `t <= 1` of the other base line, so the
/// value is always finite and at most 1.
pub fn hend(u: &StepFuzzySet, v: &StepFuzzySet) -> ExtReal {
    endograph(u).hausdorff(&endograph(v)).expect("endographs contain the base line")
}

/// Sendograph metric; `+inf` when one support is unbounded and the other
/// cannot follow it.
pub fn hsend(u: &StepFuzzySet, v: &StepFuzzySet) -> Result<ExtReal, EndographError> {
    if u.is_empty() || v.is_empty() {
        return Err(EndographError::EmptyOperand);
    }
    sendograph(u).hausdorff(&sendograph(v))
}

/// `(lo, hi)` bounds of the finite data of a complex, for windowing.
pub(crate) fn finite_extent(sets: &[&IntervalUnion]) -> Option<Interval> {
    let mut pts = sets.iter().flat_map(|s| s.finite_endpoints());
    let first = pts.next()?;
    let (lo, hi) = pts.fold((first.clone(), first), |(lo, hi), x| (lo.min(x.clone()), hi.max(x)));
    Some(Interval::closed(lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{int, ratio};

    fn iu(parts: &[(i64, i64)]) -> IntervalUnion {
        parts.iter().map(|&(a, b)| Interval::closed(int(a), int(b))).collect()
    }

    fn ucn() -> StepFuzzySet {
        StepFuzzySet::from_cut_family(vec![int(1), ratio(3, 5)], vec![iu(&[(0, 1), (3, 4)]), iu(&[(0, 4)])]).unwrap()
    }

    fn gen(n: i64) -> StepFuzzySet {
        let top: IntervalUnion = [Interval::point(int(n))].into_iter().collect();
        StepFuzzySet::from_cut_family(vec![int(1), ratio(3, 5)], vec![top.clone(), top.union(&iu(&[(0, 1)]))]).unwrap()
    }

    fn gen_limit() -> StepFuzzySet {
        StepFuzzySet::from_cut_family(vec![ratio(3, 5)], vec![iu(&[(0, 1)])]).unwrap()
    }

    #[test]
    fn structure() {
        let e = endograph(&ucn());
        assert!(e.base_line());
        assert_eq!(e.prisms().len(), 2);
        assert_eq!(e.slice(&Level::zero()), IntervalUnion::line());
        assert_eq!(e.slice(&Level::ratio(3, 10)), iu(&[(0, 4)]));
        assert_eq!(e.slice(&Level::ratio(4, 5)), iu(&[(0, 1), (3, 4)]));
        assert!(sendograph(&StepFuzzySet::empty()).is_empty());
        assert!(!endograph(&StepFuzzySet::empty()).is_empty());
        assert_eq!(sendograph(&ucn()).slice(&Level::zero()), iu(&[(0, 4)]));
    }

    #[test]
    fn point_distances() {
        let e = endograph(&ucn());
        assert_eq!(dist_point_endo(&int(2), &Level::ratio(4, 5), &e).unwrap(), ratio(1, 5));
        assert_eq!(dist_point_endo(&int(-7), &Level::zero(), &e).unwrap(), int(0));
        for n in 2..6 {
            assert_eq!(dist_point_endo(&int(n), &Level::one(), &endograph(&gen_limit())).unwrap(), int(1));
        }
        let none = sendograph(&StepFuzzySet::empty());
        assert_eq!(dist_point_endo(&int(0), &Level::one(), &none), Err(EndographError::EmptyComplex));
    }

    #[test]
    fn hend_examples() {
        assert_eq!(hend(&ucn(), &ucn()), ExtReal::zero());
        assert_eq!(hend(&gen(1), &gen_limit()), ExtReal::Finite(ratio(2, 5)));
        for n in 2..8 {
            assert_eq!(hend(&gen(n), &gen_limit()), ExtReal::Finite(int(1)));
        }
        assert_eq!(hend(&ucn(), &StepFuzzySet::empty()), ExtReal::Finite(int(1)));
        let x = StepFuzzySet::indicator(int(0));
        let y = StepFuzzySet::indicator(ratio(1, 4));
        assert_eq!(hend(&x, &y), ExtReal::Finite(ratio(1, 4)));
        assert_eq!(hend(&x, &StepFuzzySet::indicator(int(3))), ExtReal::Finite(int(1)));
    }

    #[test]
    fn hsend_examples() {
        let x = StepFuzzySet::indicator(int(0));
        assert_eq!(hsend(&x, &StepFuzzySet::indicator(int(3))).unwrap(), ExtReal::Finite(int(3)));
        assert_eq!(hsend(&ucn(), &ucn()).unwrap(), ExtReal::zero());
        assert!(hsend(&gen(9), &gen_limit()).unwrap() >= ExtReal::Finite(int(8)));
        assert_eq!(hsend(&x, &StepFuzzySet::empty()), Err(EndographError::EmptyOperand));
        let ray = StepFuzzySet::from_cut_family(vec![int(1)], vec![[Interval::ray_up(int(0))].into_iter().collect()]).unwrap();
        assert_eq!(hsend(&ray, &x).unwrap(), ExtReal::PosInf);
        assert_eq!(hend(&ray, &x), ExtReal::Finite(int(1)));
    }
}
