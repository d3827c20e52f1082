//! Lower envelope of weighted interval distances.
//!
//! For weighted intervals `(I_k, w_k)` the function
//! `phi(x) = min_k (d(x, I_k) + w_k)` is piecewise linear with slopes in
//! `{-1, 0, +1}`. Between two consecutive finite endpoints every interval is
//! either entirely to the left of `x`, entirely to the right, or contains
//! the whole stretch, so there `phi` is the concave function
//! `min(x + L, R - x, I)` and its supremum over any sub-interval has a closed
//! form. Point-set distance (`w = 0`) and the endograph distance (weights are
//! level deficits) both reduce to this.

use num_traits::Zero;

use super::Interval;
use crate::num::{half, ExtReal, Real};

#[derive(Clone, Debug)]
struct Region {
    lo: ExtReal,
    hi: ExtReal,
    /// `min (w - hi)` over intervals ending at or left of `lo`.
    left: Option<Real>,
    /// `min (lo + w)` over intervals starting at or right of `hi`.
    right: Option<Real>,
    /// `min w` over intervals covering the region.
    inside: Option<Real>,
}

impl Region {
    fn value_at(&self, x: &Real) -> ExtReal {
        let mut best = ExtReal::PosInf;
        if let Some(l) = &self.left {
            best = best.min(ExtReal::Finite(x + l));
        }
        if let Some(r) = &self.right {
            best = best.min(ExtReal::Finite(r - x));
        }
        if let Some(w) = &self.inside {
            best = best.min(ExtReal::Finite(w.clone()));
        }
        best
    }

    fn plateau(&self) -> ExtReal {
        self.inside.clone().map_or(ExtReal::PosInf, ExtReal::Finite)
    }

    /// Supremum over `[a, b]`, a non-empty sub-interval of the region.
    fn sup_on(&self, a: &ExtReal, b: &ExtReal) -> ExtReal {
        match (&self.left, &self.right) {
            (Some(l), Some(r)) => {
                let peak = ExtReal::Finite(half(&(r - l)));
                let x = peak.max(a.clone()).min(b.clone());
                match x {
                    ExtReal::Finite(x) => self.value_at(&x),
                    // unreachable: a finite peak clamps to a finite point
                    _ => self.plateau(),
                }
            }
            (Some(_), None) => match b {
                ExtReal::Finite(x) => self.value_at(x),
                _ => self.plateau(),
            },
            (None, Some(_)) => match a {
                ExtReal::Finite(x) => self.value_at(x),
                _ => self.plateau(),
            },
            (None, None) => self.plateau(),
        }
    }
}

/// `x ↦ min_k (d(x, I_k) + w_k)` with `+inf` when there are no intervals.
#[derive(Clone, Debug)]
pub struct DistanceEnvelope {
    items: Vec<(Interval, Real)>,
    regions: Vec<Region>,
}

impl DistanceEnvelope {
    /// Weights must be non-negative.
    pub fn new(items: Vec<(Interval, Real)>) -> DistanceEnvelope {
        debug_assert!(items.iter().all(|(_, w)| *w >= Real::zero()));
        let mut cuts: Vec<Real> = items
            .iter()
            .flat_map(|(iv, _)| iv.lo().finite().into_iter().chain(iv.hi().finite()))
            .cloned()
            .collect();
        cuts.sort();
        cuts.dedup();

        let mut bounds = Vec::with_capacity(cuts.len() + 2);
        bounds.push(ExtReal::NegInf);
        bounds.extend(cuts.into_iter().map(ExtReal::Finite));
        bounds.push(ExtReal::PosInf);

        let regions = bounds
            .windows(2)
            .map(|w| {
                let (lo, hi) = (&w[0], &w[1]);
                let mut left: Option<Real> = None;
                let mut right: Option<Real> = None;
                let mut inside: Option<Real> = None;
                for (iv, weight) in &items {
                    if iv.hi() <= lo {
                        if let ExtReal::Finite(h) = iv.hi() {
                            let v = weight - h;
                            left = Some(left.map_or(v.clone(), |cur| cur.min(v)));
                        }
                    } else if iv.lo() >= hi {
                        if let ExtReal::Finite(l) = iv.lo() {
                            let v = l + weight;
                            right = Some(right.map_or(v.clone(), |cur| cur.min(v)));
                        }
                    } else {
                        inside = Some(inside.map_or(weight.clone(), |cur| cur.min(weight.clone())));
                    }
                }
                Region { lo: lo.clone(), hi: hi.clone(), left, right, inside }
            })
            .collect();
        DistanceEnvelope { items, regions }
    }

    pub fn eval(&self, x: &Real) -> ExtReal {
        self.items
            .iter()
            .map(|(iv, w)| iv.distance(x) + w)
            .min()
            .map_or(ExtReal::PosInf, ExtReal::Finite)
    }

    /// `sup_{x in part} phi(x)`, exact, including unbounded parts.
    pub fn sup_over(&self, part: &Interval) -> ExtReal {
        let mut best: Option<ExtReal> = None;
        for region in &self.regions {
            let a = (&region.lo).max(part.lo());
            let b = (&region.hi).min(part.hi());
            if a > b {
                continue;
            }
            let v = region.sup_on(a, b);
            best = Some(match best {
                Some(cur) => cur.max(v),
                None => v,
            });
        }
        best.unwrap_or(ExtReal::PosInf)
    }
}
