//! Seeded generators of bounded sets, step fuzzy sets and sequences, used by
//! the property checks.
//!
//! Endpoints are multiples of 1/8 in `[-2, 2]` and levels multiples of 1/20,
//! so every generated value is exact and small.

use rand::Rng;

use crate::fuzzy_set::StepFuzzySet;
use crate::num::{int, ratio, Level, Real};
use crate::spatial::{Interval, IntervalUnion};

const GRID: i64 = 8;
const SPAN: i64 = 2 * GRID;

fn endpoint<R: Rng + ?Sized>(rng: &mut R) -> i64 {
    rng.gen_range(-SPAN..=SPAN)
}

/// A closed bounded interval, possibly a single point.
pub fn interval<R: Rng + ?Sized>(rng: &mut R) -> Interval {
    let (a, b) = (endpoint(rng), endpoint(rng));
    Interval::closed(ratio(a.min(b), GRID), ratio(a.max(b), GRID))
}

/// A non-empty bounded union of one to three intervals.
pub fn interval_union<R: Rng + ?Sized>(rng: &mut R) -> IntervalUnion {
    let k = rng.gen_range(1..=3);
    IntervalUnion::normalize((0..k).map(|_| interval(rng)).collect())
}

/// A point of the 1/8 grid in `[-2, 2]`.
pub fn point<R: Rng + ?Sized>(rng: &mut R) -> Real {
    ratio(endpoint(rng), GRID)
}

/// A non-empty bounded step fuzzy set with one to four levels.
pub fn step_set<R: Rng + ?Sized>(rng: &mut R) -> StepFuzzySet {
    let k = rng.gen_range(1..=4);
    let mut ticks: Vec<i64> = Vec::with_capacity(k);
    while ticks.len() < k {
        let t = rng.gen_range(1..=20);
        if !ticks.contains(&t) {
            ticks.push(t);
        }
    }
    ticks.sort_unstable_by(|a, b| b.cmp(a));
    let mut cuts = Vec::with_capacity(k);
    let mut cut = interval_union(rng);
    for i in 0..k {
        if i > 0 && rng.gen_bool(0.7) {
            cut = cut.union(&interval_union(rng));
        }
        cuts.push(cut.clone());
    }
    let thresholds = ticks.into_iter().map(|t| ratio(t, 20)).collect();
    StepFuzzySet::from_cut_family(thresholds, cuts).expect("generated family is nested and descending")
}

/// Like [`step_set`], but the empty set with probability 1/10.
pub fn step_set_or_empty<R: Rng + ?Sized>(rng: &mut R) -> StepFuzzySet {
    if rng.gen_bool(0.1) {
        StepFuzzySet::empty()
    } else {
        step_set(rng)
    }
}

/// A level that is a multiple of 1/20.
pub fn level<R: Rng + ?Sized>(rng: &mut R) -> Level {
    Level::ratio(rng.gen_range(0..=20), 20)
}

fn widen(set: &IntervalUnion, shift: &Real, grow: &Real) -> IntervalUnion {
    IntervalUnion::normalize(
        set.parts()
            .iter()
            .map(|p| {
                let lo = p.lo().finite().expect("bounded") + shift - grow;
                let hi = p.hi().finite().expect("bounded") + shift + grow;
                Interval::closed(lo, hi)
            })
            .collect(),
    )
}

/// Perturbation of a bounded `u` whose size decays like `1/n`: every cut
/// moves by `shift / n` and widens by `grow / n` on both sides.
#[derive(Clone, Debug)]
pub struct Shrinking {
    pub base: StepFuzzySet,
    pub shift: Real,
    pub grow: Real,
}

impl Shrinking {
    pub fn sample<R: Rng + ?Sized>(rng: &mut R) -> Shrinking {
        Shrinking {
            base: step_set(rng),
            shift: ratio(rng.gen_range(-4..=4), 8),
            grow: ratio(rng.gen_range(0..=4), 8),
        }
    }

    pub fn member(&self, n: u64) -> StepFuzzySet {
        let n = Real::from_integer(n.into());
        let (shift, grow) = (&self.shift / &n, &self.grow / &n);
        let thresholds = self.base.thresholds().iter().map(|a| a.value().clone()).collect();
        let cuts = self.base.cuts().iter().map(|c| widen(c, &shift, &grow)).collect();
        StepFuzzySet::from_cut_family(thresholds, cuts).expect("widening keeps the family nested")
    }
}

/// How a random sequence of closed intervals behaves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntervalMotion {
    /// endpoints approach the limit like `1/n`
    Settling,
    /// one endpoint sits a fixed distance away from the limit
    Offset,
    /// the right endpoint runs off to infinity
    Escaping,
}

/// Connected closed sets `C_n` and a compact limit candidate `C`.
#[derive(Clone, Debug)]
pub struct IntervalSequence {
    pub limit: Interval,
    pub motion: IntervalMotion,
    pub lo_rate: Real,
    pub hi_rate: Real,
}

impl IntervalSequence {
    pub fn sample<R: Rng + ?Sized>(rng: &mut R) -> IntervalSequence {
        let a = endpoint(rng);
        let len = rng.gen_range(GRID..=2 * SPAN);
        let motion = match rng.gen_range(0..4) {
            0 => IntervalMotion::Offset,
            1 => IntervalMotion::Escaping,
            _ => IntervalMotion::Settling,
        };
        IntervalSequence {
            limit: Interval::closed(ratio(a, GRID), ratio(a + len, GRID)),
            motion,
            lo_rate: ratio(rng.gen_range(-4..=4), 8),
            hi_rate: ratio(rng.gen_range(1..=8) * if rng.gen_bool(0.5) { 1 } else { -1 }, 16),
        }
    }

    pub fn member(&self, n: u64) -> IntervalUnion {
        let nr = Real::from_integer(n.into());
        let lo = self.limit.lo().finite().expect("bounded");
        let hi = self.limit.hi().finite().expect("bounded");
        let (lo, hi) = match self.motion {
            IntervalMotion::Settling => (lo + &self.lo_rate / &nr, hi + &self.hi_rate / &nr),
            IntervalMotion::Offset => (lo.clone(), hi + &self.hi_rate),
            IntervalMotion::Escaping => (lo.clone(), hi + nr),
        };
        IntervalUnion::from_iter([Interval::closed(lo, hi)])
    }

    pub fn limit_set(&self) -> IntervalUnion {
        IntervalUnion::from_iter([self.limit.clone()])
    }
}

/// `{n} ∪ [0, 1]`: Kuratowski limit `[0, 1]`, Hausdorff distance `n - 1`.
pub fn drifting_point(n: u64) -> IntervalUnion {
    let n = int(n as i64);
    IntervalUnion::normalize(vec![Interval::closed(int(0), int(1)), Interval::point(n)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_values_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let u = step_set(&mut rng);
            assert!(!u.is_empty());
            assert!(u.support().hull().unwrap().is_bounded());
            let s = Shrinking::sample(&mut rng);
            assert_eq!(s.member(1).s_value(), s.base.s_value());
            let c = IntervalSequence::sample(&mut rng);
            assert!(!c.member(1).is_empty());
        }
    }

    #[test]
    fn seeds_repeat() {
        let a: Vec<_> = (0..5).map({
            let mut rng = ChaCha8Rng::seed_from_u64(9);
            move |_| step_set(&mut rng)
        }).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let b: Vec<_> = (0..5).map(|_| step_set(&mut rng)).collect();
        assert_eq!(a, b);
    }
}
