//! Traces and reports along a fuzzy set sequence.

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::sequence::{instantiate_all, FuzzySequence, Schedule};
use super::verdict::{default_probes, kuratowski_probe, verdict_hend, Status, TracePoint};
use super::ConvergenceError;
use crate::endograph::hend;
use crate::fuzzy_set::StepFuzzySet;
use crate::num::{ratio, ExtReal, Level, Real};
use crate::spatial::{hausdorff, is_bounded, is_connected, Interval, IntervalUnion};

/// `(n, H_end(u_n, u))` for every scheduled `n`.
pub fn hend_trace(seq: &dyn FuzzySequence, u: &StepFuzzySet, sched: &Schedule) -> Result<Vec<TracePoint>, ConvergenceError> {
    Ok(instantiate_all(seq, sched)?
        .iter()
        .map(|(n, un)| TracePoint::new(*n, hend(un, u)))
        .collect())
}

/// Hausdorff distance of two cuts, with `0` when both are empty and `+inf`
/// when exactly one is.
pub fn cut_distance(a: &IntervalUnion, b: &IntervalUnion) -> ExtReal {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => ExtReal::zero(),
        (true, false) | (false, true) => ExtReal::PosInf,
        (false, false) => hausdorff(a, b).expect("both operands non-empty"),
    }
}

/// `(n, H([u_n]_alpha, [u]_alpha))`; `alpha` must not be a threshold of `u`.
pub fn hausdorff_level_trace(
    seq: &dyn FuzzySequence,
    u: &StepFuzzySet,
    alpha: &Level,
    sched: &Schedule,
) -> Result<Vec<TracePoint>, ConvergenceError> {
    if u.thresholds().contains(alpha) {
        return Err(ConvergenceError::JumpLevel(alpha.to_string()));
    }
    let target = u.alpha_cut(alpha);
    Ok(instantiate_all(seq, sched)?
        .iter()
        .map(|(n, un)| TracePoint::new(*n, cut_distance(&un.alpha_cut(alpha), &target)))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GammaOptions {
    pub level_samples: usize,
    /// random probe points added to the default ones at each level
    pub probes_per_level: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for GammaOptions {
    fn default() -> Self {
        GammaOptions { level_samples: 16, probes_per_level: 4, seed: 7, tol: super::verdict::DEFAULT_TOL }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelVerdict {
    pub alpha: Level,
    pub status: Status,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GammaReport {
    pub status: Status,
    pub levels: Vec<LevelVerdict>,
}

const LEVEL_DENOM: i64 = 1 << 20;

/// Γ-convergence evidence: Kuratowski convergence of the cuts at random
/// levels away from the thresholds of `u`.
///
/// Diverges when any sampled level diverges, converges when all converge.
pub fn gamma_test(
    seq: &dyn FuzzySequence,
    u: &StepFuzzySet,
    sched: &Schedule,
    opts: &GammaOptions,
) -> Result<GammaReport, ConvergenceError> {
    let members = instantiate_all(seq, sched)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let guard = ratio(1, 1_000_000);
    let mut levels = Vec::with_capacity(opts.level_samples);
    while levels.len() < opts.level_samples {
        let alpha = ratio(rng.gen_range(1..LEVEL_DENOM), LEVEL_DENOM);
        let near_jump = u.thresholds().iter().any(|a| {
            let gap = a.value() - &alpha;
            gap.abs() <= guard
        });
        if !near_jump {
            levels.push(Level::new(alpha).expect("sampled inside (0, 1)"));
        }
    }
    levels.sort();

    let mut out = Vec::with_capacity(levels.len());
    for alpha in levels {
        let cuts: Vec<(u64, IntervalUnion)> = members.iter().map(|(n, un)| (*n, un.alpha_cut(&alpha))).collect();
        let limit = u.alpha_cut(&alpha);
        let mut probes = default_probes(&limit, &cuts);
        probes.extend(random_probes(&limit, &cuts, opts.probes_per_level, &mut rng));
        let v = kuratowski_probe(&cuts, &limit, &probes, opts.tol);
        out.push(LevelVerdict { alpha, status: v.status, note: v.note });
    }
    let status = if out.iter().any(|l| l.status == Status::Diverges) {
        Status::Diverges
    } else if out.iter().all(|l| l.status == Status::Converges) {
        Status::Converges
    } else {
        Status::Inconclusive
    };
    Ok(GammaReport { status, levels: out })
}

/// Uniform points of the hull of every finite endpoint in sight, widened by 1.
fn random_probes(limit: &IntervalUnion, cuts: &[(u64, IntervalUnion)], count: usize, rng: &mut ChaCha8Rng) -> Vec<Real> {
    let mut ends = limit.finite_endpoints();
    if let Some((_, first)) = cuts.first() {
        ends.extend(first.finite_endpoints());
    }
    let (Some(lo), Some(hi)) = (ends.iter().min().cloned(), ends.iter().max().cloned()) else {
        return Vec::new();
    };
    let one = Real::from_integer(1.into());
    let (lo, hi) = (lo - &one, hi + &one);
    (0..count)
        .map(|_| {
            let t = ratio(rng.gen_range(0..=LEVEL_DENOM), LEVEL_DENOM);
            &lo + (&hi - &lo) * t
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SLimit {
    Converges { limit: Level },
    Oscillates,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct STrace {
    pub points: Vec<(u64, Level)>,
    pub limit: SLimit,
}

/// `S_{u_n}` along the schedule. The tail converges when it spreads less
/// than `tol`; a tail that moves both up and down oscillates.
pub fn s_trace(seq: &dyn FuzzySequence, sched: &Schedule, tol: f64) -> Result<STrace, ConvergenceError> {
    let points: Vec<(u64, Level)> = instantiate_all(seq, sched)?.iter().map(|(n, un)| (*n, un.s_value())).collect();
    let tail = &points[super::sequence::tail_start(points.len())..];
    let max = tail.iter().map(|p| &p.1).max().expect("non-empty schedule");
    let min = tail.iter().map(|p| &p.1).min().expect("non-empty schedule");
    let spread = crate::num::to_f64(&(max.value() - min.value()));
    let up = tail.windows(2).any(|w| w[1].1 > w[0].1);
    let down = tail.windows(2).any(|w| w[1].1 < w[0].1);
    let limit = if spread < tol {
        SLimit::Converges { limit: tail.last().expect("non-empty").1.clone() }
    } else if up && down {
        SLimit::Oscillates
    } else {
        SLimit::Inconclusive
    };
    Ok(STrace { points, limit })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EpsWitness {
    pub eps: Level,
    pub delta: Option<Level>,
    pub n: Option<u64>,
    pub satisfied: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConnectednessReport {
    pub satisfied: bool,
    pub witnesses: Vec<EpsWitness>,
}

pub fn default_eps() -> Vec<Level> {
    [60, 50, 40, 30, 20, 10, 5, 1].iter().map(|&k| Level::ratio(k, 100)).collect()
}

/// Checks the connectedness condition on the schedule: for each `eps`, a
/// level `delta` in `(0, eps]` and a scheduled `N` no later than the start
/// of the evidence tail such that `[u_n]_delta` is connected for every
/// scheduled `n >= N`. Cut connectivity is constant between thresholds, so
/// `delta` ranges over the instantiated thresholds below `eps` and `eps`.
pub fn connectedness_condition(
    seq: &dyn FuzzySequence,
    eps_list: &[Level],
    sched: &Schedule,
) -> Result<ConnectednessReport, ConvergenceError> {
    let members = instantiate_all(seq, sched)?;
    let deadline = members[super::sequence::tail_start(members.len())].0;
    let mut witnesses = Vec::with_capacity(eps_list.len());
    for eps in eps_list {
        let mut candidates: Vec<Level> = members
            .iter()
            .flat_map(|(_, un)| un.thresholds().iter().filter(|a| *a <= eps).cloned())
            .chain(std::iter::once(eps.clone()))
            .filter(|d| !d.is_zero())
            .collect();
        candidates.sort();
        candidates.dedup();

        let mut best: Option<(Level, u64)> = None;
        for delta in candidates.into_iter().rev() {
            // earliest N such that every later member has a connected cut
            let mut first_good = None;
            for (n, un) in members.iter().rev() {
                if is_connected(&un.alpha_cut(&delta)) {
                    first_good = Some(*n);
                } else {
                    break;
                }
            }
            if let Some(n) = first_good {
                if best.as_ref().is_none_or(|(_, m)| n < *m) {
                    best = Some((delta, n));
                }
            }
        }
        let satisfied = best.as_ref().is_some_and(|(_, n)| *n <= deadline);
        witnesses.push(EpsWitness {
            eps: eps.clone(),
            delta: best.as_ref().map(|b| b.0.clone()),
            n: best.map(|b| b.1),
            satisfied,
        });
    }
    Ok(ConnectednessReport { satisfied: witnesses.iter().all(|w| w.satisfied), witnesses })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundednessReport {
    pub hend_status: Status,
    pub limit_cut_bounded: bool,
    /// first scheduled index from which every `[u_n]_beta` is bounded
    pub n: Option<u64>,
    /// hull of the union of those cuts
    pub bound: Option<Interval>,
}

/// Eventual boundedness of `[u_n]_beta` given `H_end(u_n, u) → 0` and a
/// bounded `[u]_alpha` with `0 < alpha < beta <= 1`.
pub fn eventual_boundedness(
    seq: &dyn FuzzySequence,
    u: &StepFuzzySet,
    alpha: &Level,
    beta: &Level,
    sched: &Schedule,
    tol: f64,
) -> Result<BoundednessReport, ConvergenceError> {
    if alpha.is_zero() || alpha >= beta {
        return Err(ConvergenceError::BadLevels);
    }
    let members = instantiate_all(seq, sched)?;
    let trace: Vec<TracePoint> = members.iter().map(|(n, un)| TracePoint::new(*n, hend(un, u))).collect();
    let hend_status = verdict_hend(&trace, tol).status;
    let limit_cut_bounded = is_bounded(&u.alpha_cut(alpha));

    let mut start = None;
    let mut union = IntervalUnion::empty();
    for (n, un) in members.iter().rev() {
        let cut = un.alpha_cut(beta);
        if !is_bounded(&cut) {
            break;
        }
        union = union.union(&cut);
        start = Some(*n);
    }
    Ok(BoundednessReport { hend_status, limit_cut_bounded, n: start, bound: start.and(union.hull()) })
}

/// `⋃_{u in family} [u]_alpha` and whether it is bounded.
pub fn family_cut_union(family: &[StepFuzzySet], alpha: &Level) -> (IntervalUnion, bool) {
    let union = family.iter().fold(IntervalUnion::empty(), |acc, u| acc.union(&u.alpha_cut(alpha)));
    let bounded = is_bounded(&union);
    (union, bounded)
}
