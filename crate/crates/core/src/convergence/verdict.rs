//! Finite-evidence verdicts on traces and on set sequences.

use serde::Serialize;

use super::sequence::tail_start;
use crate::num::{half, int, ExtReal, Real};
use crate::spatial::{dist_point_set, IntervalUnion};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Converges,
    Diverges,
    Inconclusive,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Converges => "converges",
            Status::Diverges => "diverges",
            Status::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TracePoint {
    pub n: u64,
    pub value: ExtReal,
}

impl TracePoint {
    pub fn new(n: u64, value: ExtReal) -> TracePoint {
        TracePoint { n, value }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub tol: f64,
    /// `p` in a least-squares fit `value ≈ c n^-p` over the positive finite tail
    pub decay: Option<f64>,
    pub trace: Vec<TracePoint>,
    pub note: String,
}

pub const DEFAULT_TOL: f64 = 1e-6;

/// Converges when the last value is below `tol` and the tail (last quarter
/// of the trace, at least two points) never increases; inconclusive when the
/// tail is finite and strictly decreasing but not yet below `tol`; diverges
/// otherwise.
pub fn verdict_hend(trace: &[TracePoint], tol: f64) -> Verdict {
    let make = |status, note: &str| Verdict {
        status,
        tol,
        decay: fit_decay(trace),
        trace: trace.to_vec(),
        note: note.to_string(),
    };
    let Some(last) = trace.last() else {
        return make(Status::Inconclusive, "empty trace");
    };
    let tail = &trace[tail_start(trace.len())..];
    let non_increasing = tail.windows(2).all(|w| w[1].value <= w[0].value);
    let strictly_decreasing = tail.windows(2).all(|w| w[1].value < w[0].value);
    if last.value.is_finite() && last.value.to_f64() < tol && non_increasing {
        make(Status::Converges, "final value below tolerance with a non-increasing tail")
    } else if last.value.is_finite() && strictly_decreasing {
        make(Status::Inconclusive, "tail still decreasing above tolerance")
    } else {
        make(Status::Diverges, "tail does not decrease towards zero")
    }
}

fn fit_decay(trace: &[TracePoint]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = trace[tail_start(trace.len())..]
        .iter()
        .filter_map(|p| {
            let v = p.value.to_f64();
            (v.is_finite() && v > 0.0).then(|| ((p.n as f64).ln(), v.ln()))
        })
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| -sxy / sxx)
}

/// Default probe points for testing `C_n → C`.
///
/// Inside `C`: every finite endpoint and the midpoint of each bounded part.
/// Outside: gap midpoints and one point beyond each finite end of the hull,
/// at half the smallest gap (or 1). Finite endpoints of the members before
/// the evidence tail that fall outside `C` are added as outer probes, so
/// defects that persist along the sequence are seen.
pub fn default_probes(limit: &IntervalUnion, members: &[(u64, IntervalUnion)]) -> Vec<Real> {
    let mut out = Vec::new();
    for p in limit.parts() {
        out.extend(p.lo().finite().cloned());
        out.extend(p.hi().finite().cloned());
        out.extend(p.midpoint());
    }
    let smallest_gap = limit.gaps().map(|(a, b)| b - a).min();
    for (a, b) in limit.gaps() {
        out.push(half(&(a + b)));
    }
    let margin = smallest_gap.map_or_else(|| int(1), |g| half(&g));
    match limit.hull() {
        Some(hull) => {
            out.extend(hull.lo().finite().map(|lo| lo - &margin));
            out.extend(hull.hi().finite().map(|hi| hi + &margin));
        }
        None => out.push(int(0)),
    }
    let head = &members[..tail_start(members.len())];
    for (_, set) in head.iter().take(4) {
        out.extend(set.finite_endpoints().into_iter().filter(|x| !limit.contains(x)));
    }
    out.sort();
    out.dedup();
    out
}

/// Kuratowski test of `C_n → C` on probe points.
///
/// Probes inside `C` produce the trace `max_x d(x, C_n)`, judged like an
/// endograph trace. A probe `x` outside `C` with margin
/// `delta = min(d(x, C), 1)` must end up with `d(x, C_n) >= delta / 2` at
/// the last scheduled index; otherwise the sequence keeps points near `x`
/// and the verdict is divergence.
pub fn kuratowski_probe(members: &[(u64, IntervalUnion)], limit: &IntervalUnion, probes: &[Real], tol: f64) -> Verdict {
    let (inner, outer): (Vec<&Real>, Vec<&Real>) = probes.iter().partition(|x| limit.contains(x));
    let trace: Vec<TracePoint> = members
        .iter()
        .map(|(n, set)| {
            let worst = inner.iter().map(|x| dist_point_set(x, set)).max().unwrap_or_else(ExtReal::zero);
            TracePoint::new(*n, worst)
        })
        .collect();
    let mut verdict = verdict_hend(&trace, tol);

    if let Some((_, last)) = members.last() {
        for x in outer {
            let margin = match dist_point_set(x, limit) {
                ExtReal::Finite(d) => d.min(int(1)),
                _ => int(1),
            };
            let d = dist_point_set(x, last);
            if d < ExtReal::Finite(half(&margin)) {
                verdict.status = Status::Diverges;
                verdict.note = format!("members stay near the outside point {}", ExtReal::Finite(x.clone()));
                return verdict;
            }
        }
    }
    if inner.is_empty() {
        verdict.status = Status::Converges;
        verdict.note = "limit is empty and members leave every probe".into();
    }
    verdict
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::ratio;
    use crate::spatial::Interval;

    fn trace(values: &[(u64, Real)]) -> Vec<TracePoint> {
        values.iter().map(|(n, v)| TracePoint::new(*n, ExtReal::Finite(v.clone()))).collect()
    }

    #[test]
    fn verdict_rules() {
        let harmonic: Vec<_> = (0..=20).map(|k| (1u64 << k, ratio(1, 1 << k))).collect();
        let v = verdict_hend(&trace(&harmonic), DEFAULT_TOL);
        assert_eq!(v.status, Status::Converges);
        assert!((v.decay.unwrap() - 1.0).abs() < 1e-9);

        let constant: Vec<_> = (0..=10).map(|k| (1u64 << k, int(1))).collect();
        assert_eq!(verdict_hend(&trace(&constant), DEFAULT_TOL).status, Status::Diverges);

        let slow: Vec<TracePoint> = (0..=10)
            .map(|k| {
                let n = 1u64 << k;
                let v = 1.0 / ((n + 1) as f64).ln();
                TracePoint::new(n, ExtReal::Finite(Real::from_float(v).unwrap()))
            })
            .collect();
        assert_eq!(verdict_hend(&slow, DEFAULT_TOL).status, Status::Inconclusive);
    }

    fn members(f: impl Fn(u64) -> IntervalUnion) -> Vec<(u64, IntervalUnion)> {
        (0..=10).map(|k| 1u64 << k).map(|n| (n, f(n))).collect()
    }

    fn iv(a: Real, b: Real) -> IntervalUnion {
        [Interval::closed(a, b)].into_iter().collect()
    }

    #[test]
    fn kuratowski_examples() {
        let c = iv(int(0), int(1));
        let shrinking = members(|n| iv(int(0), int(1) + ratio(1, n as i64)));
        let p = default_probes(&c, &shrinking);
        assert_eq!(kuratowski_probe(&shrinking, &c, &p, DEFAULT_TOL).status, Status::Converges);

        let drifting = members(|n| iv(int(0), int(1)).union(&iv(int(n as i64), int(n as i64))));
        let p = default_probes(&c, &drifting);
        assert_eq!(kuratowski_probe(&drifting, &c, &p, DEFAULT_TOL).status, Status::Converges);

        let escaping = members(|n| iv(int(n as i64), int(n as i64 + 1)));
        let p = default_probes(&c, &escaping);
        assert_eq!(kuratowski_probe(&escaping, &c, &p, DEFAULT_TOL).status, Status::Diverges);

        let stuck = members(|_| iv(int(0), ratio(5, 4)));
        let p = default_probes(&c, &stuck);
        assert_eq!(kuratowski_probe(&stuck, &c, &p, DEFAULT_TOL).status, Status::Diverges);
    }
}
