//! Checks of the built-in corpus and of the metric properties on seeded
//! random data. Each check returns a one-line summary of what it observed.

use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{corpus, Document};
use crate::convergence::{
    classify_pair, connectedness_condition, default_eps, default_probes, gamma_test, hend_trace, kuratowski_probe,
    s_trace, verdict_hend, FnSeq, FuzzySequence, GammaOptions, SLimit, Schedule, Status, TracePoint,
    DEFAULT_TOL,
};
use crate::endograph::{complex_grid, endograph, hend, truncate, Engine};
use crate::fuzzy_set::StepFuzzySet;
use crate::num::{format_real, int, ratio, ExtReal, Level, Real};
use crate::random::{self, drifting_point, IntervalSequence, Shrinking};
use crate::spatial::{grid_of, hausdorff, hausdorff_grid, Interval, IntervalUnion};

type Outcome = Result<String, String>;

pub struct Check {
    pub name: &'static str,
    pub about: &'static str,
    run: fn(&Document) -> Outcome,
}

impl Check {
    pub fn run(&self) -> CheckResult {
        let doc = corpus();
        let start = Instant::now();
        let outcome = (self.run)(&doc);
        let elapsed = start.elapsed();
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        CheckResult { name: self.name, passed, detail, elapsed }
    }
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

/// Largest index used when a verdict has to get below the default tolerance.
pub const LONG_RUN: u64 = 1 << 20;

pub fn checks() -> Vec<Check> {
    vec![
        Check { name: "mke", about: "hend(u_n, u) = 1/n exactly for n <= 64", run: mke },
        Check { name: "wcrepu", about: "hend(u_n, u) = 1/(3n) exactly for n <= 64", run: wcrepu },
        Check { name: "ucn", about: "truncated endograph connected iff r <= 0.6", run: ucn },
        Check { name: "dcn", about: "slice set connected under both engines", run: dcn },
        Check { name: "gen", about: "Gamma-converges while hend stays at 1", run: gen },
        Check { name: "genr", about: "S values oscillate between 1 and 0.6", run: genr },
        Check { name: "wcre", about: "constant sequence meets the connectedness condition", run: wcre },
        Check { name: "wcregu", about: "connectedness condition fails, limit not USCG", run: wcregu },
        Check { name: "wcreguf", about: "hend = 1/(3n), weak connectedness compact pair", run: wcreguf },
        Check { name: "prop-hend", about: "metric properties on 1000 random pairs and triples", run: prop_hend },
        Check { name: "oracle", about: "exact metrics against lattice oracles at h = 0.001", run: oracle },
        Check { name: "implication", about: "hend convergence never meets Gamma divergence", run: implication },
        Check { name: "cne", about: "Kuratowski and Hausdorff verdicts on connected sequences", run: cne },
    ]
}

/// Runs every check whose name contains `filter`.
pub fn run(filter: Option<&str>) -> Vec<CheckResult> {
    checks()
        .iter()
        .filter(|c| filter.is_none_or(|f| c.name.contains(f)))
        .map(Check::run)
        .collect()
}

/// Fixed-width pass/fail table with timings.
pub fn table(results: &[CheckResult]) -> String {
    let width = results.iter().map(|r| r.name.len()).max().unwrap_or(4).max(5);
    let mut out = format!("{:<width$}  {:<6}  {:>9}  detail\n", "check", "result", "time");
    for r in results {
        let ms = r.elapsed.as_secs_f64() * 1000.0;
        out.push_str(&format!(
            "{:<width$}  {:<6}  {:>7.1}ms  {}\n",
            r.name,
            if r.passed { "PASS" } else { "FAIL" },
            ms,
            r.detail
        ));
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    out.push_str(&format!("{} passed, {} failed\n", results.len() - failed, failed));
    out
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Exact value as a fraction.
fn ext(x: &ExtReal) -> String {
    match x {
        ExtReal::Finite(v) => v.to_string(),
        other => other.to_string(),
    }
}

fn short_list(values: &[String]) -> String {
    if values.len() <= 6 {
        values.join(", ")
    } else {
        format!("{}, {}, {}, ..., {}", values[0], values[1], values[2], values[values.len() - 1])
    }
}

fn exact_trace(doc: &Document, seq: &str, limit: &str, expected: impl Fn(i64) -> Real) -> Outcome {
    let seq = doc.sequence(seq).map_err(err)?;
    let u = doc.fuzzy_set(limit).map_err(err)?;
    let mut seen = Vec::new();
    for n in 1..=64u64 {
        let got = hend(&seq.instantiate(n).map_err(err)?, &u);
        let want = ExtReal::Finite(expected(n as i64));
        ensure(got == want, || format!("n = {n}: hend = {}, expected {}", ext(&got), ext(&want)))?;
        seen.push(ext(&got));
    }
    Ok(format!("observed {}", short_list(&seen)))
}

fn mke(doc: &Document) -> Outcome {
    exact_trace(doc, "mke", "mke_limit", |n| ratio(1, n))
}

fn wcrepu(doc: &Document) -> Outcome {
    exact_trace(doc, "wcrepu", "wcrepu_limit", |n| ratio(1, 3 * n))
}

fn ucn(doc: &Document) -> Outcome {
    let u = doc.fuzzy_set("ucn").map_err(err)?;
    let grid = Engine::Grid(ratio(1, 100));
    let mut connected_up_to = None;
    for k in 0..=20 {
        let r = Level::ratio(k, 20);
        let d = truncate(&u, &r, &Level::one()).map_err(err)?;
        let structural = d.is_connected(&Engine::Structural).map_err(err)?;
        let lattice = d.is_connected(&grid).map_err(err)?;
        let want = k <= 12;
        ensure(structural == want && lattice == want, || {
            format!("r = {}: structural {structural}, grid {lattice}, expected {want}", format_real(r.value()))
        })?;
        if structural {
            connected_up_to = Some(r);
        }
    }
    let top = connected_up_to.map(|r| format_real(r.value())).unwrap_or_else(|| "none".into());
    Ok(format!("connected for r in {{0, 0.05, ..., {top}}}, disconnected above"))
}

fn dcn(doc: &Document) -> Outcome {
    let d = doc.slice_set("dcn").map_err(err)?;
    let structural = d.is_connected(&Engine::Structural).map_err(err)?;
    let lattice = d.is_connected(&Engine::Grid(ratio(1, 1000))).map_err(err)?;
    ensure(structural && lattice, || format!("structural {structural}, grid {lattice}"))?;
    Ok("connected (structural, grid h = 0.001)".into())
}

fn gen(doc: &Document) -> Outcome {
    let seq = doc.sequence("gen").map_err(err)?;
    let u = doc.fuzzy_set("gen_limit").map_err(err)?;
    ensure(u.s_value() == Level::ratio(3, 5), || format!("S_u = {}", format_real(u.s_value().value())))?;

    let sched = Schedule::geometric(1024);
    let s = s_trace(&seq, &sched, DEFAULT_TOL).map_err(err)?;
    ensure(s.points.iter().all(|(_, a)| *a == Level::one()), || "S_{u_n} is not constantly 1".into())?;
    ensure(s.limit == SLimit::Converges { limit: Level::one() }, || format!("S trace limit {:?}", s.limit))?;

    for n in 2..=64u64 {
        let got = hend(&seq.instantiate(n).map_err(err)?, &u);
        ensure(got == ExtReal::Finite(int(1)), || format!("n = {n}: hend = {}", ext(&got)))?;
    }
    let h = ratio(1, 1000);
    for n in [2u64, 3, 5, 8] {
        let un = seq.instantiate(n).map_err(err)?;
        let window = Interval::closed(int(-1), int(n as i64 + 1));
        let a = complex_grid(&endograph(&un), &h, &window).map_err(err)?;
        let b = complex_grid(&endograph(&u), &h, &window).map_err(err)?;
        let g = hausdorff_grid(&a, &b).map_err(err)?;
        let diff = (g.to_f64() - 1.0).abs();
        ensure(diff <= 3e-3, || format!("n = {n}: lattice hend {}", g.to_f64()))?;
    }

    let trace = hend_trace(&seq, &u, &sched).map_err(err)?;
    let hv = verdict_hend(&trace, DEFAULT_TOL).status;
    let gv = gamma_test(&seq, &u, &sched, &GammaOptions::default()).map_err(err)?.status;
    ensure(gv == Status::Converges && hv == Status::Diverges, || format!("gamma {gv}, hend {hv}"))?;
    Ok(format!("S_u = 0.6, S_(u_n) = 1, hend = 1 for n = 2..64; gamma {gv}, hend {hv}"))
}

fn genr(doc: &Document) -> Outcome {
    let seq = doc.sequence("genr").map_err(err)?;
    let sched = Schedule::linear(1, 64).map_err(err)?;
    let s = s_trace(&seq, &sched, DEFAULT_TOL).map_err(err)?;
    for (n, a) in &s.points {
        let want = if n % 2 == 0 { Level::one() } else { Level::ratio(3, 5) };
        ensure(*a == want, || format!("n = {n}: S = {}", format_real(a.value())))?;
    }
    ensure(s.limit == SLimit::Oscillates, || format!("S trace limit {:?}", s.limit))?;
    Ok("S_(u_n) alternates 0.6, 1 for n = 1..64; oscillates".into())
}

fn wcre(doc: &Document) -> Outcome {
    let seq = doc.sequence("wcre").map_err(err)?;
    let u = doc.fuzzy_set("wcre_limit").map_err(err)?;
    let sched = Schedule::geometric(1024);
    let report = connectedness_condition(&seq, &default_eps(), &sched).map_err(err)?;
    ensure(report.satisfied, || "connectedness condition not satisfied".into())?;
    let trace = hend_trace(&seq, &u, &sched).map_err(err)?;
    ensure(trace.iter().all(|p| p.value == ExtReal::zero()), || "hend trace is not identically 0".into())?;
    let pair = classify_pair(&u, &seq, &sched, None, DEFAULT_TOL).map_err(err)?;
    ensure(pair.theorems.fceg, || "main theorem hypotheses not certified".into())?;
    Ok("connectedness condition holds (delta <= 0.6), hend = 0".into())
}

fn wcregu(doc: &Document) -> Outcome {
    let seq = doc.sequence("wcregu").map_err(err)?;
    let u = doc.fuzzy_set("wcregu_limit").map_err(err)?;
    let sched = Schedule::geometric(1024);
    let eps: Vec<Level> = (1..=6).map(|k| Level::ratio(k, 10)).collect();
    let report = connectedness_condition(&seq, &eps, &sched).map_err(err)?;
    ensure(report.witnesses.iter().all(|w| !w.satisfied), || "some eps admits a connected level".into())?;
    let pair = classify_pair(&u, &seq, &sched, None, DEFAULT_TOL).map_err(err)?;
    ensure(!pair.limit.is_uscg, || "limit reported as USCG".into())?;
    let trace = hend_trace(&seq, &u, &sched).map_err(err)?;
    ensure(trace.iter().all(|p| p.value == ExtReal::zero()), || "hend trace is not identically 0".into())?;
    ensure(pair.wccp.via_hend && pair.theorems.fcegun, || "weak connectedness compact pair not certified".into())?;
    Ok("condition fails for eps = 0.1..0.6, u not USCG, hend = 0, WCCP via hend".into())
}

fn wcreguf(doc: &Document) -> Outcome {
    let summary = exact_trace(doc, "wcreguf", "wcreguf_limit", |n| ratio(1, 3 * n))?;
    let seq = doc.sequence("wcreguf").map_err(err)?;
    let u = doc.fuzzy_set("wcreguf_limit").map_err(err)?;
    let pair = classify_pair(&u, &seq, &Schedule::geometric(1024), Some(&Level::ratio(7, 10)), DEFAULT_TOL)
        .map_err(err)?;
    ensure(!pair.limit.is_uscg, || "limit reported as USCG".into())?;
    let xi_holds = pair.wccp.xi.as_ref().is_some_and(|x| x.holds);
    ensure(xi_holds && pair.theorems.fcegun, || "xi = 0.7 does not certify the pair".into())?;
    Ok(format!("{summary}; WCCP with xi = 0.7"))
}

const PROP_SEED: u64 = 0x5eed_0001;
const ORACLE_SEED: u64 = 0x5eed_0002;
const SHRINK_SEED: u64 = 0x5eed_0003;
const CNE_SEED: u64 = 0x5eed_0004;

fn prop_hend(_: &Document) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(PROP_SEED);
    let empty = StepFuzzySet::empty();
    for i in 0..1000 {
        let u = random::step_set_or_empty(&mut rng);
        let v = random::step_set_or_empty(&mut rng);
        let w = random::step_set_or_empty(&mut rng);
        let finite = |x: ExtReal| x.finite().cloned().ok_or_else(|| format!("case {i}: hend not finite"));
        let uv = finite(hend(&u, &v))?;
        ensure(ExtReal::Finite(uv.clone()) == hend(&v, &u), || format!("case {i}: asymmetric"))?;
        let (vw, uw) = (finite(hend(&v, &w))?, finite(hend(&u, &w))?);
        ensure(uw <= &uv + &vw, || format!("case {i}: triangle inequality fails"))?;
        let s_gap = (u.s_value().value() - v.s_value().value()).abs();
        ensure(uv >= s_gap, || format!("case {i}: hend below |S_u - S_v|"))?;
        ensure(hend(&u, &empty) == ExtReal::Finite(u.s_value().into_inner()), || format!("case {i}: hend(u, 0) != S_u"))?;
        ensure(uv.is_zero() == (u == v), || format!("case {i}: hend does not separate"))?;

        let (x, y) = (random::point(&mut rng), random::point(&mut rng));
        let want = (&x - &y).abs().min(int(1));
        let got = hend(&StepFuzzySet::indicator(x), &StepFuzzySet::indicator(y));
        ensure(got == ExtReal::Finite(want), || format!("case {i}: point distance"))?;
    }
    Ok("1000 cases: symmetry, triangle, S gap, empty set, points".into())
}

fn pad(iv: &Interval, margin: &Real) -> Interval {
    Interval::closed(iv.lo().finite().expect("bounded") - margin, iv.hi().finite().expect("bounded") + margin)
}

fn oracle(_: &Document) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(ORACLE_SEED);
    let h = ratio(1, 1000);
    let (mut worst_set, mut worst_end) = (0.0f64, 0.0f64);
    for i in 0..200 {
        let a = random::interval_union(&mut rng);
        let b = random::interval_union(&mut rng);
        let window = pad(&a.union(&b).hull().expect("non-empty"), &int(1));
        let exact = hausdorff(&a, &b).map_err(err)?.to_f64();
        let lattice = hausdorff_grid(&grid_of(&a, &h, &window).map_err(err)?, &grid_of(&b, &h, &window).map_err(err)?)
            .map_err(err)?
            .to_f64();
        worst_set = worst_set.max((exact - lattice).abs());
        ensure((exact - lattice).abs() <= 2e-3, || format!("case {i}: hausdorff {exact} vs lattice {lattice}"))?;

        let u = random::step_set(&mut rng);
        let v = random::step_set(&mut rng);
        let support = u.support().union(&v.support());
        let window = pad(&support.hull().expect("non-empty"), &ratio(1, 4));
        let exact = hend(&u, &v).to_f64();
        let ga = complex_grid(&endograph(&u), &h, &window).map_err(err)?;
        let gb = complex_grid(&endograph(&v), &h, &window).map_err(err)?;
        let lattice = hausdorff_grid(&ga, &gb).map_err(err)?.to_f64();
        worst_end = worst_end.max((exact - lattice).abs());
        ensure((exact - lattice).abs() <= 3e-3, || format!("case {i}: hend {exact} vs lattice {lattice}"))?;
    }
    Ok(format!("200 pairs: max deviation {worst_set:.4} (sets), {worst_end:.4} (endographs)"))
}

fn long_schedule() -> Schedule {
    Schedule::geometric(LONG_RUN)
}

fn implication(doc: &Document) -> Outcome {
    let sched = long_schedule();
    let opts = GammaOptions::default();
    let pairs = [
        ("mke", "mke_limit"),
        ("wcre", "wcre_limit"),
        ("wcrepu", "wcrepu_limit"),
        ("gen", "gen_limit"),
        ("genr", "gen_limit"),
        ("wcregu", "wcregu_limit"),
        ("wcreguf", "wcreguf_limit"),
    ];
    let mut certified = Vec::new();
    for (s, l) in pairs {
        let seq = doc.sequence(s).map_err(err)?;
        let u = doc.fuzzy_set(l).map_err(err)?;
        let hv = verdict_hend(&hend_trace(&seq, &u, &sched).map_err(err)?, DEFAULT_TOL).status;
        let gv = gamma_test(&seq, &u, &sched, &opts).map_err(err)?.status;
        ensure(!(hv == Status::Converges && gv == Status::Diverges), || format!("{s}: hend converges, gamma diverges"))?;
        let pair = classify_pair(&u, &seq, &sched, None, DEFAULT_TOL).map_err(err)?;
        if pair.theorems.fceg {
            ensure(hv == gv, || format!("{s}: certified pair with hend {hv}, gamma {gv}"))?;
            certified.push(s);
        }
    }
    ensure(certified == ["mke", "wcre", "wcrepu"], || format!("certified pairs {certified:?}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(SHRINK_SEED);
    let mut converged = 0;
    for i in 0..100 {
        let s = Shrinking::sample(&mut rng);
        let seq = FnSeq::new(format!("shrink{i}"), |n| s.member(n));
        let hv = verdict_hend(&hend_trace(&seq, &s.base, &sched).map_err(err)?, DEFAULT_TOL).status;
        let gv = gamma_test(&seq, &s.base, &sched, &opts).map_err(err)?.status;
        ensure(!(hv == Status::Converges && gv == Status::Diverges), || format!("perturbation {i}: gamma diverges"))?;
        converged += usize::from(hv == Status::Converges);
    }
    Ok(format!("corpus: fceg pairs {} agree; 100 perturbations ({converged} hend-convergent) consistent", certified.join(", ")))
}

fn trace_of(members: &[(u64, IntervalUnion)], limit: &IntervalUnion) -> Vec<TracePoint> {
    members
        .iter()
        .map(|(n, c)| TracePoint::new(*n, hausdorff(c, limit).expect("non-empty sets")))
        .collect()
}

fn cne(_: &Document) -> Outcome {
    let sched = long_schedule();
    let mut rng = ChaCha8Rng::seed_from_u64(CNE_SEED);
    let mut agree = 0;
    for i in 0..100 {
        let seq = IntervalSequence::sample(&mut rng);
        let limit = seq.limit_set();
        let members: Vec<(u64, IntervalUnion)> = sched.indices().iter().map(|&n| (n, seq.member(n))).collect();
        let hv = verdict_hend(&trace_of(&members, &limit), DEFAULT_TOL).status;
        let kv = kuratowski_probe(&members, &limit, &default_probes(&limit, &members), DEFAULT_TOL).status;
        ensure(hv == kv, || format!("case {i} ({:?}): hausdorff {hv}, kuratowski {kv}", seq.motion))?;
        agree += 1;
    }
    let limit = IntervalUnion::from_iter([Interval::closed(int(0), int(1))]);
    let members: Vec<(u64, IntervalUnion)> = sched.indices().iter().map(|&n| (n, drifting_point(n))).collect();
    let hv = verdict_hend(&trace_of(&members, &limit), DEFAULT_TOL).status;
    let kv = kuratowski_probe(&members, &limit, &default_probes(&limit, &members), DEFAULT_TOL).status;
    ensure(kv == Status::Converges && hv == Status::Diverges, || format!("drifting point: kuratowski {kv}, hausdorff {hv}"))?;
    Ok(format!("{agree}/100 agree; {{n}} | [0, 1]: kuratowski {kv}, hausdorff {hv}"))
}
