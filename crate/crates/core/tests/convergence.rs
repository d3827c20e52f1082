//! Sequence analysis on the built-in examples: traces, verdicts, the
//! connectedness condition and the theorem hypothesis report.

use fuzzend::convergence::{
    classify_pair, connectedness_condition, default_eps, default_probes, eventual_boundedness, family_cut_union,
    gamma_test, hausdorff_level_trace, hend_trace, kuratowski_probe, s_trace, verdict_hend, ConstSeq,
    ConvergenceError, FuzzySeq, FuzzySequence, GammaOptions, SLimit, Schedule, Status, TracePoint, DEFAULT_TOL,
};
use fuzzend::num::{int, ratio, ExtReal, Level, Real};
use fuzzend::spatial::{Interval, IntervalUnion};
use fuzzend::toolkit::{corpus, Document};
use fuzzend::StepFuzzySet;

fn doc() -> Document {
    corpus()
}

fn seq(name: &str) -> FuzzySeq {
    doc().sequence(name).unwrap()
}

fn limit(name: &str) -> StepFuzzySet {
    doc().fuzzy_set(name).unwrap()
}

fn union(parts: Vec<Interval>) -> IntervalUnion {
    IntervalUnion::normalize(parts)
}

fn levels(u: &StepFuzzySet) -> Vec<Level> {
    u.thresholds().to_vec()
}

#[test]
fn instantiated_members() {
    let w = seq("wcrepu").instantiate(1).unwrap();
    assert_eq!(levels(&w), vec![Level::one(), Level::ratio(3, 5), Level::ratio(1, 3)]);
    assert_eq!(w.cuts()[0], union(vec![Interval::closed(int(0), int(1)), Interval::closed(int(3), int(4))]));
    assert_eq!(w.cuts()[1], union(vec![Interval::closed(int(0), int(4))]));
    assert_eq!(w.cuts()[2], union(vec![Interval::closed(int(0), int(9)), Interval::ray_up(int(10))]));

    let m = seq("mke").instantiate(2).unwrap();
    assert_eq!(levels(&m), vec![Level::one(), Level::ratio(1, 2)]);
    assert_eq!(m.cuts()[1], IntervalUnion::line());

    let g = seq("gen").instantiate(3).unwrap();
    assert_eq!(levels(&g), vec![Level::one(), Level::ratio(3, 5)]);
    assert_eq!(g.cuts()[0], union(vec![Interval::point(int(3))]));
    assert_eq!(g.cuts()[1], union(vec![Interval::closed(int(0), int(1)), Interval::point(int(3))]));
}

#[test]
fn out_of_domain_index() {
    let text = "sequence s (n >= 3) { cut alpha in [0, 1]: [0, n]; }";
    let s = fuzzend::toolkit::parse(text).unwrap().sequence("s").unwrap();
    assert!(s.instantiate(2).is_err());
    assert!(s.instantiate(3).is_ok());
}

#[test]
fn closed_form_traces() {
    let sched = Schedule::geometric(1024);
    for p in hend_trace(&seq("mke"), &limit("mke_limit"), &sched).unwrap() {
        assert_eq!(p.value, ExtReal::Finite(ratio(1, p.n as i64)));
    }
    for p in hend_trace(&seq("wcrepu"), &limit("wcrepu_limit"), &sched).unwrap() {
        assert_eq!(p.value, ExtReal::Finite(ratio(1, 3 * p.n as i64)));
    }
    for p in hend_trace(&seq("gen"), &limit("gen_limit"), &sched).unwrap().iter().skip(1) {
        assert_eq!(p.value, ExtReal::Finite(int(1)));
    }
}

#[test]
fn verdict_examples() {
    let sched = Schedule::geometric(1 << 20);
    let t: Vec<TracePoint> = sched.indices().iter().map(|&n| TracePoint::new(n, ExtReal::Finite(ratio(1, n as i64)))).collect();
    assert_eq!(verdict_hend(&t, DEFAULT_TOL).status, Status::Converges);
    let c: Vec<TracePoint> = sched.indices().iter().map(|&n| TracePoint::new(n, ExtReal::Finite(int(1)))).collect();
    assert_eq!(verdict_hend(&c, DEFAULT_TOL).status, Status::Diverges);
    let slow: Vec<TracePoint> = Schedule::geometric(64)
        .indices()
        .iter()
        .map(|&n| TracePoint::new(n, ExtReal::Finite(Real::from_float(1.0 / ((n + 1) as f64).ln()).unwrap())))
        .collect();
    assert_eq!(verdict_hend(&slow, DEFAULT_TOL).status, Status::Inconclusive);
}

fn members(sched: &Schedule, f: impl Fn(i64) -> IntervalUnion) -> Vec<(u64, IntervalUnion)> {
    sched.indices().iter().map(|&n| (n, f(n as i64))).collect()
}

#[test]
fn kuratowski_examples() {
    let sched = Schedule::geometric(1 << 20);
    let c = union(vec![Interval::closed(int(0), int(1))]);
    let shrinking = members(&sched, |n| union(vec![Interval::closed(int(0), int(1) + ratio(1, n))]));
    let v = kuratowski_probe(&shrinking, &c, &default_probes(&c, &shrinking), DEFAULT_TOL);
    assert_eq!(v.status, Status::Converges);

    let drifting = members(&sched, |n| union(vec![Interval::closed(int(0), int(1)), Interval::point(int(n))]));
    let v = kuratowski_probe(&drifting, &c, &default_probes(&c, &drifting), DEFAULT_TOL);
    assert_eq!(v.status, Status::Converges);

    let moving = members(&sched, |n| union(vec![Interval::closed(int(n), int(n + 1))]));
    let v = kuratowski_probe(&moving, &c, &default_probes(&c, &moving), DEFAULT_TOL);
    assert_eq!(v.status, Status::Diverges);
}

#[test]
fn gamma_examples() {
    let long = Schedule::geometric(1 << 20);
    let opts = GammaOptions::default();
    let g = |s: &str, l: &str, sched: &Schedule| gamma_test(&seq(s), &limit(l), sched, &opts).unwrap().status;
    assert_eq!(g("mke", "mke_limit", &long), Status::Converges);
    assert_eq!(g("wcrepu", "wcrepu_limit", &long), Status::Converges);
    assert_eq!(g("gen", "gen_limit", &Schedule::geometric(1024)), Status::Converges);
    let hv = verdict_hend(&hend_trace(&seq("gen"), &limit("gen_limit"), &long).unwrap(), DEFAULT_TOL);
    assert_eq!(hv.status, Status::Diverges);
}

#[test]
fn level_traces() {
    let sched = Schedule::geometric(64);
    let at = |alpha: Level| hausdorff_level_trace(&seq("wcrepu"), &limit("wcrepu_limit"), &alpha, &sched).unwrap();
    assert!(at(Level::ratio(1, 2)).iter().all(|p| p.value == ExtReal::zero()));
    for p in at(Level::ratio(1, 5)) {
        // 1/(3n) >= 1/5 exactly when n <= 1
        let want = if p.n <= 1 { ExtReal::PosInf } else { ExtReal::zero() };
        assert_eq!(p.value, want, "n = {}", p.n);
    }
    let mke = hausdorff_level_trace(&seq("mke"), &limit("mke_limit"), &Level::ratio(7, 10), &sched).unwrap();
    assert!(mke.iter().filter(|p| p.n >= 2).all(|p| p.value == ExtReal::zero()));
    let jump = hausdorff_level_trace(&seq("mke"), &limit("ucn"), &Level::ratio(3, 5), &sched);
    assert!(matches!(jump, Err(ConvergenceError::JumpLevel(_))));
}

#[test]
fn connectedness_examples() {
    let sched = Schedule::geometric(1024);
    let wcrepu = connectedness_condition(&seq("wcrepu"), &default_eps(), &sched).unwrap();
    assert!(wcrepu.satisfied);
    for w in &wcrepu.witnesses {
        let (delta, n) = (w.delta.clone().unwrap(), w.n.unwrap());
        assert!(delta <= w.eps);
        // at the witness level every later member has the connected cut [0, 4]
        assert!(*delta.value() > ratio(1, 3 * n as i64));
    }
    let wcre = connectedness_condition(&seq("wcre"), &default_eps(), &sched).unwrap();
    assert!(wcre.satisfied);
    let wcregu = connectedness_condition(&seq("wcregu"), &default_eps(), &sched).unwrap();
    assert!(wcregu.witnesses.iter().all(|w| !w.satisfied));
}

#[test]
fn s_traces() {
    let sched = Schedule::geometric(1024);
    let gen = s_trace(&seq("gen"), &sched, DEFAULT_TOL).unwrap();
    assert_eq!(gen.limit, SLimit::Converges { limit: Level::one() });
    assert_ne!(limit("gen_limit").s_value(), Level::one());
    let genr = s_trace(&seq("genr"), &Schedule::linear(1, 64).unwrap(), DEFAULT_TOL).unwrap();
    assert_eq!(genr.limit, SLimit::Oscillates);
    let mke = s_trace(&seq("mke"), &sched, DEFAULT_TOL).unwrap();
    assert!(mke.points.iter().all(|(_, s)| *s == Level::one()));
}

#[test]
fn boundedness_examples() {
    let sched = Schedule::geometric(1024);
    let r = eventual_boundedness(&seq("wcrepu"), &limit("wcrepu_limit"), &Level::ratio(1, 5), &Level::ratio(1, 2), &sched, DEFAULT_TOL)
        .unwrap();
    assert!(r.limit_cut_bounded);
    assert_eq!(r.n, Some(1));
    assert_eq!(r.bound, Some(Interval::closed(int(0), int(4))));

    let r = eventual_boundedness(&seq("wcrepu"), &limit("wcrepu_limit"), &Level::ratio(1, 20), &Level::ratio(1, 10), &sched, DEFAULT_TOL)
        .unwrap();
    assert_eq!(r.n, Some(4));

    let u = limit("ucn");
    let r = eventual_boundedness(&ConstSeq::new("c", u.clone()), &u, &Level::ratio(1, 2), &Level::one(), &sched, DEFAULT_TOL).unwrap();
    assert_eq!(r.n, Some(1));
    assert_eq!(r.hend_status, Status::Converges);
}

#[test]
fn family_unions() {
    let pts = [StepFuzzySet::indicator(int(1)), StepFuzzySet::indicator(int(2))];
    let (u, bounded) = family_cut_union(&pts, &Level::ratio(1, 2));
    assert_eq!(u, union(vec![Interval::point(int(1)), Interval::point(int(2))]));
    assert!(bounded);
    let (_, bounded) = family_cut_union(&[limit("wcregu_limit")], &Level::ratio(3, 10));
    assert!(!bounded);
    let (u, bounded) = family_cut_union(&[], &Level::ratio(1, 2));
    assert!(u.is_empty() && bounded);
}

#[test]
fn hypothesis_reports() {
    let sched = Schedule::geometric(1024);
    let w = classify_pair(&limit("wcrepu_limit"), &seq("wcrepu"), &sched, None, DEFAULT_TOL).unwrap();
    assert!(w.limit_uscg_nonempty && !w.members.all_con && w.connectedness.satisfied);
    assert!(w.theorems.fceg && !w.theorems.comg);

    let m = classify_pair(&limit("mke_limit"), &seq("mke"), &sched, None, DEFAULT_TOL).unwrap();
    assert!(m.limit_uscg_nonempty && m.members.all_con && m.members.all_normal && !m.members.all_uscg);
    assert!(m.theorems.fce && !m.theorems.fer);

    let g = classify_pair(&limit("wcregu_limit"), &seq("wcregu"), &sched, None, DEFAULT_TOL).unwrap();
    assert!(!g.limit_uscg_nonempty && !g.connectedness.satisfied);
    assert!(g.wccp.via_hend && g.theorems.fcegun);
}

#[test]
fn hend_convergence_forces_s_convergence() {
    let long = Schedule::geometric(1 << 20);
    let pairs = [("mke", "mke_limit"), ("wcre", "wcre_limit"), ("wcrepu", "wcrepu_limit"), ("wcregu", "wcregu_limit")];
    for (s, l) in pairs {
        let u = limit(l);
        let hv = verdict_hend(&hend_trace(&seq(s), &u, &long).unwrap(), DEFAULT_TOL);
        if hv.status == Status::Converges {
            let st = s_trace(&seq(s), &long, DEFAULT_TOL).unwrap();
            let last = &st.points.last().unwrap().1;
            let gap = last.clone().max(u.s_value()).into_inner() - last.clone().min(u.s_value()).into_inner();
            assert!(gap < Real::from_float(DEFAULT_TOL).unwrap(), "{s}");
        }
    }
}
