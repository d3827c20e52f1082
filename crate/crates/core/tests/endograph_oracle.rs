//! The endograph metric and the slice-set decisions against brute-force
//! sampling, on the built-in examples and on random bounded step sets.

use fuzzend::endograph::{complex_grid, default_window, endograph, hend, hsend, sendograph, truncate, Engine};
use fuzzend::num::{int, ratio, to_f64, ExtReal, Level, Real};
use fuzzend::random;
use fuzzend::spatial::{hausdorff_grid, is_connected, IntervalUnion};
use fuzzend::toolkit::corpus;
use fuzzend::StepFuzzySet;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn sets(seed: u64, k: usize) -> Vec<StepFuzzySet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..k).map(|_| random::step_set(&mut rng)).collect()
}

/// `sup` over sampled `(x, t)` with `u(x) >= t` of `inf_y |x - y| + (t - v(y))^+`,
/// using only membership values.
fn sampled_directed(u: &StepFuzzySet, v: &StepFuzzySet) -> f64 {
    let mu = |w: &StepFuzzySet, x: f64| to_f64(w.membership(&Real::from_float(x).unwrap()).value());
    let ys: Vec<(f64, f64)> = (-240..=240).map(|k| k as f64 / 80.0).map(|y| (y, mu(v, y))).collect();
    let mut worst: f64 = 0.0;
    for i in -120..=120 {
        let x = i as f64 / 40.0;
        let top = mu(u, x);
        for j in 0..=20 {
            let t = j as f64 / 20.0;
            if t > top + 1e-12 {
                break;
            }
            let d = ys.iter().map(|&(y, b)| (x - y).abs() + (t - b).max(0.0)).fold(t, f64::min);
            worst = worst.max(d);
        }
    }
    worst
}

#[test]
fn sampled_oracle_on_random_pairs() {
    for seed in 0..60 {
        let s = sets(seed, 2);
        let exact = hend(&s[0], &s[1]).to_f64();
        let sampled = sampled_directed(&s[0], &s[1]).max(sampled_directed(&s[1], &s[0]));
        assert!((exact - sampled).abs() <= 0.03, "seed {seed}: exact {exact}, sampled {sampled}");
    }
}

#[test]
fn lattice_oracle_on_corpus_members() {
    let doc = corpus();
    let h = ratio(1, 200);
    let pairs = [("mke", "mke_limit"), ("wcrepu", "wcrepu_limit"), ("gen", "gen_limit"), ("wcreguf", "wcreguf_limit")];
    for (s, l) in pairs {
        let seq = doc.sequence(s).unwrap();
        let u = doc.fuzzy_set(l).unwrap();
        for n in [1u64, 2, 3] {
            let un = fuzzend::convergence::FuzzySequence::instantiate(&seq, n).unwrap();
            let (a, b) = (endograph(&un), endograph(&u));
            let window = default_window(&[&a, &b]);
            let g = hausdorff_grid(&complex_grid(&a, &h, &window).unwrap(), &complex_grid(&b, &h, &window).unwrap())
                .unwrap();
            let exact = hend(&un, &u);
            assert!((g.to_f64() - exact.to_f64()).abs() <= 3.0 / 200.0, "{s} n = {n}");
        }
    }
}

#[test]
fn point_sets() {
    for (x, y) in [(0, 0), (0, 1), (2, -3)] {
        let (a, b) = (StepFuzzySet::indicator(int(x)), StepFuzzySet::indicator(int(y)));
        let d = (x - y).abs();
        assert_eq!(hend(&a, &b), ExtReal::Finite(int(d.min(1))));
        assert_eq!(hsend(&a, &b).unwrap(), ExtReal::Finite(int(d)));
    }
}

#[test]
fn sendograph_has_no_base_line() {
    let u = StepFuzzySet::indicator(int(0));
    assert!(!sendograph(&u).base_line());
    assert!(sendograph(&u).slice(&Level::zero()).contains(&int(0)));
    assert!(!sendograph(&u).slice(&Level::zero()).contains(&int(1)));
    assert!(hsend(&u, &StepFuzzySet::empty()).is_err());
}

#[test]
fn engines_agree_on_corpus() {
    let doc = corpus();
    let grid = Engine::Grid(ratio(1, 1000));
    let d = doc.slice_set("dcn").unwrap();
    assert_eq!(d.is_connected(&Engine::Structural).unwrap(), d.is_connected(&grid).unwrap());
    for name in ["ucn", "mke_limit", "gen_limit", "wcregu_limit"] {
        let u = doc.fuzzy_set(name).unwrap();
        for r in [0, 3, 6, 7, 10] {
            let t = truncate(&u, &Level::ratio(r, 10), &Level::one()).unwrap();
            if t.is_compact().unwrap() {
                assert_eq!(t.is_connected(&Engine::Structural).unwrap(), t.is_connected(&grid).unwrap(), "{name} r = {r}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn metric_axioms(seed in any::<u64>()) {
        let s = sets(seed, 3);
        let (u, v, w) = (&s[0], &s[1], &s[2]);
        let uv = hend(u, v).finite().cloned().unwrap();
        prop_assert_eq!(hend(v, u), ExtReal::Finite(uv.clone()));
        let uw = hend(u, w).finite().cloned().unwrap();
        let vw = hend(v, w).finite().cloned().unwrap();
        prop_assert!(uw <= &uv + &vw);
        prop_assert_eq!(hend(u, u), ExtReal::zero());
        prop_assert_eq!(uv == int(0), u == v);
    }

    #[test]
    fn level_gap_bound(seed in any::<u64>()) {
        let s = sets(seed, 2);
        let (a, b) = (s[0].s_value(), s[1].s_value());
        let gap = a.clone().max(b.clone()).into_inner() - a.min(b).into_inner();
        prop_assert!(hend(&s[0], &s[1]).finite().cloned().unwrap() >= gap);
        prop_assert_eq!(hend(&s[0], &StepFuzzySet::empty()), ExtReal::Finite(s[0].s_value().into_inner()));
    }

    #[test]
    fn slices_are_nested_and_start_with_the_line(seed in any::<u64>()) {
        let u = &sets(seed, 1)[0];
        let e = endograph(u);
        prop_assert_eq!(e.slice(&Level::zero()), IntervalUnion::line());
        let mut previous = IntervalUnion::line();
        for k in 0..=20 {
            let s = e.slice(&Level::ratio(k, 20));
            prop_assert!(s.is_subset(&previous));
            if k > 0 {
                prop_assert_eq!(&s, &u.alpha_cut(&Level::ratio(k, 20)));
            }
            previous = s;
        }
    }

    #[test]
    fn truncation_connected_iff_bottom_cut_is(seed in any::<u64>(), r in 0i64..=20, dt in 0i64..=20) {
        let u = &sets(seed, 1)[0];
        let t = (r + dt).min(20);
        let d = truncate(u, &Level::ratio(r, 20), &Level::ratio(t, 20)).unwrap();
        let bottom = u.alpha_cut(&Level::ratio(r, 20));
        prop_assert_eq!(d.is_connected(&Engine::Structural).unwrap(), is_connected(&bottom));
    }

    #[test]
    fn engines_agree_on_truncations(seed in any::<u64>(), r in 0i64..=20) {
        let u = &sets(seed, 1)[0];
        let d = truncate(u, &Level::ratio(r, 20), &Level::one()).unwrap();
        prop_assert_eq!(
            d.is_connected(&Engine::Structural).unwrap(),
            d.is_connected(&Engine::Grid(ratio(1, 200))).unwrap()
        );
    }
}
