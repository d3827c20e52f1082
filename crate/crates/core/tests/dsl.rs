//! The definition language: canonical printing, random documents, corpus
//! instantiation and plot data.

use fuzzend::convergence::FuzzySequence;
use fuzzend::endograph::{default_window, endograph, hend};
use fuzzend::num::{parse_real, ratio, Real};
use fuzzend::random;
use fuzzend::spatial::{hausdorff_grid, GridSet, Interval, IntervalUnion, LatticeMetric};
use fuzzend::toolkit::emit::{endograph_csv, endograph_json};
use fuzzend::toolkit::{corpus, parse, print, ParseError};
use fuzzend::StepFuzzySet;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn set_text(s: &IntervalUnion) -> String {
    s.parts().iter().map(|p| format!("[{}, {}]", p.lo(), p.hi())).collect::<Vec<_>>().join(" | ")
}

/// Random document text with bands in random order and mixed spellings.
fn random_document(seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = String::from("# generated\n");
    for i in 0..rng.gen_range(1..4) {
        let u = random::step_set(&mut rng);
        let mut bands = Vec::new();
        let levels = u.thresholds();
        for (j, cut) in u.cuts().iter().enumerate() {
            let hi = levels[j].value();
            let lo = levels.get(j + 1).map(|l| l.value().to_string());
            let range = match lo {
                Some(lo) => format!("({lo}, {hi}]"),
                None => format!("[0, {hi}]"),
            };
            bands.push(format!("cut alpha in {range}: {};", set_text(cut)));
        }
        let k = bands.len();
        bands.rotate_left(rng.gen_range(0..k));
        out.push_str(&format!("fuzzyset f{i} {{ {} }}\n", bands.join(" ")));
    }
    if rng.gen_bool(0.5) {
        let a = rng.gen_range(1..5);
        out.push_str(&format!("sequence s (n >= 2) {{ cut alpha in (1/({a}*n), 1]: [0, 1]; cut alpha in [0, 1/({a}*n)]: [0, n+1]; }}\n"));
    }
    if rng.gen_bool(0.3) {
        out.push_str("fuzzyset nothing empty;\n");
    }
    out
}

#[test]
fn corpus_is_canonical() {
    let doc = corpus();
    assert_eq!(parse(&print(&doc)).unwrap(), doc);
    assert_eq!(print(&doc), fuzzend::toolkit::corpus::SOURCE);
    let seqs = ["mke", "wcre", "wcrepu", "gen", "genr", "wcregu", "wcreguf"];
    for s in seqs {
        assert!(doc.sequence(s).is_ok(), "{s}");
    }
    assert!(doc.slice_set("dcn").is_ok());
    assert!(doc.fuzzy_set("ucn").is_ok());
}

#[test]
fn every_corpus_sequence_instantiates_up_to_1024() {
    let doc = corpus();
    for entry in doc.entries() {
        if let Ok(seq) = doc.sequence(&entry.name) {
            for n in 1..=1024 {
                seq.instantiate(n).unwrap_or_else(|e| panic!("{} at {n}: {e}", entry.name));
            }
        }
    }
}

#[test]
fn expression_printing() {
    let doc = parse("sequence s (n >= 1) { cut alpha in [0, 1/(3*n)]: [0, 9*n]; }").unwrap();
    assert!(print(&doc).contains("[0, 1/(3*n)]: [0, 9*n];"));
    let doc = parse("sequence s (n >= 1) { cut alpha in [0, (1/3)/n]: [-(2), 2-(1-n)]; }").unwrap();
    let text = print(&doc);
    assert_eq!(parse(&text).unwrap(), doc);
}

#[test]
fn unbalanced_bracket() {
    let err = parse("fuzzyset a {\n  cut alpha in [0, 1]: [0, 1;\n}").unwrap_err();
    assert!(matches!(err, ParseError::Syntax { .. }));
    assert_eq!(err.position(), (2, 29));
}

/// Lattice points of an emitted CSV.
fn grid_from_csv(csv: &str, h: &Real) -> GridSet {
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("x,alpha"));
    let points = lines.map(|row| {
        let (x, a) = row.split_once(',').unwrap();
        let index = |v: &str| (parse_real(v).unwrap() / h).to_integer().try_into().unwrap();
        vec![index(x), index(a)]
    });
    GridSet::from_points(2, h.clone(), LatticeMetric::Sum, points)
}

#[test]
fn emitted_grids_track_exact_distances() {
    let doc = corpus();
    let h = ratio(1, 100);
    let pairs = [("mke", "mke_limit", 3u64), ("wcrepu", "wcrepu_limit", 2), ("gen", "gen_limit", 2), ("wcre", "wcre_limit", 5)];
    for (s, l, n) in pairs {
        let un = doc.sequence(s).unwrap().instantiate(n).unwrap();
        let u = doc.fuzzy_set(l).unwrap();
        let window: Interval = default_window(&[&endograph(&un), &endograph(&u)]);
        let a = grid_from_csv(&endograph_csv(&un, &h, Some(&window)).unwrap(), &h);
        let b = grid_from_csv(&endograph_csv(&u, &h, Some(&window)).unwrap(), &h);
        let lattice = hausdorff_grid(&a, &b).unwrap().to_f64();
        assert!((lattice - hend(&un, &u).to_f64()).abs() <= 0.03, "{s}");
    }
}

#[test]
fn ucn_plot_data() {
    let u = corpus().fuzzy_set("ucn").unwrap();
    let h = ratio(1, 10);
    let csv = endograph_csv(&u, &h, None).unwrap();
    let grid = grid_from_csv(&csv, &h);
    // window [-1, 5]: 61 columns on the base row, 41 up to 0.6, 22 above
    assert_eq!(grid.len(), 61 + 6 * 41 + 4 * 22);
    let json = endograph_json(&u, &h, None).unwrap();
    assert_eq!(json["points"].as_array().unwrap().len(), grid.len());
    assert_eq!(json["prisms"].as_array().unwrap().len(), 2);
    assert!(endograph_json(&StepFuzzySet::empty(), &h, None).unwrap()["prisms"].as_array().unwrap().is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn print_parse_is_idempotent(seed in any::<u64>()) {
        let text = random_document(seed);
        let doc = parse(&text).unwrap();
        let printed = print(&doc);
        let again = parse(&printed).unwrap();
        prop_assert_eq!(&again, &doc);
        prop_assert_eq!(print(&again), printed);
    }

    #[test]
    fn printed_sets_keep_their_values(seed in any::<u64>()) {
        let doc = parse(&random_document(seed)).unwrap();
        let again = parse(&print(&doc)).unwrap();
        for name in doc.names() {
            if let Ok(u) = doc.fuzzy_set(name) {
                prop_assert_eq!(u, again.fuzzy_set(name).unwrap());
            }
        }
    }
}
