//! `fuzzend`: distances, convergence traces, hypothesis checks and plot data
//! for definitions written in `.fz` files.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 parse or
//! semantic error in the input file.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fuzzend::convergence::{
    classify_pair, connectedness_condition, cut_distance, default_eps, gamma_test, hend_trace, s_trace,
    verdict_hend, FuzzySeq, GammaOptions, Schedule, DEFAULT_TOL,
};
use fuzzend::endograph::{hend, hsend, Engine};
use fuzzend::num::{parse_real, Level, Real};
use fuzzend::spatial::Interval;
use fuzzend::toolkit::emit::{endograph_csv, endograph_json};
use fuzzend::toolkit::{parse, verify, Definition, Document};
use fuzzend::StepFuzzySet;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "fuzzend", version, about = "Endograph metrics and convergence checks for step fuzzy sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distance between two fuzzy sets
    Dist {
        file: PathBuf,
        u: String,
        v: String,
        /// endograph, sendograph, or `level ALPHA` for the Hausdorff distance of alpha-cuts
        #[arg(long, num_args = 1..=2, value_names = ["METRIC", "ALPHA"], default_value = "endograph")]
        metric: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Convergence verdicts for a sequence against a candidate limit
    Seq {
        file: PathBuf,
        seq: String,
        limit: String,
        #[arg(long, value_enum, default_value_t = Mode::Hend)]
        mode: Mode,
        /// last index of the schedule 1, 2, 4, ...
        #[arg(long, default_value_t = 1024)]
        nmax: u64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Checks a hypothesis on the sampled members of a sequence
    Check {
        file: PathBuf,
        seq: String,
        #[arg(long, required = true)]
        connectedness_condition: bool,
        /// comma-separated levels in (0, 1]
        #[arg(long, value_delimiter = ',')]
        eps: Vec<String>,
        #[arg(long, default_value_t = 1024)]
        nmax: u64,
        #[arg(long)]
        json: bool,
    },
    /// Class membership of a fuzzy set or slice set, or hypotheses of a pair
    Classify {
        file: PathBuf,
        name: String,
        /// sequence whose limit candidate is NAME
        #[arg(long)]
        pair: Option<String>,
        /// level for the second sufficient condition of the cut-convergence check
        #[arg(long)]
        xi: Option<String>,
        #[arg(long, default_value_t = 1024)]
        nmax: u64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Plot data for the endograph of a fuzzy set
    Emit {
        file: PathBuf,
        name: String,
        #[arg(long, required = true)]
        endograph: bool,
        #[arg(long, default_value = "0.05")]
        resolution: String,
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
        window: Option<Vec<String>>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Runs the built-in corpus checks and prints a pass/fail table
    Verify {
        #[arg(long)]
        filter: Option<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Hend,
    Gamma,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

enum Failure {
    Verification,
    Usage(String),
    Input(String),
}

type Outcome = Result<(), Failure>;

fn usage(message: impl Into<String>) -> Failure {
    Failure::Usage(message.into())
}

fn input(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn load(path: &Path) -> Result<Document, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn real(text: &str) -> Result<Real, Failure> {
    parse_real(text).ok_or_else(|| usage(format!("`{text}` is not a number")))
}

fn level(text: &str) -> Result<Level, Failure> {
    Level::new(real(text)?).ok_or_else(|| usage(format!("`{text}` is not a level in [0, 1]")))
}

fn schedule(nmax: u64) -> Result<Schedule, Failure> {
    if nmax == 0 {
        return Err(usage("--nmax must be positive"));
    }
    Ok(Schedule::geometric(nmax))
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn write_out(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit_json(v: &Value) {
    write_out(&format!("{}\n", serde_json::to_string_pretty(v).expect("serializable")));
}

fn dist(file: &Path, u: &str, v: &str, metric: &[String], as_json: bool) -> Outcome {
    let doc = load(file)?;
    let (a, b) = (doc.fuzzy_set(u).map_err(input)?, doc.fuzzy_set(v).map_err(input)?);
    let (name, value) = match metric {
        [m] if m == "endograph" => ("endograph".to_string(), hend(&a, &b)),
        [m] if m == "sendograph" => ("sendograph".to_string(), hsend(&a, &b).map_err(input)?),
        [m, alpha] if m == "level" => {
            let alpha = level(alpha)?;
            if alpha.is_zero() {
                return Err(usage("the level metric needs alpha > 0"));
            }
            (format!("level {alpha}"), cut_distance(&a.alpha_cut(&alpha), &b.alpha_cut(&alpha)))
        }
        _ => return Err(usage(format!("unknown metric `{}`", metric.join(" ")))),
    };
    if as_json {
        emit_json(&json!({
            "query": "dist",
            "inputs": {"file": file, "u": u, "v": v, "metric": name},
            "value": value,
        }));
    } else {
        println!("{value}");
    }
    Ok(())
}

fn seq(file: &Path, name: &str, limit: &str, mode: Mode, nmax: u64, tol: f64, as_json: bool) -> Outcome {
    let doc = load(file)?;
    let s: FuzzySeq = doc.sequence(name).map_err(input)?;
    let u = doc.fuzzy_set(limit).map_err(input)?;
    let sched = schedule(nmax)?.restricted(s.n_min);
    let mut verdict = serde_json::Map::new();
    let mut trace = Value::Null;
    if mode != Mode::Gamma {
        let v = verdict_hend(&hend_trace(&s, &u, &sched).map_err(input)?, tol);
        if !as_json {
            for p in &v.trace {
                println!("n = {:>8}  hend = {}", p.n, p.value);
            }
            println!("hend: {}", v.status);
        }
        verdict.insert("hend".into(), json!(v.status));
        trace = json!(v.trace);
    }
    if mode != Mode::Hend {
        let opts = GammaOptions { tol, ..GammaOptions::default() };
        let g = gamma_test(&s, &u, &sched, &opts).map_err(input)?;
        if !as_json {
            println!("gamma: {}", g.status);
        }
        verdict.insert("gamma".into(), json!(g.status));
        verdict.insert("gamma_levels".into(), json!(g.levels));
    }
    let st = s_trace(&s, &sched, tol).map_err(input)?;
    if as_json {
        emit_json(&json!({
            "query": "seq",
            "inputs": {"file": file, "seq": name, "limit": limit, "schedule": sched.indices(), "tol": tol},
            "verdict": verdict,
            "trace": trace,
            "s_trace": st,
        }));
    }
    Ok(())
}

fn check(file: &Path, name: &str, eps: &[String], nmax: u64, as_json: bool) -> Outcome {
    let doc = load(file)?;
    let s = doc.sequence(name).map_err(input)?;
    let eps = if eps.is_empty() {
        default_eps()
    } else {
        eps.iter().map(|e| level(e)).collect::<Result<Vec<_>, _>>()?
    };
    if eps.iter().any(Level::is_zero) {
        return Err(usage("eps levels must be positive"));
    }
    let sched = schedule(nmax)?.restricted(s.n_min);
    let report = connectedness_condition(&s, &eps, &sched).map_err(input)?;
    if as_json {
        emit_json(&json!({
            "query": "check",
            "inputs": {"file": file, "seq": name, "schedule": sched.indices()},
            "verdict": if report.satisfied { "holds" } else { "fails" },
            "witnesses": report.witnesses,
        }));
    } else {
        for w in &report.witnesses {
            let delta = w.delta.as_ref().map_or("-".to_string(), |d| d.to_string());
            let n = w.n.map_or("-".to_string(), |n| n.to_string());
            let mark = if w.satisfied { "ok" } else { "FAIL" };
            println!("eps = {:<8} delta = {:<12} from n = {:<6} {mark}", w.eps.to_string(), delta, n);
        }
        println!("connectedness condition: {}", if report.satisfied { "holds" } else { "fails" });
    }
    if report.satisfied {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn classify(file: &Path, name: &str, pair: Option<&str>, xi: Option<&str>, nmax: u64, tol: f64) -> Outcome {
    let doc = load(file)?;
    let entry = doc.get(name).ok_or_else(|| input(format!("no definition named `{name}`")))?;
    if let Definition::SliceSet(_) = entry.def {
        if pair.is_some() {
            return Err(usage("--pair needs a fuzzy set"));
        }
        let d = doc.slice_set(name).map_err(input)?;
        let compact = d.is_compact().map_err(input)?;
        let connected = d.is_connected(&Engine::Structural).map_err(input)?;
        emit_json(&json!({
            "query": "classify",
            "inputs": {"file": file, "name": name},
            "value": {"compact": compact, "connected": connected},
        }));
        return Ok(());
    }
    let u: StepFuzzySet = doc.fuzzy_set(name).map_err(input)?;
    let value = match pair {
        None => json!(u.classify()),
        Some(p) => {
            let s = doc.sequence(p).map_err(input)?;
            let xi = xi.map(level).transpose()?;
            let sched = schedule(nmax)?.restricted(s.n_min);
            json!(classify_pair(&u, &s, &sched, xi.as_ref(), tol).map_err(input)?)
        }
    };
    emit_json(&json!({
        "query": "classify",
        "inputs": {"file": file, "name": name, "pair": pair, "xi": xi},
        "value": value,
    }));
    Ok(())
}

fn emit(file: &Path, name: &str, resolution: &str, window: Option<&[String]>, format: Format) -> Outcome {
    let doc = load(file)?;
    let u = doc.fuzzy_set(name).map_err(input)?;
    let h = real(resolution)?;
    let window = match window {
        Some([a, b]) => {
            let (a, b) = (real(a)?, real(b)?);
            if a > b {
                return Err(usage("--window needs A <= B"));
            }
            Some(Interval::closed(a, b))
        }
        _ => None,
    };
    match format {
        Format::Csv => write_out(&endograph_csv(&u, &h, window.as_ref()).map_err(|e| usage(e.to_string()))?),
        Format::Json => emit_json(&endograph_json(&u, &h, window.as_ref()).map_err(|e| usage(e.to_string()))?),
    }
    Ok(())
}

fn run_verify(filter: Option<&str>) -> Outcome {
    let results = verify::run(filter);
    if results.is_empty() {
        return Err(usage(format!("no check matches `{}`", filter.unwrap_or_default())));
    }
    print!("{}", verify::table(&results));
    if results.iter().all(|r| r.passed) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let outcome = match &cli.command {
        Command::Dist { file, u, v, metric, json } => dist(file, u, v, metric, *json),
        Command::Seq { file, seq: s, limit, mode, nmax, tol, json } => seq(file, s, limit, *mode, *nmax, *tol, *json),
        Command::Check { file, seq, eps, nmax, json, .. } => check(file, seq, eps, *nmax, *json),
        Command::Classify { file, name, pair, xi, nmax, tol } => {
            classify(file, name, pair.as_deref(), xi.as_deref(), *nmax, *tol)
        }
        Command::Emit { file, name, resolution, window, format, .. } => {
            emit(file, name, resolution, window.as_deref(), *format)
        }
        Command::Verify { filter } => run_verify(filter.as_deref()),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("fuzzend: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Input(m)) => {
            eprintln!("fuzzend: {m}");
            ExitCode::from(3)
        }
    }
}
