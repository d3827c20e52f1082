//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export takes the `.fz` source currently in the editor and returns a
//! JSON string; errors come back as a thrown `Error` with the message. The
//! `*_json` functions hold the logic so they also run in native tests.

use fuzzend::convergence::{gamma_test, hend_trace, verdict_hend, GammaOptions, Schedule, DEFAULT_TOL};
use fuzzend::endograph::{hend, hsend};
use fuzzend::num::parse_real;
use fuzzend::toolkit::emit::endograph_json;
use fuzzend::toolkit::{parse, Definition, Document};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Schedules longer than this freeze the page for too long.
pub const MAX_NMAX: u64 = 1 << 16;

fn document(source: &str) -> Result<Document, String> {
    parse(source).map_err(|e| e.to_string())
}

pub fn names_json(source: &str) -> Result<String, String> {
    let doc = document(source)?;
    let of_kind = |pick: fn(&Definition) -> bool| -> Vec<&str> {
        doc.entries().iter().filter(|e| pick(&e.def)).map(|e| e.name.as_str()).collect()
    };
    let v = json!({
        "fuzzysets": of_kind(|d| matches!(d, Definition::FuzzySet(_))),
        "sequences": of_kind(|d| matches!(d, Definition::Sequence { .. })),
    });
    Ok(v.to_string())
}

pub fn plot_json(source: &str, name: &str, resolution: &str) -> Result<String, String> {
    let doc = document(source)?;
    let u = doc.fuzzy_set(name).map_err(|e| e.to_string())?;
    let h = parse_real(resolution).ok_or_else(|| format!("`{resolution}` is not a number"))?;
    let v = endograph_json(&u, &h, None).map_err(|e| e.to_string())?;
    Ok(v.to_string())
}

pub fn distance_json(source: &str, u: &str, v: &str) -> Result<String, String> {
    let doc = document(source)?;
    let a = doc.fuzzy_set(u).map_err(|e| e.to_string())?;
    let b = doc.fuzzy_set(v).map_err(|e| e.to_string())?;
    let send = match hsend(&a, &b) {
        Ok(d) => json!(d),
        Err(e) => json!({ "error": e.to_string() }),
    };
    let d = hend(&a, &b);
    Ok(json!({ "endograph": d, "endograph_approx": d.to_f64(), "sendograph": send }).to_string())
}

pub fn trace_json(source: &str, seq: &str, limit: &str, nmax: u64) -> Result<String, String> {
    if nmax == 0 || nmax > MAX_NMAX {
        return Err(format!("nmax must be in 1..={MAX_NMAX}"));
    }
    let doc = document(source)?;
    let s = doc.sequence(seq).map_err(|e| e.to_string())?;
    let u = doc.fuzzy_set(limit).map_err(|e| e.to_string())?;
    let sched = Schedule::geometric(nmax).restricted(s.n_min);
    let trace = hend_trace(&s, &u, &sched).map_err(|e| e.to_string())?;
    let verdict = verdict_hend(&trace, DEFAULT_TOL);
    let gamma = gamma_test(&s, &u, &sched, &GammaOptions::default()).map_err(|e| e.to_string())?;
    let points: Vec<_> = trace.iter().map(|p| json!({ "n": p.n, "value": p.value, "approx": p.value.to_f64() })).collect();
    Ok(json!({ "hend": verdict.status, "gamma": gamma.status, "note": verdict.note, "trace": points }).to_string())
}

fn thrown(e: String) -> JsError {
    JsError::new(&e)
}

#[wasm_bindgen]
pub fn corpus_source() -> String {
    fuzzend::toolkit::corpus::SOURCE.to_string()
}

#[wasm_bindgen]
pub fn names(source: &str) -> Result<String, JsError> {
    names_json(source).map_err(thrown)
}

#[wasm_bindgen]
pub fn plot(source: &str, name: &str, resolution: &str) -> Result<String, JsError> {
    plot_json(source, name, resolution).map_err(thrown)
}

#[wasm_bindgen]
pub fn distance(source: &str, u: &str, v: &str) -> Result<String, JsError> {
    distance_json(source, u, v).map_err(thrown)
}

#[wasm_bindgen]
pub fn trace(source: &str, seq: &str, limit: &str, nmax: u32) -> Result<String, JsError> {
    trace_json(source, seq, limit, u64::from(nmax)).map_err(thrown)
}
