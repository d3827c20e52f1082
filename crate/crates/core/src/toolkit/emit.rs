//! Plot data for endographs: lattice samples as CSV or JSON.

use serde_json::{json, Value};

use crate::endograph::{complex_grid, default_window, endograph, EndographError};
use crate::fuzzy_set::StepFuzzySet;
use crate::num::{terminating_decimal, to_f64, ExtReal, Real};
use crate::spatial::{GridSet, Interval};

/// Points of `end u` on the `h`-lattice inside `window x [0, 1]`, ordered
/// by level and then by position. `window` defaults to the finite data of
/// `u` widened by 1.
pub fn endograph_points(u: &StepFuzzySet, h: &Real, window: Option<&Interval>) -> Result<(Interval, GridSet), EndographError> {
    let e = endograph(u);
    let window = window.cloned().unwrap_or_else(|| default_window(&[&e]));
    let grid = complex_grid(&e, h, &window)?;
    Ok((window, grid))
}

fn sorted_rows(grid: &GridSet) -> Vec<[i64; 2]> {
    let mut rows: Vec<[i64; 2]> = grid.indices().map(|p| [p[1], p[0]]).collect();
    rows.sort_unstable();
    rows
}

fn coord(k: i64, h: &Real) -> String {
    let v = Real::from_integer(k.into()) * h;
    terminating_decimal(&v).unwrap_or_else(|| format!("{}", to_f64(&v)))
}

/// CSV with header `x,alpha`.
pub fn endograph_csv(u: &StepFuzzySet, h: &Real, window: Option<&Interval>) -> Result<String, EndographError> {
    let (_, grid) = endograph_points(u, h, window)?;
    let mut out = String::from("x,alpha\n");
    for [j, i] in sorted_rows(&grid) {
        out.push_str(&coord(i, h));
        out.push(',');
        out.push_str(&coord(j, h));
        out.push('\n');
    }
    Ok(out)
}

fn ext_json(x: &ExtReal) -> Value {
    match x {
        ExtReal::Finite(v) => json!(to_f64(v)),
        other => json!(other.to_string()),
    }
}

/// Versioned JSON: the prism structure of `end u` plus the lattice samples.
pub fn endograph_json(u: &StepFuzzySet, h: &Real, window: Option<&Interval>) -> Result<Value, EndographError> {
    let (window, grid) = endograph_points(u, h, window)?;
    let prisms: Vec<Value> = endograph(u)
        .prisms()
        .iter()
        .map(|p| {
            let parts: Vec<Value> = p.set.parts().iter().map(|iv| json!([ext_json(iv.lo()), ext_json(iv.hi())])).collect();
            json!({ "set": parts, "top": to_f64(p.top.value()) })
        })
        .collect();
    let points: Vec<Value> = sorted_rows(&grid)
        .into_iter()
        .map(|[j, i]| json!([to_f64(&(Real::from_integer(i.into()) * h)), to_f64(&(Real::from_integer(j.into()) * h))]))
        .collect();
    Ok(json!({
        "format": 1,
        "kind": "endograph",
        "resolution": to_f64(h),
        "window": [ext_json(window.lo()), ext_json(window.hi())],
        "base_line": true,
        "prisms": prisms,
        "points": points,
    }))
}
