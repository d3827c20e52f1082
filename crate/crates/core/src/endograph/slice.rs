//! Band-wise subsets of `R x [0, 1]` whose horizontal slices are interval
//! unions with endpoints given as expressions in `alpha`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::EndographError;
use crate::expr::{Env, Expr, LevelRange, PartExpr, SetExpr};
use crate::fuzzy_set::StepFuzzySet;
use crate::num::{int, ExtReal, Level, Real};
use crate::spatial::{is_bounded, Interval, IntervalUnion};
use crate::union_find::UnionFind;

/// How the slices of a band change as `alpha` decreases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Monotonicity {
    Constant,
    /// slices grow as `alpha` decreases
    ExpandingDown,
    /// slices grow as `alpha` increases
    ExpandingUp,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceBand {
    pub range: LevelRange,
    pub set: SetExpr,
}

/// Set `D ⊆ R x [0, 1]` described band by band. Bands are sorted by
/// descending level and cover `[f_D, S_D]` without gaps or overlaps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceSet {
    bands: Vec<SliceBand>,
}

/// Which connectedness decision procedure to run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Engine {
    Structural,
    Grid(Real),
}

impl SliceSet {
    pub fn empty() -> SliceSet {
        SliceSet { bands: Vec::new() }
    }

    /// Validates level ranges and the tiling; slices must be valid at the
    /// band ends and at interior sample levels.
    pub fn new(mut bands: Vec<SliceBand>) -> Result<SliceSet, EndographError> {
        for band in &bands {
            let r = &band.range;
            if r.is_empty() || r.lo < Real::zero() || r.hi > Real::from_integer(1.into()) {
                return Err(EndographError::BadBand(format!("level range {r} is empty or outside [0, 1]")));
            }
            if band.set.uses(crate::expr::Var::N) {
                return Err(EndographError::BadBand("slice endpoints may only depend on alpha".into()));
            }
        }
        bands.sort_by(|a, b| b.range.hi.cmp(&a.range.hi));
        for w in bands.windows(2) {
            let (upper, lower) = (&w[0].range, &w[1].range);
            if upper.lo != lower.hi || upper.lo_closed == lower.hi_closed {
                return Err(EndographError::BadBand(format!("bands {upper} and {lower} must meet at one shared level")));
            }
        }
        let set = SliceSet { bands };
        for band in &set.bands {
            for a in sample_levels(&band.range) {
                set.eval_band(band, &a)?;
            }
        }
        Ok(set)
    }

    pub fn bands(&self) -> &[SliceBand] {
        &self.bands
    }

    pub fn is_empty(&self) -> bool {
        self.bands.is_empty()
    }

    /// `f_D`, the lowest level of the set (`None` when empty).
    pub fn f_value(&self) -> Option<&Real> {
        self.bands.last().map(|b| &b.range.lo)
    }

    /// `S_D`, the highest level of the set (`None` when empty).
    pub fn s_value(&self) -> Option<&Real> {
        self.bands.first().map(|b| &b.range.hi)
    }

    fn eval_band(&self, band: &SliceBand, alpha: &Real) -> Result<IntervalUnion, EndographError> {
        band.set
            .eval(&Env::level(alpha.clone()))?
            .ok_or_else(|| EndographError::BadBand(format!("a slice of band {} has crossed endpoints", band.range)))
    }

    /// `⟨D⟩_alpha`.
    pub fn slice(&self, alpha: &Level) -> Result<IntervalUnion, EndographError> {
        match self.bands.iter().find(|b| b.range.contains(alpha.value())) {
            Some(band) => self.eval_band(band, alpha.value()),
            None => Ok(IntervalUnion::empty()),
        }
    }

    /// Projection onto the line is bounded. For closed `D` this is the same
    /// as compactness in `R x [0, 1]`.
    pub fn is_compact(&self) -> Result<bool, EndographError> {
        for band in &self.bands {
            if let SetExpr::Line = band.set {
                return Ok(false);
            }
            if let SetExpr::Parts(parts) = &band.set {
                for p in parts {
                    if p.lo.literal_infinity().is_some() || p.hi.literal_infinity().is_some() {
                        return Ok(false);
                    }
                }
            }
            for a in sample_levels(&band.range) {
                if !is_bounded(&self.eval_band(band, &a)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn is_connected(&self, engine: &Engine) -> Result<bool, EndographError> {
        match engine {
            Engine::Structural => self.connected_structural(),
            Engine::Grid(h) => self.connected_grid(h),
        }
    }

    /// Monotonicity tag of every part of a band; `NonMonotoneBand` when a
    /// part shifts instead of growing or shrinking.
    pub fn band_monotonicity(&self, index: usize) -> Result<Vec<Monotonicity>, EndographError> {
        let band = &self.bands[index];
        match &band.set {
            SetExpr::Parts(parts) => {
                let levels = sample_levels(&band.range);
                parts.iter().map(|p| part_monotonicity(p, &levels, &band.range)).collect()
            }
            SetExpr::Line => Ok(vec![Monotonicity::Constant]),
            SetExpr::Empty => Ok(Vec::new()),
        }
    }

    fn connected_structural(&self) -> Result<bool, EndographError> {
        // one node per (band, part); a part is the region between two
        // continuous endpoint curves, hence connected on its own
        let mut nodes: Vec<Vec<usize>> = Vec::with_capacity(self.bands.len());
        let mut count = 0;
        for band in &self.bands {
            let parts = match &band.set {
                SetExpr::Parts(parts) => parts.len(),
                SetExpr::Line => 1,
                SetExpr::Empty => 0,
            };
            nodes.push((count..count + parts).collect());
            count += parts;
        }
        let mut uf = UnionFind::new(count);

        for (i, band) in self.bands.iter().enumerate() {
            // each part is connected by itself when its endpoints are monotone;
            // two parts are joined when their slices meet at a sample level
            self.band_monotonicity(i)?;
            for level in sample_levels(&band.range) {
                let pieces = self.band_parts_at(band, &level)?;
                for a in 0..pieces.len() {
                    for b in a + 1..pieces.len() {
                        if pieces[a].intersects(&pieces[b]) {
                            uf.union(nodes[i][a], nodes[i][b]);
                        }
                    }
                }
            }
        }

        // glue across each shared boundary level, using the slice of the
        // closed side and the limit of the open side
        for i in 0..self.bands.len().saturating_sub(1) {
            let (upper, lower) = (&self.bands[i], &self.bands[i + 1]);
            let beta = &upper.range.lo;
            let top = self.band_parts_at(upper, beta)?;
            let bottom = self.band_parts_at(lower, beta)?;
            for (a, p) in top.iter().enumerate() {
                for (b, q) in bottom.iter().enumerate() {
                    if p.intersects(q) {
                        uf.union(nodes[i][a], nodes[i + 1][b]);
                    }
                }
            }
        }
        Ok(uf.classes() <= 1)
    }

    /// Evaluated parts of a band at `alpha`, one interval per listed part
    /// (not merged), so indices line up with the structural nodes.
    fn band_parts_at(&self, band: &SliceBand, alpha: &Real) -> Result<Vec<Interval>, EndographError> {
        let env = Env::level(alpha.clone());
        match &band.set {
            SetExpr::Empty => Ok(Vec::new()),
            SetExpr::Line => Ok(vec![Interval::line()]),
            SetExpr::Parts(parts) => parts
                .iter()
                .map(|p| {
                    p.eval(&env)?
                        .ok_or_else(|| EndographError::BadBand(format!("a slice of band {} has crossed endpoints", band.range)))
                })
                .collect(),
        }
    }

    /// Lattice rows `alpha = j h`; each row is a list of index runs and runs
    /// in adjacent rows are joined when they touch diagonally or directly.
    fn connected_grid(&self, h: &Real) -> Result<bool, EndographError> {
        if *h <= Real::zero() {
            return Err(EndographError::BadResolution);
        }
        let (lo, hi) = match (self.f_value(), self.s_value()) {
            (Some(lo), Some(hi)) => (lo.clone(), hi.clone()),
            _ => return Ok(true),
        };
        let first = to_i64((&lo / h).ceil().to_integer());
        let last = to_i64((&hi / h).floor().to_integer());

        let mut rows: Vec<(i64, IntervalUnion)> = Vec::new();
        for j in first..=last {
            let alpha = int(j) * h;
            if let Some(band) = self.bands.iter().find(|b| b.range.contains(&alpha)) {
                rows.push((j, self.eval_band(band, &alpha)?));
            }
        }
        let extent = rows.iter().flat_map(|(_, s)| s.finite_endpoints()).fold(None, |acc: Option<(Real, Real)>, x| {
            Some(match acc {
                None => (x.clone(), x),
                Some((a, b)) => (a.min(x.clone()), b.max(x)),
            })
        });
        let one = int(1);
        let (wlo, whi) = extent.map_or((-one.clone(), one.clone()), |(a, b)| (a - &one, b + &one));
        let window = Interval::closed(wlo, whi);

        let mut runs: Vec<(i64, i64, i64)> = Vec::new();
        for (j, set) in &rows {
            for part in set.parts() {
                let Some(clipped) = part.intersection(&window) else { continue };
                let (a, b) = (clipped.lo().finite().expect("bounded"), clipped.hi().finite().expect("bounded"));
                let mut first = to_i64((a / h).ceil().to_integer());
                let mut last = to_i64((b / h).floor().to_integer());
                if first > last {
                    // thinner than the lattice: keep the nearest column
                    first = to_i64((a / h).round().to_integer());
                    last = first;
                }
                runs.push((*j, first, last));
            }
        }
        if runs.is_empty() {
            return Ok(true);
        }
        let mut uf = UnionFind::new(runs.len());
        let mut row_start = 0;
        while row_start < runs.len() {
            let j = runs[row_start].0;
            let mut row_end = row_start;
            while row_end < runs.len() && runs[row_end].0 == j {
                row_end += 1;
            }
            // runs of the previous row are the contiguous block before row_start
            let mut k = row_start;
            while k > 0 && runs[k - 1].0 == j - 1 {
                k -= 1;
            }
            for a in k..row_start {
                for b in row_start..row_end {
                    let (_, a0, a1) = runs[a];
                    let (_, b0, b1) = runs[b];
                    if a0 <= b1 + 1 && b0 <= a1 + 1 {
                        uf.union(a, b);
                    }
                }
            }
            row_start = row_end;
        }
        Ok(uf.classes() <= 1)
    }
}

fn to_i64(v: BigInt) -> i64 {
    v.to_i64().expect("lattice index out of range")
}

/// Ends of the range plus the midpoint and quarter points.
fn sample_levels(range: &LevelRange) -> Vec<Real> {
    let width = &range.hi - &range.lo;
    let mut out = vec![range.lo.clone()];
    for k in 1..4 {
        out.push(&range.lo + &width * crate::num::ratio(k, 4));
    }
    out.push(range.hi.clone());
    out.dedup();
    out
}

fn part_monotonicity(part: &PartExpr, levels: &[Real], range: &LevelRange) -> Result<Monotonicity, EndographError> {
    let trend = |e: &Expr| -> Result<i8, EndographError> {
        let vals: Vec<ExtReal> = levels
            .iter()
            .map(|a| e.eval(&Env::level(a.clone())))
            .collect::<Result<_, _>>()?;
        let up = vals.windows(2).any(|w| w[1] > w[0]);
        let down = vals.windows(2).any(|w| w[1] < w[0]);
        Ok(match (up, down) {
            (false, false) => 0,
            (true, false) => 1,
            (false, true) => -1,
            (true, true) => 2,
        })
    };
    // trends are with respect to increasing alpha
    match (trend(&part.lo)?, trend(&part.hi)?) {
        (0, 0) => Ok(Monotonicity::Constant),
        (1 | 0, -1 | 0) => Ok(Monotonicity::ExpandingDown),
        (-1 | 0, 1 | 0) => Ok(Monotonicity::ExpandingUp),
        _ => Err(EndographError::NonMonotoneBand(range.to_string())),
    }
}

/// `end_r^t u = end u ∩ ([u]_r x [r, t])` as constant bands.
pub fn truncate(u: &StepFuzzySet, r: &Level, t: &Level) -> Result<SliceSet, EndographError> {
    if r > t {
        return Err(EndographError::BadRange);
    }
    let k = u.len();
    let mut bands = Vec::new();
    for j in 0..k {
        // band j covers (a_{j+1}, a_j], the lowest one [0, a_K]
        let floor = if j + 1 < k { u.thresholds()[j + 1].value().clone() } else { Real::zero() };
        let floor_closed = j + 1 == k;
        let top = u.thresholds()[j].value();
        let hi = top.min(t.value()).clone();
        let (lo, lo_closed) = if r.value() > &floor || (r.value() == &floor && floor_closed) {
            (r.value().clone(), true)
        } else {
            (floor, false)
        };
        let range = LevelRange { lo, lo_closed, hi, hi_closed: true };
        if range.is_empty() {
            continue;
        }
        bands.push(SliceBand { range, set: SetExpr::constant(&u.cuts()[j]) });
    }
    SliceSet::new(bands)
}

impl fmt::Display for SliceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bands.is_empty() {
            return f.write_str("empty");
        }
        for (i, b) in self.bands.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{}: {}", b.range, b.set)?;
        }
        Ok(())
    }
}
