//! Lattice discretization used as an independent oracle for the exact metrics.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{Interval, IntervalUnion, SpatialError};
use crate::num::{int, ExtReal, Real};

/// Metric on lattice points. `Sum` is the `|dx| + |dy| + ...` metric, which on
/// `R x [0,1]` is exactly the endograph metric `d(x,y) + |a - b|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeMetric {
    Sum,
    Euclidean,
}

/// Finite set of points of `h * Z^m`, stored as integer coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct GridSet {
    dim: usize,
    spacing: Real,
    metric: LatticeMetric,
    // flattened, lexicographically sorted, deduplicated
    coords: Vec<i64>,
}

impl GridSet {
    pub fn from_points<I>(dim: usize, spacing: Real, metric: LatticeMetric, points: I) -> GridSet
    where
        I: IntoIterator<Item = Vec<i64>>,
    {
        assert!(dim >= 1, "grid dimension must be positive");
        let mut pts: Vec<Vec<i64>> = points.into_iter().inspect(|p| assert_eq!(p.len(), dim)).collect();
        pts.sort();
        pts.dedup();
        GridSet { dim, spacing, metric, coords: pts.into_iter().flatten().collect() }
    }

    pub(crate) fn from_sorted_flat(dim: usize, spacing: Real, metric: LatticeMetric, coords: Vec<i64>) -> GridSet {
        debug_assert_eq!(coords.len() % dim, 0);
        GridSet { dim, spacing, metric, coords }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn spacing(&self) -> &Real {
        &self.spacing
    }

    pub fn metric(&self) -> LatticeMetric {
        self.metric
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Lattice indices of every point.
    pub fn indices(&self) -> impl Iterator<Item = &[i64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    /// Coordinates as exact rationals.
    pub fn points(&self) -> impl Iterator<Item = Vec<Real>> + '_ {
        self.indices()
            .map(move |p| p.iter().map(|&k| int(k) * &self.spacing).collect())
    }
}

/// Lattice indices `k` with `k * h` in `[lo, hi]`.
pub(crate) fn index_range(part: &Interval, h: &Real) -> Option<(i64, i64)> {
    let lo = part.lo().finite()?;
    let hi = part.hi().finite()?;
    let first = big_to_i64((lo / h).ceil().to_integer());
    let last = big_to_i64((hi / h).floor().to_integer());
    (first <= last).then_some((first, last))
}

fn big_to_i64(v: BigInt) -> i64 {
    v.to_i64().expect("lattice index out of range")
}

pub(crate) fn check_window(h: &Real, window: &Interval) -> Result<(), SpatialError> {
    if !h.is_positive() {
        return Err(SpatialError::BadResolution);
    }
    if !window.is_bounded() {
        return Err(SpatialError::UnboundedWindow);
    }
    Ok(())
}

/// Lattice indices of `S ∩ window`, ascending.
pub(crate) fn lattice_indices(set: &IntervalUnion, h: &Real, window: &Interval) -> Vec<(i64, i64)> {
    set.parts()
        .iter()
        .filter_map(|p| p.intersection(window))
        .filter_map(|p| index_range(&p, h))
        .collect()
}

/// All points of `h * Z` inside `S ∩ window`.
pub fn grid_of(set: &IntervalUnion, h: &Real, window: &Interval) -> Result<GridSet, SpatialError> {
    check_window(h, window)?;
    let coords = lattice_indices(set, h, window)
        .into_iter()
        .flat_map(|(a, b)| a..=b)
        .collect();
    Ok(GridSet::from_sorted_flat(1, h.clone(), LatticeMetric::Sum, coords))
}

/// Exact Hausdorff distance between two finite lattice sets.
///
/// One empty operand gives `+inf`, two give `0`. For `grid_of(U)` and
/// `grid_of(V)` built on a window that contains both sets with margin the
/// result is within `2h` of the exact `H(U, V)`.
pub fn hausdorff_grid(a: &GridSet, b: &GridSet) -> Result<ExtReal, SpatialError> {
    if a.dim != b.dim {
        return Err(SpatialError::DimensionMismatch { left: a.dim, right: b.dim });
    }
    if a.spacing != b.spacing || a.metric != b.metric {
        return Err(SpatialError::IncompatibleGrids);
    }
    match (a.is_empty(), b.is_empty()) {
        (true, true) => return Ok(ExtReal::zero()),
        (true, false) | (false, true) => return Ok(ExtReal::PosInf),
        _ => {}
    }
    let h = &a.spacing;
    if a.metric == LatticeMetric::Euclidean && a.dim > 1 {
        let d2 = directed_brute(a, b, sq_euclid).max(directed_brute(b, a, sq_euclid));
        let units = (d2 as f64).sqrt();
        let value = Real::from_float(units * crate::num::to_f64(h)).unwrap_or_else(Real::zero);
        return Ok(ExtReal::Finite(value));
    }
    let units = match a.dim {
        1 => directed_sorted_1d(&a.coords, &b.coords).max(directed_sorted_1d(&b.coords, &a.coords)),
        2 if dense_box_cells(a, b) <= DENSE_LIMIT => {
            let (da, db) = transform_pair(a, b);
            da.max(db)
        }
        _ => directed_brute(a, b, l1).max(directed_brute(b, a, l1)),
    };
    Ok(ExtReal::Finite(int(units) * h))
}

const DENSE_LIMIT: u64 = 80_000_000;

fn l1(p: &[i64], q: &[i64]) -> i64 {
    p.iter().zip(q).map(|(x, y)| (x - y).abs()).sum()
}

fn sq_euclid(p: &[i64], q: &[i64]) -> i64 {
    p.iter().zip(q).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn directed_brute(a: &GridSet, b: &GridSet, metric: fn(&[i64], &[i64]) -> i64) -> i64 {
    a.indices()
        .map(|p| b.indices().map(|q| metric(p, q)).min().unwrap_or(i64::MAX))
        .max()
        .unwrap_or(0)
}

fn directed_sorted_1d(a: &[i64], b: &[i64]) -> i64 {
    let mut worst = 0;
    for &x in a {
        let pos = b.partition_point(|&y| y < x);
        let mut best = i64::MAX;
        if pos < b.len() {
            best = best.min(b[pos] - x);
        }
        if pos > 0 {
            best = best.min(x - b[pos - 1]);
        }
        worst = worst.max(best);
    }
    worst
}

/// Box of two non-empty planar grids. Points are sorted, so the first axis
/// range comes from the ends of each coordinate list.
fn bounding_box(a: &GridSet, b: &GridSet) -> [(i64, i64); 2] {
    let mut bx = [(i64::MAX, i64::MIN); 2];
    for g in [a, b] {
        let n = g.coords.len();
        bx[0].0 = bx[0].0.min(g.coords[0]);
        bx[0].1 = bx[0].1.max(g.coords[n - 2]);
        for &y in g.coords.iter().skip(1).step_by(2) {
            bx[1].0 = bx[1].0.min(y);
            bx[1].1 = bx[1].1.max(y);
        }
    }
    bx
}

fn dense_box_cells(a: &GridSet, b: &GridSet) -> u64 {
    let [(x0, x1), (y0, y1)] = bounding_box(a, b);
    ((x1 - x0 + 1) as u64) * ((y1 - y0 + 1) as u64)
}

/// Directed distances `(H*(a,b), H*(b,a))` in lattice units via two-pass L1
/// distance transforms over the common bounding box.
fn transform_pair(a: &GridSet, b: &GridSet) -> (i64, i64) {
    let [(x0, x1), (y0, y1)] = bounding_box(a, b);
    let w = (x1 - x0 + 1) as usize;
    let hgt = (y1 - y0 + 1) as usize;
    let cell = |p: &[i64]| (p[0] - x0) as usize * hgt + (p[1] - y0) as usize;

    let transform = |target: &GridSet| -> Vec<u32> {
        let mut d = vec![u32::MAX / 2; w * hgt];
        for p in target.indices() {
            d[cell(p)] = 0;
        }
        // the L1 transform separates into sweeps along each axis
        for col in d.chunks_exact_mut(hgt) {
            for j in 1..hgt {
                col[j] = col[j].min(col[j - 1] + 1);
            }
            for j in (1..hgt).rev() {
                col[j - 1] = col[j - 1].min(col[j] + 1);
            }
        }
        for i in 1..w {
            let (done, rest) = d.split_at_mut(i * hgt);
            let prev = &done[(i - 1) * hgt..];
            for (c, p) in rest[..hgt].iter_mut().zip(prev) {
                *c = (*c).min(p + 1);
            }
        }
        for i in (1..w).rev() {
            let (head, tail) = d.split_at_mut(i * hgt);
            let cur = &mut head[(i - 1) * hgt..];
            for (c, p) in cur.iter_mut().zip(&tail[..hgt]) {
                *c = (*c).min(p + 1);
            }
        }
        d
    };

    let to_b = transform(b);
    let ab = a.indices().map(|p| to_b[cell(p)]).max().unwrap_or(0);
    drop(to_b);
    let to_a = transform(a);
    let ba = b.indices().map(|p| to_a[cell(p)]).max().unwrap_or(0);
    (i64::from(ab), i64::from(ba))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::ratio;
    use crate::spatial::hausdorff;

    fn iu(parts: &[(i64, i64)]) -> IntervalUnion {
        parts.iter().map(|&(a, b)| Interval::closed(int(a), int(b))).collect()
    }

    #[test]
    fn grid_of_examples() {
        let g = grid_of(&iu(&[(0, 1)]), &ratio(1, 2), &Interval::closed(int(-1), int(2))).unwrap();
        assert_eq!(g.indices().map(|p| p[0]).collect::<Vec<_>>(), vec![0, 1, 2]);
        let g = grid_of(&IntervalUnion::empty(), &ratio(1, 2), &Interval::closed(int(-1), int(2))).unwrap();
        assert!(g.is_empty());
        let s = IntervalUnion::normalize(vec![Interval::closed(int(0), ratio(3, 10))]);
        let g = grid_of(&s, &ratio(1, 4), &Interval::closed(int(0), int(1))).unwrap();
        assert_eq!(g.points().map(|p| p[0].clone()).collect::<Vec<_>>(), vec![int(0), ratio(1, 4)]);
    }

    #[test]
    fn grid_of_errors() {
        let w = Interval::closed(int(0), int(1));
        assert_eq!(grid_of(&iu(&[(0, 1)]), &int(0), &w), Err(SpatialError::BadResolution));
        assert_eq!(
            grid_of(&iu(&[(0, 1)]), &ratio(1, 2), &Interval::ray_up(int(0))),
            Err(SpatialError::UnboundedWindow)
        );
    }

    #[test]
    fn small_point_sets() {
        let h = int(1);
        let a = GridSet::from_points(1, h.clone(), LatticeMetric::Sum, vec![vec![0], vec![1]]);
        assert_eq!(hausdorff_grid(&a, &a.clone()).unwrap(), ExtReal::zero());
        let a = GridSet::from_points(1, h.clone(), LatticeMetric::Sum, vec![vec![0]]);
        let b = GridSet::from_points(1, h.clone(), LatticeMetric::Sum, vec![vec![3]]);
        assert_eq!(hausdorff_grid(&a, &b).unwrap(), ExtReal::Finite(int(3)));
        let c = GridSet::from_points(2, h, LatticeMetric::Sum, vec![vec![0, 0]]);
        assert!(matches!(hausdorff_grid(&a, &c), Err(SpatialError::DimensionMismatch { .. })));
    }

    #[test]
    fn fine_grid_tracks_exact_value() {
        let h = ratio(1, 1000);
        let w = Interval::closed(int(-1), int(5));
        let u = iu(&[(0, 1)]);
        let v = iu(&[(2, 4)]);
        let g = hausdorff_grid(&grid_of(&u, &h, &w).unwrap(), &grid_of(&v, &h, &w).unwrap()).unwrap();
        let exact = hausdorff(&u, &v).unwrap();
        let diff = (g.finite().unwrap() - exact.finite().unwrap()).abs();
        assert!(diff <= ratio(2, 1000));
    }

    #[test]
    fn dense_transform_matches_brute_force() {
        let h = int(1);
        let pts_a: Vec<Vec<i64>> = vec![vec![0, 0], vec![5, 2], vec![3, 7], vec![9, 9]];
        let pts_b: Vec<Vec<i64>> = vec![vec![1, 1], vec![8, 3], vec![2, 9]];
        let a = GridSet::from_points(2, h.clone(), LatticeMetric::Sum, pts_a);
        let b = GridSet::from_points(2, h, LatticeMetric::Sum, pts_b);
        let dense = transform_pair(&a, &b);
        assert_eq!(dense.0, directed_brute(&a, &b, l1));
        assert_eq!(dense.1, directed_brute(&b, &a, l1));
    }
}
