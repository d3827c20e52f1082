//! Endographs, sendographs and truncated endographs, with the exact
//! endograph metric and connectedness/compactness decisions.

mod prism;
mod slice;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

pub use prism::{dist_point_endo, endograph, hend, hsend, sendograph, Prism, PrismComplex};
pub use slice::{truncate, Engine, Monotonicity, SliceBand, SliceSet};

use crate::expr::EvalError;
use crate::num::{int, Level, Real};
use crate::spatial::{check_window, lattice_indices, GridSet, Interval, LatticeMetric, SpatialError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EndographError {
    #[error("the prism complex is empty")]
    EmptyComplex,
    #[error("sendograph distance needs two non-empty fuzzy sets")]
    EmptyOperand,
    #[error("truncation needs r <= t")]
    BadRange,
    #[error("grid spacing must be positive")]
    BadResolution,
    #[error("grid window must be bounded")]
    UnboundedWindow,
    #[error("band {0} is not monotone; use the grid engine")]
    NonMonotoneBand(String),
    #[error("invalid slice band: {0}")]
    BadBand(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

impl From<SpatialError> for EndographError {
    fn from(e: SpatialError) -> Self {
        match e {
            SpatialError::UnboundedWindow => EndographError::UnboundedWindow,
            _ => EndographError::BadResolution,
        }
    }
}

/// Lattice points `(i, j)` with `(i h, j h)` in `E ∩ (window x [0, 1])`.
///
/// The result uses the sum metric, so `hausdorff_grid` of two such grids
/// approximates the exact complex distance.
pub fn complex_grid(e: &PrismComplex, h: &Real, window: &Interval) -> Result<GridSet, EndographError> {
    check_window(h, window)?;
    let top = (int(1) / h).floor().to_integer();
    let rows = big_to_i64(top);
    let (Some(first), Some(last)) = (
        window.lo().finite().map(|lo| big_to_i64((lo / h).ceil().to_integer())),
        window.hi().finite().map(|hi| big_to_i64((hi / h).floor().to_integer())),
    ) else {
        return Err(EndographError::UnboundedWindow);
    };
    // slices shrink as the level grows, so every column is a run of rows
    // starting at 0; record the highest row per column
    let width = usize::try_from(last - first + 1).unwrap_or(0);
    let mut highest = vec![-1i64; width];
    for j in 0..=rows {
        let alpha = Level::new(int(j) * h).expect("row level inside [0, 1]");
        for (a, b) in lattice_indices(&e.slice(&alpha), h, window) {
            for cell in &mut highest[(a - first) as usize..=(b - first) as usize] {
                *cell = j;
            }
        }
    }
    let mut coords = Vec::new();
    for (offset, &top) in highest.iter().enumerate() {
        let i = first + offset as i64;
        for j in 0..=top {
            coords.push(i);
            coords.push(j);
        }
    }
    Ok(GridSet::from_sorted_flat(2, h.clone(), LatticeMetric::Sum, coords))
}

/// Smallest window containing every finite endpoint of the given complexes,
/// widened by 1 on each side (`[-1, 1]` when there are none).
pub fn default_window(complexes: &[&PrismComplex]) -> Interval {
    let sets: Vec<_> = complexes.iter().flat_map(|c| c.prisms().iter().map(|p| &p.set)).collect();
    let one = int(1);
    match prism::finite_extent(&sets) {
        Some(iv) => {
            let lo = iv.lo().finite().expect("bounded") - &one;
            let hi = iv.hi().finite().expect("bounded") + &one;
            Interval::closed(lo, hi)
        }
        None => Interval::closed(-one.clone(), one),
    }
}

fn big_to_i64(v: BigInt) -> i64 {
    v.to_i64().expect("lattice index out of range")
}
