//! Exact geometry of finite unions of closed intervals, plus a lattice oracle.

mod envelope;
mod grid;
mod interval;

use thiserror::Error;

pub use envelope::DistanceEnvelope;
pub use grid::{grid_of, hausdorff_grid, GridSet, LatticeMetric};
pub(crate) use grid::{check_window, lattice_indices};
pub use interval::{dist_point_set, is_bounded, is_connected, Interval, IntervalUnion};

use crate::num::{ExtReal, Real};
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpatialError {
    #[error("Hausdorff distance is undefined for an empty operand")]
    EmptyOperand,
    #[error("grid spacing must be positive")]
    BadResolution,
    #[error("grid window must be bounded")]
    UnboundedWindow,
    #[error("grid dimensions differ ({left} vs {right})")]
    DimensionMismatch { left: usize, right: usize },
    #[error("grids use different spacings or metrics")]
    IncompatibleGrids,
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: String, hi: String },
}

/// `H*(U, V) = sup_{x in U} d(x, V)`.
pub fn hausdorff_directed(u: &IntervalUnion, v: &IntervalUnion) -> Result<ExtReal, SpatialError> {
    if u.is_empty() || v.is_empty() {
        return Err(SpatialError::EmptyOperand);
    }
    let env = DistanceEnvelope::new(v.parts().iter().map(|p| (p.clone(), Real::zero())).collect());
    Ok(u.parts().iter().map(|p| env.sup_over(p)).max().expect("non-empty"))
}

/// Hausdorff extended metric on non-empty closed subsets of the line.
pub fn hausdorff(u: &IntervalUnion, v: &IntervalUnion) -> Result<ExtReal, SpatialError> {
    Ok(hausdorff_directed(u, v)?.max(hausdorff_directed(v, u)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::int;

    fn iu(parts: &[(i64, i64)]) -> IntervalUnion {
        parts.iter().map(|&(a, b)| Interval::closed(int(a), int(b))).collect()
    }

    #[test]
    fn directed_examples() {
        // expected values from a dense scan at h = 1e-4 (see tests/spatial_oracle.rs)
        assert_eq!(hausdorff_directed(&iu(&[(0, 1)]), &iu(&[(2, 4)])).unwrap(), ExtReal::Finite(int(2)));
        assert_eq!(hausdorff_directed(&iu(&[(2, 4)]), &iu(&[(0, 1)])).unwrap(), ExtReal::Finite(int(3)));
        let ray: IntervalUnion = [Interval::ray_up(int(0))].into_iter().collect();
        assert_eq!(hausdorff_directed(&ray, &iu(&[(0, 1)])).unwrap(), ExtReal::PosInf);
    }

    #[test]
    fn symmetric_examples() {
        assert_eq!(hausdorff(&iu(&[(0, 1)]), &iu(&[(0, 1)])).unwrap(), ExtReal::zero());
        assert_eq!(hausdorff(&iu(&[(0, 1)]), &iu(&[(2, 4)])).unwrap(), ExtReal::Finite(int(3)));
        let a: IntervalUnion = [Interval::ray_down(int(0))].into_iter().collect();
        let b: IntervalUnion = [Interval::ray_down(int(5))].into_iter().collect();
        assert_eq!(hausdorff(&a, &b).unwrap(), ExtReal::Finite(int(5)));
    }

    #[test]
    fn empty_operand_rejected() {
        assert_eq!(hausdorff(&IntervalUnion::empty(), &iu(&[(0, 1)])), Err(SpatialError::EmptyOperand));
        assert_eq!(hausdorff_directed(&iu(&[(0, 1)]), &IntervalUnion::empty()), Err(SpatialError::EmptyOperand));
    }

    #[test]
    fn finite_iff_both_bounded() {
        let bounded = iu(&[(0, 1), (3, 4)]);
        let split: IntervalUnion = [Interval::ray_down(int(-1)), Interval::ray_up(int(1))].into_iter().collect();
        assert_eq!(hausdorff(&bounded, &split).unwrap(), ExtReal::PosInf);
        assert!(hausdorff(&bounded, &iu(&[(7, 9)])).unwrap().is_finite());
    }
}
