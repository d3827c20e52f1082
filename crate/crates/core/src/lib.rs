//! Step fuzzy sets on the real line: exact endograph metrics, connectedness
//! of endograph pieces, and finite-evidence tests for sequence convergence.
//!
//! A fuzzy set is stored as a finite descending list of levels with nested
//! closed cuts ([`StepFuzzySet`]). Distances are computed exactly over
//! rationals; [`spatial::hausdorff_grid`] and the grid engines provide
//! independent lattice cross-checks.

pub mod convergence;
pub mod endograph;
pub mod expr;
pub mod fuzzy_set;
pub mod num;
pub mod random;
pub mod spatial;
pub mod toolkit;
mod union_find;

pub use endograph::{endograph, hend, hsend, sendograph, truncate, PrismComplex, SliceSet};
pub use fuzzy_set::{ClassFlags, CutFamilyError, StepFuzzySet};
pub use num::{ExtReal, Level, Real};
pub use spatial::{hausdorff, Interval, IntervalUnion};
