//! Minimization of symmetric submodular functions, with and without a
//! hereditary constraint, plus exhaustive references.

mod brute;
mod constrained;
mod queyranne;

use serde::Serialize;

pub use brute::{brute_force_best_partition, brute_force_min, BRUTE_MIN_LIMIT, BRUTE_PARTITION_LIMIT};
pub(crate) use constrained::for_each_combination;
pub use constrained::{
    constrained_min, minimal_optimal_solutions, ExactEnumeration, HereditaryMinimizer,
    ENUMERATION_LIMIT,
};
pub use queyranne::{queyranne_min, queyranne_min_traced, PendantRound, PendantTrace};

/// A minimizing set with its value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinimizationResult {
    /// Sorted, nonempty, and not the whole ground set.
    pub set: Vec<usize>,
    pub value: f64,
    /// Base-function evaluations spent by this call.
    pub oracle_calls: u64,
}

/// Whether `(value, set)` beats `(best_value, best_set)`: strictly smaller
/// beyond `tol`, or tied within `tol` and lexicographically smaller.
pub(crate) fn improves(value: f64, set: &[usize], best: Option<(f64, &[usize])>, tol: f64) -> bool {
    match best {
        None => true,
        Some((bv, bs)) => value < bv - tol || ((value - bv).abs() <= tol && set < bs),
    }
}
