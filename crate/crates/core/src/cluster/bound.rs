use serde::Serialize;

use crate::model::Partition;
use crate::oracle::Oracle;

/// Slack allowed when testing the bound.
const BOUND_SLACK: f64 = 1e-9;

/// A run's cost against the optimum and the factor `2(1 − 1/k)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LemmaCheck {
    pub ratio: f64,
    pub bound: f64,
    pub holds: bool,
}

/// Compares `cost` with `opt`. Two zero costs count as ratio 1; a positive
/// cost against a zero optimum is an infinite ratio.
pub fn lemma1_check(cost: f64, opt: f64, k: usize) -> LemmaCheck {
    let bound = 2.0 * (1.0 - 1.0 / k as f64);
    let zero = |x: f64| x.abs() <= BOUND_SLACK;
    let ratio = if zero(opt) {
        if zero(cost) {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        cost / opt
    };
    LemmaCheck {
        ratio,
        bound,
        holds: ratio <= bound + BOUND_SLACK,
    }
}

/// The four inequalities behind the parallel-splitting bound, evaluated on
/// one run. Each gap is `lhs − rhs` of an inequality `lhs ≤ rhs` (the
/// first is an equality, so its gap is an absolute difference).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundChain {
    /// `|f(C_1 ∪ … ∪ C_{k−1}) − f(C_k)|`: symmetry.
    pub symmetry_gap: f64,
    /// `f(C_1 ∪ … ∪ C_{k−1}) − Σ_{i<k} f(C_i)`: submodularity.
    pub union_gap: f64,
    /// `Σ_{i<k} f(C_i) − Σ` of the `k−1` cheapest optimal blocks: every
    /// `C_i` is an optimal constrained bipartition side.
    pub binary_gap: f64,
    /// `mean f(C*_i) − max f(C*_i)`.
    pub max_mean_gap: f64,
    pub tolerance: f64,
}

impl BoundChain {
    pub fn holds(&self) -> bool {
        let tol = self.tolerance;
        self.symmetry_gap <= tol && self.union_gap <= tol && self.binary_gap <= tol && self.max_mean_gap <= tol
    }
}

/// Evaluates [`BoundChain`] for a parallel-split partition (solution blocks
/// first, residual last) against an optimal partition with as many blocks.
pub fn bound_chain(oracle: &Oracle, run: &Partition, optimum: &Partition) -> BoundChain {
    assert_eq!(run.k(), optimum.k(), "partitions must have the same number of blocks");
    let k = run.k();
    let blocks = run.blocks();
    let mut union: Vec<usize> = blocks[..k - 1].iter().flatten().copied().collect();
    union.sort_unstable();
    let f_union = oracle.eval(&union);
    let f_last = oracle.eval(&blocks[k - 1]);
    let solution_sum: f64 = blocks[..k - 1].iter().map(|b| oracle.eval(b)).sum();
    let mut opt_values: Vec<f64> = optimum.blocks().iter().map(|b| oracle.eval(b)).collect();
    opt_values.sort_by(f64::total_cmp);
    let cheapest: f64 = opt_values[..k - 1].iter().sum();
    let max = opt_values[k - 1];
    let mean = opt_values.iter().sum::<f64>() / k as f64;
    let scale = opt_values.iter().chain([&f_union, &solution_sum]).fold(1.0f64, |m, v| m.max(v.abs()));
    BoundChain {
        symmetry_gap: (f_union - f_last).abs(),
        union_gap: f_union - solution_sum,
        binary_gap: solution_sum - cheapest,
        max_mean_gap: mean - max,
        tolerance: oracle.tolerance() * scale,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_values() {
        assert_eq!(lemma1_check(1.0, 1.0, 2).bound, 1.0);
        assert_eq!(lemma1_check(1.0, 1.0, 4).bound, 1.5);
        assert!(lemma1_check(0.0, 0.0, 3).holds);
        assert!(!lemma1_check(1.0, 0.0, 3).holds);
        let c = lemma1_check(3.0, 2.0, 4);
        assert!(c.holds && c.ratio == 1.5);
        assert!(!lemma1_check(3.1, 2.0, 4).holds);
    }
}
