use serde::Serialize;

use super::{improves, MinimizationResult};
use crate::error::{Error, Result};
use crate::oracle::Oracle;
use crate::set;

/// One contraction round of the pendant-pair routine.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PendantRound {
    /// Supernodes (as sorted element lists) in the order they were added.
    pub ordering: Vec<Vec<usize>>,
    /// The last supernode of the ordering, expanded.
    pub candidate: Vec<usize>,
    pub value: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct PendantTrace {
    pub rounds: Vec<PendantRound>,
}

/// Minimizes a symmetric submodular function over nonempty proper subsets.
///
/// Among equally good sets the lexicographically smallest recorded one
/// (or its complement) is returned.
pub fn queyranne_min(oracle: &Oracle) -> Result<MinimizationResult> {
    queyranne_min_traced(oracle).map(|(r, _)| r)
}

/// [`queyranne_min`] together with the per-round record.
///
/// Each round orders the current supernodes greedily: start from the one
/// holding the smallest element, then repeatedly append the `u` minimizing
/// `f(W ∪ u) − f(u)` for the prefix `W`. The last element `v` of such an
/// ordering is a pendant pair with its predecessor: `{v}` is a cheapest set
/// separating the two. Recording `f({v})` and merging the pair loses no
/// optimum, so after `n − 1` rounds the best record is a global minimizer.
pub fn queyranne_min_traced(oracle: &Oracle) -> Result<(MinimizationResult, PendantTrace)> {
    let n = oracle.ground_size();
    if n < 2 {
        return Err(Error::input("minimization needs at least two elements"));
    }
    let start_calls = oracle.calls();
    let tol = oracle.tolerance();
    let mut supernodes: Vec<Vec<usize>> = (0..n).map(|x| vec![x]).collect();
    let mut trace = PendantTrace::default();
    let mut best: Option<(f64, Vec<usize>)> = None;

    while supernodes.len() >= 2 {
        let p = supernodes.len();
        let f = oracle.contract(&supernodes)?;
        let singles: Vec<f64> = (0..p).map(|u| f.eval(&[u])).collect();

        let mut order = vec![0usize];
        let mut prefix = vec![0usize];
        let mut remaining: Vec<usize> = (1..p).collect();
        while !remaining.is_empty() {
            let mut pick = 0;
            let mut pick_key = f64::INFINITY;
            for (i, &u) in remaining.iter().enumerate() {
                let mut with = prefix.clone();
                let pos = with.partition_point(|&x| x < u);
                with.insert(pos, u);
                let key = f.eval(&with) - singles[u];
                if key < pick_key {
                    pick_key = key;
                    pick = i;
                }
            }
            let u = remaining.remove(pick);
            order.push(u);
            let pos = prefix.partition_point(|&x| x < u);
            prefix.insert(pos, u);
        }

        let last = order[p - 1];
        let before = order[p - 2];
        let value = singles[last];
        let candidate = supernodes[last].clone();
        // Both sides of the cut score the same; either may be returned.
        for side in [candidate.clone(), set::complement(&candidate, n)] {
            if improves(value, &side, best.as_ref().map(|(v, s)| (*v, s.as_slice())), tol) {
                best = Some((value, side));
            }
        }
        trace.rounds.push(PendantRound {
            ordering: order.iter().map(|&i| supernodes[i].clone()).collect(),
            candidate,
            value,
        });

        let mut merged = supernodes[last].clone();
        merged.extend_from_slice(&supernodes[before]);
        merged.sort_unstable();
        let (hi, lo) = (last.max(before), last.min(before));
        supernodes.remove(hi);
        supernodes.remove(lo);
        supernodes.push(merged);
        supernodes.sort_unstable_by_key(|s| s[0]);
    }

    let (value, set) = best.expect("at least one round");
    Ok((
        MinimizationResult {
            set,
            value,
            oracle_calls: oracle.calls() - start_calls,
        },
        trace,
    ))
}
