use super::{improves, queyranne_min, MinimizationResult};
use crate::error::{Error, Result};
use crate::family::GroupCapFamily;
use crate::oracle::Oracle;
use crate::set;

/// Largest ground set the exact enumeration will accept.
pub const ENUMERATION_LIMIT: usize = 24;

/// Most components the zero-value shortcut will combine.
const COMPONENT_UNION_LIMIT: usize = 20;

/// Minimizes a symmetric submodular function over the nonempty proper
/// members of a hereditary family.
///
/// Implementations must agree with [`ExactEnumeration`] on value, and
/// return a member of the family.
pub trait HereditaryMinimizer {
    fn minimize(&self, oracle: &Oracle, family: &GroupCapFamily) -> Result<MinimizationResult>;
}

/// Exact search over the family, smallest candidates first.
///
/// Before enumerating it tries two shortcuts that do not change the
/// answer: a family containing every set defers to the unconstrained
/// pendant-pair routine, and when the oracle knows its zero-value sets
/// (a disconnected graph cut) the lexicographically smallest qualifying
/// union of components is returned, since no set can score below zero.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExactEnumeration;

impl HereditaryMinimizer for ExactEnumeration {
    fn minimize(&self, oracle: &Oracle, family: &GroupCapFamily) -> Result<MinimizationResult> {
        let n = check_inputs(oracle, family)?;
        let start = oracle.calls();
        if family.is_vacuous() {
            return queyranne_min(oracle);
        }
        if let Some(set) = zero_union_candidate(oracle, family) {
            let value = oracle.eval(&set);
            return Ok(MinimizationResult {
                set,
                value,
                oracle_calls: oracle.calls() - start,
            });
        }
        if n > ENUMERATION_LIMIT {
            return Err(Error::TooLarge {
                what: "constrained minimization",
                n,
                limit: ENUMERATION_LIMIT,
            });
        }
        let max_size = family.max_member_size().unwrap_or(0).min(n - 1);
        let members = family.mask_view();
        let tol = oracle.tolerance();
        let mut best: Option<(f64, Vec<usize>)> = None;
        for size in 1..=max_size {
            for_each_combination(n, size, |combo| {
                if !members.contains(set::set_to_mask(combo)) {
                    return;
                }
                let v = oracle.eval(combo);
                if improves(v, combo, best.as_ref().map(|(bv, bs)| (*bv, bs.as_slice())), tol) {
                    best = Some((v, combo.to_vec()));
                }
            });
        }
        let (value, set) = best.ok_or_else(|| Error::infeasible("family has no nonempty proper member"))?;
        Ok(MinimizationResult {
            set,
            value,
            oracle_calls: oracle.calls() - start,
        })
    }
}

/// Minimizes over the nonempty proper members of `family` with the default
/// [`ExactEnumeration`] strategy.
///
/// Fails with [`Error::Infeasible`] when the family has no such member.
pub fn constrained_min(oracle: &Oracle, family: &GroupCapFamily) -> Result<MinimizationResult> {
    ExactEnumeration.minimize(oracle, family)
}

/// Every inclusion-minimal nonempty proper member of `family` attaining
/// the constrained optimum, sorted. These are pairwise disjoint.
pub fn minimal_optimal_solutions(oracle: &Oracle, family: &GroupCapFamily) -> Result<Vec<Vec<usize>>> {
    let n = check_inputs(oracle, family)?;
    if let Some(comps) = oracle.zero_components().filter(|c| c.len() >= 2) {
        // Zero sets are unions of components, so the minimal ones are the
        // components themselves.
        let mut found: Vec<Vec<usize>> = comps.into_iter().filter(|c| family.contains(c)).collect();
        if !found.is_empty() {
            found.sort();
            return Ok(found);
        }
    }
    if n > ENUMERATION_LIMIT {
        return Err(Error::TooLarge {
            what: "minimal optimal solution enumeration",
            n,
            limit: ENUMERATION_LIMIT,
        });
    }
    let max_size = family.max_member_size().unwrap_or(0).min(n - 1);
    let members = family.mask_view();
    let mut scored: Vec<(u32, f64)> = Vec::new();
    for size in 1..=max_size {
        for_each_combination(n, size, |combo| {
            let mask = set::set_to_mask(combo);
            if members.contains(mask) {
                scored.push((mask, oracle.eval(combo)));
            }
        });
    }
    let opt = scored
        .iter()
        .map(|&(_, v)| v)
        .fold(f64::INFINITY, f64::min);
    if !opt.is_finite() {
        return Err(Error::infeasible("family has no nonempty proper member"));
    }
    let tol = oracle.tolerance();
    // `scored` is already ordered by size, so every strict subset of a set
    // is seen before it.
    let mut minimal: Vec<u32> = Vec::new();
    for &(mask, v) in &scored {
        if v <= opt + tol && !minimal.iter().any(|&m| m & mask == m) {
            minimal.push(mask);
        }
    }
    debug_assert!(
        minimal
            .iter()
            .enumerate()
            .all(|(i, a)| minimal[i + 1..].iter().all(|b| a & b == 0)),
        "minimal optimal solutions overlap"
    );
    let mut out: Vec<Vec<usize>> = minimal.into_iter().map(set::mask_to_set).collect();
    out.sort();
    Ok(out)
}

fn check_inputs(oracle: &Oracle, family: &GroupCapFamily) -> Result<usize> {
    let n = oracle.ground_size();
    if family.ground_size() != n {
        return Err(Error::input(format!(
            "family is over {} elements but the oracle over {n}",
            family.ground_size()
        )));
    }
    if !family.admits_split() {
        return Err(Error::infeasible("family has no nonempty proper member"));
    }
    Ok(n)
}

fn zero_union_candidate(oracle: &Oracle, family: &GroupCapFamily) -> Option<Vec<usize>> {
    let comps = oracle.zero_components()?;
    let c = comps.len();
    if !(2..=COMPONENT_UNION_LIMIT).contains(&c) {
        return None;
    }
    let mut best: Option<Vec<usize>> = None;
    for mask in 1u32..((1 << c) - 1) {
        let mut s: Vec<usize> = set::mask_to_set(mask)
            .into_iter()
            .flat_map(|i| comps[i].iter().copied())
            .collect();
        s.sort_unstable();
        if family.contains(&s) && best.as_ref().is_none_or(|b| s < *b) {
            best = Some(s);
        }
    }
    best
}

/// Calls `visit` with every `size`-subset of `0..n` in lexicographic order.
pub(crate) fn for_each_combination(n: usize, size: usize, mut visit: impl FnMut(&[usize])) {
    if size > n {
        return;
    }
    let mut combo: Vec<usize> = (0..size).collect();
    loop {
        visit(&combo);
        let Some(i) = (0..size).rev().find(|&i| combo[i] < n - size + i) else {
            return;
        };
        combo[i] += 1;
        for j in i + 1..size {
            combo[j] = combo[j - 1] + 1;
        }
    }
}
