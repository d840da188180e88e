use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::GroupCapFamily;
use crate::minimize::{constrained_min, queyranne_min};
use crate::oracle::Oracle;
use crate::set;

/// The best way to split one block in two.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SplitCandidate {
    pub block: Vec<usize>,
    /// `(S, block∖S)` in global ids; `None` when the block cannot be split.
    pub split: Option<(Vec<usize>, Vec<usize>)>,
    /// `f(S) + f(block∖S) − f(block)`; `None` stands for infinity.
    pub increment: Option<f64>,
    pub beta: bool,
}

impl SplitCandidate {
    fn frozen(block: &[usize], beta: bool) -> Self {
        SplitCandidate {
            block: block.to_vec(),
            split: None,
            increment: None,
            beta,
        }
    }
}

/// Cheapest split of `block`.
///
/// Without a family (`β = 0`) any nonempty proper `S` is allowed. With one
/// (`β = 1`) `S` must be a member of `family`, which is over positions
/// `0..|block|` (see [`crate::family::localized_family`]); `S` is the side
/// that gives up its tag and `block∖S` keeps it. A block that cannot be
/// split gets an infinite increment.
pub fn evaluate_split(oracle: &Oracle, block: &[usize], family: Option<&GroupCapFamily>) -> Result<SplitCandidate> {
    let beta = family.is_some();
    if block.len() < 2 {
        return Ok(SplitCandidate::frozen(block, beta));
    }
    if family.is_some_and(|f| !f.admits_split()) {
        return Ok(SplitCandidate::frozen(block, beta));
    }
    let increment = oracle.split_increment(block);
    let found = match family {
        None => queyranne_min(&increment),
        Some(fam) => constrained_min(&increment, fam),
    };
    let result = match found {
        Ok(r) => r,
        Err(Error::Infeasible(_)) => return Ok(SplitCandidate::frozen(block, beta)),
        Err(e) => return Err(e),
    };
    let side: Vec<usize> = result.set.iter().map(|&i| block[i]).collect();
    let rest: Vec<usize> = set::complement(&result.set, block.len())
        .into_iter()
        .map(|i| block[i])
        .collect();
    Ok(SplitCandidate {
        block: block.to_vec(),
        split: Some((side, rest)),
        increment: Some(result.value),
        beta,
    })
}
