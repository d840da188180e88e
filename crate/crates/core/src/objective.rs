//! The clustering objective and the actionability constraint.

use crate::model::{FeasibilityCertificate, Grouping, Partition};
use crate::oracle::Oracle;
use crate::set::{ceil_fraction, intersection_len};

/// Number of elements of a group of `group_size` that one block must hold.
pub fn required_hits(group_size: usize, t: f64) -> usize {
    ceil_fraction(t, group_size)
}

/// First `(group, block)` pair, in index order, where the block holds at
/// least `⌈t|g|⌉` elements of the group.
pub fn is_feasible(partition: &Partition, grouping: &Grouping, t: f64) -> Option<FeasibilityCertificate> {
    for (gi, (_, g)) in grouping.iter().enumerate() {
        let need = required_hits(g.len(), t);
        for (bi, block) in partition.blocks().iter().enumerate() {
            let hits = intersection_len(block, g);
            if hits >= need {
                return Some(FeasibilityCertificate::new(gi, bi, hits, g.len()));
            }
        }
    }
    None
}

/// Largest `k` for which a feasible `k`-partition exists:
/// `N − ⌈t|g_s|⌉ + 1` for the smallest group `g_s`, clamped to `N`.
pub fn max_k(grouping: &Grouping, t: f64) -> usize {
    let n = grouping.ground_size();
    let smallest = grouping.group(grouping.smallest()).len();
    let k = n + 1 - required_hits(smallest, t);
    k.min(n)
}

/// `Σ f(C_i)` over the blocks.
pub fn partition_cost(oracle: &Oracle, partition: &Partition) -> f64 {
    partition.blocks().iter().map(|b| oracle.eval(b)).sum()
}
