use super::{improves, MinimizationResult};
use crate::error::{Error, Result};
use crate::family::GroupCapFamily;
use crate::model::{Grouping, Partition};
use crate::objective::required_hits;
use crate::oracle::Oracle;
use crate::set;

/// Size guard for [`brute_force_min`].
pub const BRUTE_MIN_LIMIT: usize = 24;
/// Size guard for [`brute_force_best_partition`].
pub const BRUTE_PARTITION_LIMIT: usize = 12;

/// Reference minimum over every nonempty proper subset, optionally
/// restricted to a family. Plain bitmask sweep; skips masks larger than
/// the family's biggest member.
pub fn brute_force_min(oracle: &Oracle, family: Option<&GroupCapFamily>) -> Result<MinimizationResult> {
    let n = oracle.ground_size();
    if n > BRUTE_MIN_LIMIT {
        return Err(Error::TooLarge {
            what: "brute-force minimization",
            n,
            limit: BRUTE_MIN_LIMIT,
        });
    }
    if n < 2 {
        return Err(Error::input("minimization needs at least two elements"));
    }
    if let Some(fam) = family {
        if fam.ground_size() != n {
            return Err(Error::input("family and oracle ground sets differ"));
        }
    }
    let start = oracle.calls();
    let max_size = family.map_or(n, |f| f.max_member_size().unwrap_or(0)) as u32;
    let members = family.map(GroupCapFamily::mask_view);
    let tol = oracle.tolerance();
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let mut best: Option<(f64, Vec<usize>)> = None;
    for mask in 1..full {
        if mask.count_ones() > max_size {
            continue;
        }
        if members.as_ref().is_some_and(|m| !m.contains(mask)) {
            continue;
        }
        let s = set::mask_to_set(mask);
        let v = oracle.eval(&s);
        if improves(v, &s, best.as_ref().map(|(bv, bs)| (*bv, bs.as_slice())), tol) {
            best = Some((v, s));
        }
    }
    let (value, set) = best.ok_or_else(|| Error::infeasible("no nonempty proper subset qualifies"))?;
    Ok(MinimizationResult {
        set,
        value,
        oracle_calls: oracle.calls() - start,
    })
}

/// Exact cheapest feasible partition into exactly `k` nonempty blocks.
///
/// Enumerates restricted growth strings (element `i` joins one of the
/// blocks opened so far or opens the next one), after tabulating `f` on
/// all `2^n` subsets. Ties go to the lexicographically smallest list of
/// sorted blocks, which is the order blocks are opened in.
pub fn brute_force_best_partition(
    oracle: &Oracle,
    k: usize,
    grouping: &Grouping,
    t: f64,
) -> Result<(Partition, f64)> {
    let n = oracle.ground_size();
    if n > BRUTE_PARTITION_LIMIT {
        return Err(Error::TooLarge {
            what: "brute-force partitioning",
            n,
            limit: BRUTE_PARTITION_LIMIT,
        });
    }
    if k == 0 || k > n {
        return Err(Error::input(format!("k={k} is outside 1..={n}")));
    }
    if grouping.ground_size() != n {
        return Err(Error::input("grouping and oracle ground sets differ"));
    }
    crate::model::check_threshold(t)?;
    let table: Vec<f64> = (0u32..(1 << n))
        .map(|m| oracle.eval(&set::mask_to_set(m)))
        .collect();
    let demands: Vec<(u32, u32)> = grouping
        .iter()
        .map(|(_, g)| (set::set_to_mask(g), required_hits(g.len(), t) as u32))
        .collect();

    let mut search = PartitionSearch {
        n,
        k,
        table: &table,
        demands: &demands,
        tol: oracle.tolerance(),
        blocks: Vec::with_capacity(k),
        best: None,
    };
    search.assign(0);
    let (cost, masks) = search
        .best
        .ok_or_else(|| Error::infeasible(format!("no feasible {k}-partition exists")))?;
    let partition = Partition::new(n, masks.into_iter().map(set::mask_to_set).collect())?;
    Ok((partition, cost))
}

struct PartitionSearch<'a> {
    n: usize,
    k: usize,
    table: &'a [f64],
    demands: &'a [(u32, u32)],
    tol: f64,
    blocks: Vec<u32>,
    best: Option<(f64, Vec<u32>)>,
}

impl PartitionSearch<'_> {
    fn assign(&mut self, x: usize) {
        if x == self.n {
            if self.blocks.len() == self.k {
                self.finish();
            }
            return;
        }
        // Enough elements must remain to open the missing blocks.
        let open = self.blocks.len();
        if self.k - open > self.n - x {
            return;
        }
        for b in 0..open {
            self.blocks[b] |= 1 << x;
            self.assign(x + 1);
            self.blocks[b] &= !(1 << x);
        }
        if open < self.k {
            self.blocks.push(1 << x);
            self.assign(x + 1);
            self.blocks.pop();
        }
    }

    fn finish(&mut self) {
        let feasible = self.demands.iter().any(|&(g, need)| {
            self.blocks.iter().any(|&b| (b & g).count_ones() >= need)
        });
        if !feasible {
            return;
        }
        let cost: f64 = self.blocks.iter().map(|&b| self.table[b as usize]).sum();
        let replace = match &self.best {
            None => true,
            Some((bc, bb)) => {
                cost < bc - self.tol
                    || ((cost - bc).abs() <= self.tol && block_lists_less(&self.blocks, bb))
            }
        };
        if replace {
            self.best = Some((cost, self.blocks.clone()));
        }
    }
}

fn block_lists_less(a: &[u32], b: &[u32]) -> bool {
    let sa: Vec<Vec<usize>> = a.iter().map(|&m| set::mask_to_set(m)).collect();
    let sb: Vec<Vec<usize>> = b.iter().map(|&m| set::mask_to_set(m)).collect();
    sa < sb
}
