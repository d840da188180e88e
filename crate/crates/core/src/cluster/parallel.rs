use super::{check_common, check_k, Algorithm, ClusteringRun, RunParams};
use crate::error::{Error, Result};
use crate::family::GroupCapFamily;
use crate::minimize::minimal_optimal_solutions;
use crate::model::{FeasibilityCertificate, Grouping, Partition};
use crate::objective::{is_feasible, max_k};
use crate::oracle::Oracle;
use crate::set;

struct Selection {
    blocks: Vec<Vec<usize>>,
    cost: f64,
    certificate: FeasibilityCertificate,
}

/// Builds a partition in one shot from minimal optimal solutions.
///
/// The disjoint minimal optimal solutions are taken over the family of
/// sets that leave some group actionable (a set may hold at most
/// `|g| − ⌈t|g|⌉` elements of some group `g`). Any `k − 1` of them plus the
/// leftover elements form a candidate `k`-partition; the cheapest feasible
/// one is kept (ties to the lexicographically first selection). When no
/// selection of `k − 1` works, fewer solutions are used and the run is
/// flagged `degraded`.
pub fn parallel_split(oracle: &Oracle, grouping: &Grouping, t: f64, k: usize) -> Result<ClusteringRun> {
    check_common(oracle, grouping, t)?;
    let n = oracle.ground_size();
    check_k(k, n)?;
    if n < 2 || max_k(grouping, t) < 2 {
        return Err(Error::infeasible(format!("no feasible 2-partition exists at t={t}")));
    }
    let start = oracle.calls();
    let tol = oracle.tolerance();
    if k == 1 {
        let partition = Partition::whole(n);
        let certificate = is_feasible(&partition, grouping, t);
        return Ok(run(partition, 0.0, oracle.calls() - start, certificate, t, k));
    }

    let family = GroupCapFamily::global(grouping, t);
    let solutions = minimal_optimal_solutions(oracle, &family)?;
    let values: Vec<f64> = solutions.iter().map(|s| oracle.eval(s)).collect();
    let mut found: Option<Selection> = None;
    for r in (1..=solutions.len().min(k - 1)).rev() {
        for_each_index_subset(solutions.len(), r, |picked| {
            let mut taken: Vec<usize> = picked.iter().flat_map(|&i| solutions[i].iter().copied()).collect();
            taken.sort_unstable();
            let residual = set::complement(&taken, n);
            if residual.is_empty() {
                return;
            }
            let mut blocks: Vec<Vec<usize>> = picked.iter().map(|&i| solutions[i].clone()).collect();
            blocks.push(residual);
            let partition = Partition::new(n, blocks).expect("disjoint solutions");
            let Some(certificate) = is_feasible(&partition, grouping, t) else {
                return;
            };
            let cost = picked.iter().map(|&i| values[i]).sum::<f64>() + oracle.eval(partition.blocks().last().unwrap());
            if found.as_ref().is_none_or(|f| cost < f.cost - tol) {
                found = Some(Selection {
                    blocks: partition.into_blocks(),
                    cost,
                    certificate,
                });
            }
        });
        if found.is_some() {
            break;
        }
    }
    let sel = found.ok_or_else(|| {
        Error::infeasible(format!("no feasible partition can be formed from minimal solutions (k={k}, t={t})"))
    })?;
    let partition = Partition::new(n, sel.blocks)?;
    Ok(run(partition, sel.cost, oracle.calls() - start, Some(sel.certificate), t, k))
}

fn run(
    partition: Partition,
    cost: f64,
    oracle_calls: u64,
    certificate: Option<FeasibilityCertificate>,
    t: f64,
    k: usize,
) -> ClusteringRun {
    ClusteringRun {
        algorithm: Algorithm::Parallel,
        degraded: partition.k() < k,
        params: RunParams {
            k,
            t: Some(t),
            group: certificate.as_ref().map(|c| c.group),
            seed: None,
        },
        partition,
        cost,
        oracle_calls,
        trace: Vec::new(),
        betas: Vec::new(),
        certificate,
    }
}

/// Visits `r`-subsets of `0..len` as sorted index lists, lexicographically.
fn for_each_index_subset(len: usize, r: usize, visit: impl FnMut(&[usize])) {
    crate::minimize::for_each_combination(len, r, visit);
}
