use super::{check_common, cheaper, Algorithm, ClusteringRun, RunParams};
use crate::error::{Error, Result};
use crate::family::GroupCapFamily;
use crate::minimize::{constrained_min, MinimizationResult};
use crate::model::{Grouping, Partition};
use crate::objective::{is_feasible, max_k};
use crate::oracle::Oracle;
use crate::set;

/// The cheapest feasible bipartition.
///
/// For each group `g` this finds the cheapest nonempty proper `S` whose
/// complement keeps `⌈t|g|⌉` elements of `g`; by symmetry the cost of
/// `{S, D∖S}` is `2f(S)`. The best group wins, ties to the lower index.
pub fn optimal_two_clustering(oracle: &Oracle, grouping: &Grouping, t: f64) -> Result<ClusteringRun> {
    check_common(oracle, grouping, t)?;
    let n = oracle.ground_size();
    if n < 2 || max_k(grouping, t) < 2 {
        return Err(Error::infeasible(format!("no feasible 2-partition exists at t={t}")));
    }
    let start = oracle.calls();
    let tol = oracle.tolerance();
    let mut best: Option<(usize, MinimizationResult)> = None;
    for j in 0..grouping.len() {
        let family = GroupCapFamily::for_group(grouping, j, t);
        match constrained_min(oracle, &family) {
            Ok(r) => {
                if cheaper(r.value, best.as_ref().map(|(_, b)| b.value), tol) {
                    best = Some((j, r));
                }
            }
            Err(Error::Infeasible(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    let (group, min) = best.ok_or_else(|| Error::infeasible("no group admits a feasible split"))?;
    let rest = set::complement(&min.set, n);
    let cost = oracle.eval(&min.set) + oracle.eval(&rest);
    let partition = Partition::new(n, vec![min.set, rest])?;
    let certificate = is_feasible(&partition, grouping, t);
    Ok(ClusteringRun {
        algorithm: Algorithm::TwoOpt,
        params: RunParams {
            k: 2,
            t: Some(t),
            group: Some(group),
            seed: None,
        },
        partition,
        cost,
        oracle_calls: oracle.calls() - start,
        trace: Vec::new(),
        betas: Vec::new(),
        certificate,
        degraded: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedGraph;

    #[test]
    fn cost_is_twice_the_minimum() {
        let f = Oracle::cut(
            WeightedGraph::new(5, [(0, 1, 1.0), (1, 2, 2.0), (2, 3, 1.0), (3, 4, 3.0)]).unwrap(),
        );
        let g = Grouping::single(5, "all").unwrap();
        let run = optimal_two_clustering(&f, &g, 0.6).unwrap();
        // complement must keep 3 → S has ≤ 2; best S = {0} (1)
        assert_eq!(run.partition.blocks()[0], vec![0]);
        assert_eq!(run.cost, 2.0);
        assert!(run.certificate.is_some());
    }

    #[test]
    fn infeasible_threshold() {
        let f = Oracle::cut(WeightedGraph::new(3, [(0, 1, 1.0)]).unwrap());
        let g = Grouping::single(3, "all").unwrap();
        assert!(matches!(optimal_two_clustering(&f, &g, 1.0), Err(Error::Infeasible(_))));
    }
}
