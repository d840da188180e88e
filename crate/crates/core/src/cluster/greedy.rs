use super::split::{evaluate_split, SplitCandidate};
use super::{check_common, check_k, cheaper, Algorithm, BlockStatus, ClusteringRun, RunParams, TraceStep};
use crate::error::{Error, Result};
use crate::family::localized_family;
use crate::model::{Grouping, Partition};
use crate::objective::{is_feasible, max_k, partition_cost};
use crate::oracle::Oracle;

/// The group a greedy run keeps actionable.
#[derive(Clone, Copy)]
struct Constraint<'a> {
    grouping: &'a Grouping,
    group: usize,
    t: f64,
}

struct Block {
    elements: Vec<usize>,
    beta: bool,
    candidate: SplitCandidate,
}

fn candidate(oracle: &Oracle, elements: &[usize], beta: bool, constraint: Option<Constraint>) -> Result<SplitCandidate> {
    match constraint.filter(|_| beta) {
        Some(c) => {
            let fam = localized_family(elements, c.grouping, c.group, c.t);
            evaluate_split(oracle, elements, Some(&fam))
        }
        None => evaluate_split(oracle, elements, None),
    }
}

/// Repeatedly applies the cheapest available split until there are `k`
/// blocks. Only the two blocks created by a split are re-evaluated.
fn split_greedily(
    oracle: &Oracle,
    k: usize,
    constraint: Option<Constraint>,
) -> Result<(Vec<Block>, Vec<TraceStep>)> {
    let all: Vec<usize> = (0..oracle.ground_size()).collect();
    let beta = constraint.is_some();
    let mut blocks = vec![Block {
        candidate: candidate(oracle, &all, beta, constraint)?,
        elements: all,
        beta,
    }];
    let tol = oracle.tolerance();
    let mut trace = Vec::with_capacity(k.saturating_sub(1));
    while blocks.len() < k {
        let mut chosen: Option<(usize, f64)> = None;
        for (i, b) in blocks.iter().enumerate() {
            if let Some(c) = b.candidate.increment {
                if cheaper(c, chosen.map(|(_, v)| v), tol) {
                    chosen = Some((i, c));
                }
            }
        }
        let Some((i, _)) = chosen else {
            return Err(Error::infeasible(format!(
                "no block can be split further at {} blocks (wanted {k})",
                blocks.len()
            )));
        };
        let statuses = blocks
            .iter()
            .enumerate()
            .map(|(j, b)| BlockStatus {
                block: j,
                size: b.elements.len(),
                beta: b.beta,
                increment: b.candidate.increment,
            })
            .collect();
        let (side, rest) = blocks[i].candidate.split.clone().expect("finite increment has a split");
        let keep_beta = blocks[i].beta;
        trace.push(TraceStep {
            blocks: statuses,
            chosen: i,
            split: [side.clone(), rest.clone()],
        });
        blocks[i] = Block {
            candidate: candidate(oracle, &side, false, constraint)?,
            elements: side,
            beta: false,
        };
        blocks.push(Block {
            candidate: candidate(oracle, &rest, keep_beta, constraint)?,
            elements: rest,
            beta: keep_beta,
        });
    }
    Ok((blocks, trace))
}

/// Greedy splitting without a constraint: start from the whole ground set
/// and `k − 1` times apply the cheapest optimal bipartition of any current
/// block (ties to the lowest block index).
pub fn gsa(oracle: &Oracle, k: usize) -> Result<ClusteringRun> {
    let n = oracle.ground_size();
    check_k(k, n)?;
    let start = oracle.calls();
    let (blocks, trace) = split_greedily(oracle, k, None)?;
    let partition = Partition::new(n, blocks.into_iter().map(|b| b.elements).collect())?;
    let cost = partition_cost(oracle, &partition);
    Ok(ClusteringRun {
        algorithm: Algorithm::Gsa,
        params: RunParams {
            k,
            t: None,
            group: None,
            seed: None,
        },
        partition,
        cost,
        oracle_calls: oracle.calls() - start,
        trace,
        betas: Vec::new(),
        certificate: None,
        degraded: false,
    })
}

/// Greedy splitting that keeps one block actionable for `group`.
///
/// The whole ground set starts tagged. An untagged block splits freely; the
/// tagged block may only give away a side `S` that leaves at least
/// `⌈t|g|⌉` elements of the group behind, and the remainder keeps the
/// tag. When no such `S` exists the tagged block is frozen. `k = 1`
/// returns the whole ground set with an empty trace.
pub fn actionable_gsa(oracle: &Oracle, grouping: &Grouping, group: usize, t: f64, k: usize) -> Result<ClusteringRun> {
    check_common(oracle, grouping, t)?;
    let n = oracle.ground_size();
    check_k(k, n)?;
    if group >= grouping.len() {
        return Err(Error::input(format!("group index {group} out of range")));
    }
    let limit = max_k(grouping, t);
    if k > limit {
        return Err(Error::infeasible(format!(
            "no feasible {k}-partition exists; at most {limit} blocks are possible at t={t}"
        )));
    }
    let start = oracle.calls();
    let constraint = Constraint { grouping, group, t };
    let (blocks, trace) = split_greedily(oracle, k, Some(constraint))?;
    let betas: Vec<bool> = blocks.iter().map(|b| b.beta).collect();
    let partition = Partition::new(n, blocks.into_iter().map(|b| b.elements).collect())?;
    let certificate = is_feasible(&partition, grouping, t);
    if certificate.is_none() {
        return Err(Error::infeasible("greedy result is not actionable"));
    }
    let cost = partition_cost(oracle, &partition);
    Ok(ClusteringRun {
        algorithm: Algorithm::Agsa,
        params: RunParams {
            k,
            t: Some(t),
            group: Some(group),
            seed: None,
        },
        partition,
        cost,
        oracle_calls: oracle.calls() - start,
        trace,
        betas,
        certificate,
        degraded: false,
    })
}

/// [`actionable_gsa`] for every group in turn; the cheapest feasible run
/// wins (ties to the lower group index).
pub fn actionable_gsa_multigroup(oracle: &Oracle, grouping: &Grouping, t: f64, k: usize) -> Result<ClusteringRun> {
    check_common(oracle, grouping, t)?;
    let start = oracle.calls();
    let tol = oracle.tolerance();
    let mut best: Option<ClusteringRun> = None;
    for j in 0..grouping.len() {
        match actionable_gsa(oracle, grouping, j, t, k) {
            Ok(run) => {
                if cheaper(run.cost, best.as_ref().map(|b| b.cost), tol) {
                    best = Some(run);
                }
            }
            Err(Error::Infeasible(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    let mut run = best.ok_or_else(|| Error::infeasible(format!("no group admits a feasible {k}-partition")))?;
    run.algorithm = Algorithm::AgsaMulti;
    run.oracle_calls = oracle.calls() - start;
    Ok(run)
}
