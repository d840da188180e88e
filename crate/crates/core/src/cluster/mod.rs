//! Partitioning algorithms.
//!
//! * [`gsa`]: greedy splitting, unconstrained.
//! * [`actionable_gsa`]: greedy splitting where one tagged block must stay
//!   actionable for a chosen group; [`actionable_gsa_multigroup`] tries
//!   every group.
//! * [`optimal_two_clustering`]: the exact best feasible bipartition.
//! * [`parallel_split`]: blocks taken at once from the disjoint minimal
//!   optimal solutions of the constrained problem.
//! * [`lemma1_check`] and [`bound_chain`]: the approximation bound for
//!   parallel splitting and the inequalities its argument rests on.

mod bound;
mod greedy;
mod parallel;
mod split;
mod two;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{FeasibilityCertificate, Grouping, Partition};
use crate::oracle::Oracle;

pub use bound::{bound_chain, lemma1_check, BoundChain, LemmaCheck};
pub use greedy::{actionable_gsa, actionable_gsa_multigroup, gsa};
pub use parallel::parallel_split;
pub use split::{evaluate_split, SplitCandidate};
pub use two::optimal_two_clustering;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Gsa,
    Agsa,
    AgsaMulti,
    TwoOpt,
    Parallel,
    Brute,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Gsa,
        Algorithm::Agsa,
        Algorithm::AgsaMulti,
        Algorithm::TwoOpt,
        Algorithm::Parallel,
        Algorithm::Brute,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Gsa => "gsa",
            Algorithm::Agsa => "agsa",
            Algorithm::AgsaMulti => "agsa-multi",
            Algorithm::TwoOpt => "two-opt",
            Algorithm::Parallel => "parallel",
            Algorithm::Brute => "brute",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Algorithm::ALL.iter().map(|a| a.name()).collect();
                Error::input(format!("unknown algorithm {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

/// Parameters a run was made with.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunParams {
    pub k: usize,
    pub t: Option<f64>,
    /// Constrained group index, when one was fixed or chosen.
    pub group: Option<usize>,
    pub seed: Option<u64>,
}

/// One block's standing in a greedy iteration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockStatus {
    pub block: usize,
    pub size: usize,
    pub beta: bool,
    /// Split increment; `None` when the block cannot be split.
    pub increment: Option<f64>,
}

/// One greedy iteration: every block's candidate, and the split made.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    pub blocks: Vec<BlockStatus>,
    pub chosen: usize,
    pub split: [Vec<usize>; 2],
}

/// Outcome of a clustering algorithm.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusteringRun {
    pub algorithm: Algorithm,
    pub params: RunParams,
    pub partition: Partition,
    pub cost: f64,
    pub oracle_calls: u64,
    /// Greedy iterations; empty for non-greedy algorithms.
    pub trace: Vec<TraceStep>,
    /// Final per-block tags for actionable greedy runs.
    pub betas: Vec<bool>,
    pub certificate: Option<FeasibilityCertificate>,
    /// Fewer blocks than requested (parallel splitting only).
    pub degraded: bool,
}

impl ClusteringRun {
    pub fn k(&self) -> usize {
        self.partition.k()
    }
}

/// Runs `algorithm` for `k` blocks. `group` selects the constrained
/// group for [`Algorithm::Agsa`]; it may be omitted when there is only
/// one group.
pub fn run_algorithm(
    algorithm: Algorithm,
    oracle: &Oracle,
    grouping: &Grouping,
    t: f64,
    k: usize,
    group: Option<usize>,
) -> Result<ClusteringRun> {
    match algorithm {
        Algorithm::Gsa => gsa(oracle, k),
        Algorithm::Agsa => {
            let group = match (group, grouping.len()) {
                (Some(g), _) => g,
                (None, 1) => 0,
                (None, m) => {
                    return Err(Error::input(format!(
                        "agsa needs a group when there are {m} groups; pass one or use agsa-multi"
                    )))
                }
            };
            actionable_gsa(oracle, grouping, group, t, k)
        }
        Algorithm::AgsaMulti => actionable_gsa_multigroup(oracle, grouping, t, k),
        Algorithm::TwoOpt => {
            if k != 2 {
                return Err(Error::input(format!("two-opt always produces 2 blocks, got k={k}")));
            }
            optimal_two_clustering(oracle, grouping, t)
        }
        Algorithm::Parallel => parallel_split(oracle, grouping, t, k),
        Algorithm::Brute => brute_force_run(oracle, grouping, t, k),
    }
}

fn brute_force_run(oracle: &Oracle, grouping: &Grouping, t: f64, k: usize) -> Result<ClusteringRun> {
    check_common(oracle, grouping, t)?;
    check_k(k, oracle.ground_size())?;
    let start = oracle.calls();
    let (partition, cost) = crate::minimize::brute_force_best_partition(oracle, k, grouping, t)?;
    let certificate = crate::objective::is_feasible(&partition, grouping, t);
    Ok(ClusteringRun {
        algorithm: Algorithm::Brute,
        params: RunParams {
            k,
            t: Some(t),
            group: certificate.as_ref().map(|c| c.group),
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

pub(crate) fn check_common(oracle: &Oracle, grouping: &Grouping, t: f64) -> Result<()> {
    if grouping.ground_size() != oracle.ground_size() {
        return Err(Error::input(format!(
            "grouping covers {} elements but the oracle {}",
            grouping.ground_size(),
            oracle.ground_size()
        )));
    }
    crate::model::check_threshold(t)
}

pub(crate) fn check_k(k: usize, n: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::input(format!("k={k} is outside 1..={n}")));
    }
    Ok(())
}

/// Picks the better of two `(cost, index)` outcomes: lower cost beyond
/// `tol`, else the earlier one.
pub(crate) fn cheaper(cost: f64, best: Option<f64>, tol: f64) -> bool {
    best.is_none_or(|b| cost < b - tol)
}
