//! Ground sets, groupings, and partitions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::set;

/// The elements being clustered, identified by ids `0..size`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundSet {
    size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl GroundSet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::input("ground set must have at least one element"));
        }
        Ok(GroundSet { size, labels: None })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        let mut g = GroundSet::new(labels.len())?;
        g.labels = Some(labels);
        Ok(g)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn label(&self, id: usize) -> Option<&str> {
        self.labels.as_ref()?.get(id).map(String::as_str)
    }

    pub fn all(&self) -> Vec<usize> {
        (0..self.size).collect()
    }
}

/// Named groups partitioning the ground set.
///
/// Group order is significant: it is the index used in feasibility
/// certificates and in every by-group tie-break.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grouping {
    n: usize,
    names: Vec<String>,
    groups: Vec<Vec<usize>>,
    owner: Vec<usize>,
}

impl Grouping {
    /// Validates that the groups are nonempty, disjoint and cover `0..n`.
    pub fn new(n: usize, named: Vec<(String, Vec<usize>)>) -> Result<Self> {
        if named.is_empty() {
            return Err(Error::input("at least one group is required"));
        }
        let mut owner = vec![usize::MAX; n];
        let mut names = Vec::with_capacity(named.len());
        let mut groups = Vec::with_capacity(named.len());
        for (gi, (name, mut members)) in named.into_iter().enumerate() {
            if members.is_empty() {
                return Err(Error::input(format!("group {name:?} is empty")));
            }
            members.sort_unstable();
            for w in members.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::input(format!(
                        "element {} listed twice in group {name:?}",
                        w[0]
                    )));
                }
            }
            for &x in &members {
                if x >= n {
                    return Err(Error::input(format!(
                        "group {name:?} contains element {x} outside 0..{n}"
                    )));
                }
                if owner[x] != usize::MAX {
                    return Err(Error::input(format!(
                        "element {x} is in both group {:?} and group {name:?}",
                        names[owner[x]]
                    )));
                }
                owner[x] = gi;
            }
            names.push(name);
            groups.push(members);
        }
        if let Some(x) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::input(format!("element {x} belongs to no group")));
        }
        Ok(Grouping {
            n,
            names,
            groups,
            owner,
        })
    }

    /// One group named `name` holding every element.
    pub fn single(n: usize, name: &str) -> Result<Self> {
        Grouping::new(n, vec![(name.to_string(), (0..n).collect())])
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn group(&self, index: usize) -> &[usize] {
        &self.groups[index]
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Group index owning element `x`.
    pub fn owner(&self, x: usize) -> usize {
        self.owner[x]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[usize])> {
        self.names
            .iter()
            .map(String::as_str)
            .zip(self.groups.iter().map(Vec::as_slice))
    }

    /// Index of the smallest group (lowest index among equal sizes).
    pub fn smallest(&self) -> usize {
        (0..self.groups.len())
            .min_by_key(|&i| self.groups[i].len())
            .expect("grouping is nonempty")
    }
}

/// Which group the actionability constraint is enforced on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupSelector {
    Any,
    Group(usize),
}

/// The threshold `t` and the group it applies to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActionabilityParams {
    t: f64,
    pub target: GroupSelector,
}

impl ActionabilityParams {
    pub fn new(t: f64, target: GroupSelector) -> Result<Self> {
        check_threshold(t)?;
        Ok(ActionabilityParams { t, target })
    }

    pub fn t(&self) -> f64 {
        self.t
    }
}

pub(crate) fn check_threshold(t: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::input(format!("threshold t={t} is outside [0, 1]")));
    }
    Ok(())
}

/// A division of `0..n` into nonempty, pairwise disjoint blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Builds a partition, sorting each block and checking coverage.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        let mut blocks = blocks;
        for (bi, b) in blocks.iter_mut().enumerate() {
            if b.is_empty() {
                return Err(Error::input(format!("block {bi} is empty")));
            }
            b.sort_unstable();
            for &x in b.iter() {
                if x >= n {
                    return Err(Error::input(format!(
                        "block {bi} contains element {x} outside 0..{n}"
                    )));
                }
                if seen[x] {
                    return Err(Error::input(format!("element {x} appears in two blocks")));
                }
                seen[x] = true;
            }
        }
        let missing: Vec<usize> = (0..n).filter(|&x| !seen[x]).collect();
        if !missing.is_empty() {
            return Err(Error::input(format!("elements {missing:?} are in no block")));
        }
        Ok(Partition { n, blocks })
    }

    pub fn whole(n: usize) -> Self {
        Partition {
            n,
            blocks: vec![(0..n).collect()],
        }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<Vec<usize>> {
        self.blocks
    }

    /// Blocks sorted lexicographically; the canonical form used in reports
    /// and tie-breaks.
    pub fn sorted_blocks(&self) -> Vec<Vec<usize>> {
        let mut b = self.blocks.clone();
        b.sort();
        b
    }

    /// Element-to-block map.
    pub fn labels(&self) -> Vec<usize> {
        let mut out = vec![0; self.n];
        for (bi, b) in self.blocks.iter().enumerate() {
            for &x in b {
                out[x] = bi;
            }
        }
        out
    }
}

/// Witness that some block holds at least a `t` fraction of some group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityCertificate {
    pub group: usize,
    pub block: usize,
    pub fraction: f64,
}

impl FeasibilityCertificate {
    pub(crate) fn new(group: usize, block: usize, hits: usize, group_size: usize) -> Self {
        FeasibilityCertificate {
            group,
            block,
            fraction: hits as f64 / group_size as f64,
        }
    }
}

/// Validates that `set` is a sorted subset of `0..n`.
pub(crate) fn check_subset(set: &[usize], n: usize) -> Result<()> {
    if let Some(&x) = set.iter().find(|&&x| x >= n) {
        return Err(Error::input(format!("element {x} outside 0..{n}")));
    }
    if set.windows(2).any(|w| w[0] >= w[1]) {
        let mut s = set.to_vec();
        set::normalize(&mut s);
        if s.len() != set.len() {
            return Err(Error::input("set contains duplicate elements"));
        }
        return Err(Error::input("set must be sorted"));
    }
    Ok(())
}
