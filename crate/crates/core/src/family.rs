//! Hereditary families given by per-group caps.
//!
//! A set `S` belongs to the family when at least one listed group `g`
//! satisfies `|S ∩ g| ≤ cap_g`. Shrinking `S` never increases an
//! intersection, so the family is closed under taking subsets.
//!
//! The actionability constraint "some block keeps at least a `t` fraction
//! of `g`" is the complement side of this: `S` is in the family for `g`
//! exactly when `D∖S` keeps `⌈t|g|⌉` or more elements of `g`. Caps are
//! integers, `cap_g = |g| − ⌈t|g|⌉`, which is the same condition as
//! `|S ∩ g| ≤ (1 − t)|g|` for integer intersection sizes.

use crate::model::Grouping;
use crate::set::{self, ceil_fraction};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupCapFamily {
    n: usize,
    groups: Vec<Vec<usize>>,
    caps: Vec<i64>,
}

impl GroupCapFamily {
    /// A family over `0..n` from `(group, cap)` pairs; groups are sorted
    /// element lists within `0..n`.
    pub fn new(n: usize, constraints: Vec<(Vec<usize>, i64)>) -> Self {
        let (mut groups, caps): (Vec<_>, Vec<_>) = constraints.into_iter().unzip();
        for g in &mut groups {
            set::normalize(g);
            assert!(g.last().is_none_or(|&x| x < n), "group outside ground set");
        }
        GroupCapFamily { n, groups, caps }
    }

    /// The family of sets whose complement is actionable for at least one
    /// group of `grouping`.
    pub fn global(grouping: &Grouping, t: f64) -> Self {
        let constraints = grouping
            .iter()
            .map(|(_, g)| (g.to_vec(), global_cap(g.len(), t)))
            .collect();
        GroupCapFamily::new(grouping.ground_size(), constraints)
    }

    /// The family of sets whose complement is actionable for group `index`.
    pub fn for_group(grouping: &Grouping, index: usize, t: f64) -> Self {
        let g = grouping.group(index);
        GroupCapFamily::new(
            grouping.ground_size(),
            vec![(g.to_vec(), global_cap(g.len(), t))],
        )
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn caps(&self) -> &[i64] {
        &self.caps
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    /// Membership for a sorted set.
    pub fn contains(&self, set: &[usize]) -> bool {
        self.groups
            .iter()
            .zip(&self.caps)
            .any(|(g, &cap)| set::intersection_len(set, g) as i64 <= cap)
    }

    /// Largest cardinality of any member, or `None` if even `∅` is excluded
    /// (every cap negative).
    pub fn max_member_size(&self) -> Option<usize> {
        self.groups
            .iter()
            .zip(&self.caps)
            .filter(|(_, &cap)| cap >= 0)
            .map(|(g, &cap)| self.n - g.len() + (cap as usize).min(g.len()))
            .max()
    }

    /// Whether some nonempty proper subset of the ground set is a member.
    pub fn admits_split(&self) -> bool {
        self.n >= 2 && self.max_member_size().is_some_and(|m| m >= 1)
    }

    /// Whether every subset of the ground set is a member.
    pub fn is_vacuous(&self) -> bool {
        self.max_member_size() == Some(self.n)
    }

    pub(crate) fn mask_view(&self) -> MaskFamily {
        assert!(self.n <= 32);
        MaskFamily {
            constraints: self
                .groups
                .iter()
                .zip(&self.caps)
                .map(|(g, &cap)| (set::set_to_mask(g), cap))
                .collect(),
        }
    }
}

/// Bitmask form of a family for exhaustive loops.
pub(crate) struct MaskFamily {
    constraints: Vec<(u32, i64)>,
}

impl MaskFamily {
    pub(crate) fn contains(&self, mask: u32) -> bool {
        self.constraints
            .iter()
            .any(|&(g, cap)| (mask & g).count_ones() as i64 <= cap)
    }
}

/// `|g| − ⌈t|g|⌉`.
pub fn global_cap(group_size: usize, t: f64) -> i64 {
    group_size as i64 - ceil_fraction(t, group_size) as i64
}

pub fn family_member(set: &[usize], family: &GroupCapFamily) -> bool {
    family.contains(set)
}

/// The family used when the block `block` (sorted ids) must stay
/// actionable for group `index` after a split: over local positions
/// `0..|block|`, `S` is a member iff `|S ∩ g| ≤ |block ∩ g| − ⌈t|g|⌉`.
///
/// The cap may be negative, in which case no set touching `g` is a member
/// and, since the only constraint is on `g`, the family is empty.
pub fn localized_family(block: &[usize], grouping: &Grouping, index: usize, t: f64) -> GroupCapFamily {
    let g = grouping.group(index);
    let local: Vec<usize> = block
        .iter()
        .enumerate()
        .filter(|(_, x)| grouping.owner(**x) == index)
        .map(|(i, _)| i)
        .collect();
    let cap = local.len() as i64 - ceil_fraction(t, g.len()) as i64;
    GroupCapFamily::new(block.len(), vec![(local, cap)])
}
