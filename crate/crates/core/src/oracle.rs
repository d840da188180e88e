//! Value oracles for symmetric submodular set functions.
//!
//! Algorithms only ever see an [`Oracle`]. Every evaluation of the
//! underlying function bumps a shared counter, so derived oracles built by
//! [`Oracle::contract`] or [`Oracle::split_increment`] report their cost in
//! terms of base-function evaluations.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussian::GaussianModel;
use crate::graph::WeightedGraph;
use crate::model::Partition;
use crate::set;

/// Absolute tolerance for comparing cut values.
pub const CUT_TOLERANCE: f64 = 1e-9;
/// Absolute tolerance for comparing Gaussian mutual-information values.
pub const MI_TOLERANCE: f64 = 1e-7;

/// A set function over `0..ground_size()`.
///
/// Implementations must be normalized (`value(&[]) == 0`), symmetric and
/// submodular. Sets passed to `value` are sorted and in range.
pub trait SetFunction: Send + Sync {
    fn ground_size(&self) -> usize;

    fn value(&self, set: &[usize]) -> f64;

    /// Absolute tolerance for equality of two values.
    fn tolerance(&self) -> f64 {
        CUT_TOLERANCE
    }

    /// For the split increment `S ↦ f(S) + f(B∖S) − f(B)` on `block` B:
    /// a partition of B, as positions into `block`, such that the increment
    /// is zero exactly on unions of its parts. `None` when the function
    /// cannot tell cheaply. With `block` the whole ground set this describes
    /// the zero sets of `f` itself.
    fn induced_zero_components(&self, block: &[usize]) -> Option<Vec<Vec<usize>>> {
        let _ = block;
        None
    }
}

impl SetFunction for WeightedGraph {
    fn ground_size(&self) -> usize {
        self.vertex_count()
    }

    fn value(&self, set: &[usize]) -> f64 {
        self.cut_unchecked(set)
    }

    fn induced_zero_components(&self, block: &[usize]) -> Option<Vec<Vec<usize>>> {
        Some(self.induced_components(block))
    }
}

impl SetFunction for GaussianModel {
    fn ground_size(&self) -> usize {
        self.dimension()
    }

    fn value(&self, set: &[usize]) -> f64 {
        self.value_unchecked(set)
    }

    fn tolerance(&self) -> f64 {
        MI_TOLERANCE
    }
}

enum Node {
    Leaf(Arc<dyn SetFunction>),
    Contracted {
        base: Oracle,
        supernodes: Vec<Vec<usize>>,
    },
    Split {
        base: Oracle,
        block: Vec<usize>,
        block_value: f64,
    },
}

/// Counted access to a set function.
///
/// Cloning is cheap and clones share the evaluation counter. The counter is
/// atomic, so an oracle may be evaluated from several threads at once.
#[derive(Clone)]
pub struct Oracle {
    node: Arc<Node>,
    n: usize,
    calls: Arc<AtomicU64>,
}

impl fmt::Debug for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &*self.node {
            Node::Leaf(_) => "leaf",
            Node::Contracted { .. } => "contracted",
            Node::Split { .. } => "split",
        };
        f.debug_struct("Oracle")
            .field("kind", &kind)
            .field("n", &self.n)
            .field("calls", &self.calls())
            .finish()
    }
}

impl Oracle {
    pub fn new<F: SetFunction + 'static>(f: F) -> Self {
        let n = f.ground_size();
        Oracle {
            node: Arc::new(Node::Leaf(Arc::new(f))),
            n,
            calls: Arc::new(AtomicU64::new(0)),
        }
    }

    pub fn cut(graph: WeightedGraph) -> Self {
        Oracle::new(graph)
    }

    pub fn gaussian(model: GaussianModel) -> Self {
        Oracle::new(model)
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    /// Base-function evaluations made so far through this oracle or any
    /// oracle sharing its counter.
    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    pub fn tolerance(&self) -> f64 {
        match &*self.node {
            Node::Leaf(f) => f.tolerance(),
            Node::Contracted { base, .. } | Node::Split { base, .. } => base.tolerance(),
        }
    }

    /// Evaluates `f(set)`; `set` must be sorted and within `0..n`.
    pub fn eval(&self, set: &[usize]) -> f64 {
        debug_assert!(set.windows(2).all(|w| w[0] < w[1]), "unsorted set {set:?}");
        debug_assert!(set.last().is_none_or(|&x| x < self.n));
        match &*self.node {
            Node::Leaf(f) => {
                self.calls.fetch_add(1, Ordering::Relaxed);
                f.value(set)
            }
            Node::Contracted { base, supernodes } => {
                let mut expanded: Vec<usize> = set
                    .iter()
                    .flat_map(|&s| supernodes[s].iter().copied())
                    .collect();
                expanded.sort_unstable();
                base.eval(&expanded)
            }
            Node::Split {
                base,
                block,
                block_value,
            } => {
                let mut inside = Vec::with_capacity(set.len());
                let mut outside = Vec::with_capacity(block.len() - set.len());
                let mut it = set.iter().peekable();
                for (local, &x) in block.iter().enumerate() {
                    if it.peek() == Some(&&local) {
                        it.next();
                        inside.push(x);
                    } else {
                        outside.push(x);
                    }
                }
                base.eval(&inside) + base.eval(&outside) - block_value
            }
        }
    }

    /// Checked evaluation for arbitrary user input.
    pub fn value(&self, set: &[usize]) -> Result<f64> {
        crate::model::check_subset(set, self.n)?;
        Ok(self.eval(set))
    }

    /// The function over supernodes `0..p`, where supernode `i` stands for
    /// the union `supernodes[i]` of base elements.
    pub fn contract(&self, supernodes: &[Vec<usize>]) -> Result<Oracle> {
        let p = Partition::new(self.n, supernodes.to_vec())?;
        Ok(Oracle {
            node: Arc::new(Node::Contracted {
                base: self.clone(),
                supernodes: p.into_blocks(),
            }),
            n: supernodes.len(),
            calls: Arc::clone(&self.calls),
        })
    }

    /// The cost of splitting `block` in two: over local ids `0..|block|`,
    /// `S ↦ f(S) + f(block∖S) − f(block)`.
    ///
    /// This is itself normalized, symmetric (within the block) and
    /// submodular whenever `f` is.
    pub fn split_increment(&self, block: &[usize]) -> Oracle {
        debug_assert!(block.windows(2).all(|w| w[0] < w[1]));
        let block_value = self.eval(block);
        Oracle {
            node: Arc::new(Node::Split {
                base: self.clone(),
                block: block.to_vec(),
                block_value,
            }),
            n: block.len(),
            calls: Arc::clone(&self.calls),
        }
    }

    /// See [`SetFunction::induced_zero_components`]; carried through
    /// contraction and block splits.
    pub fn zero_components(&self) -> Option<Vec<Vec<usize>>> {
        let all: Vec<usize> = (0..self.n).collect();
        self.induced_zero_components(&all)
    }

    fn induced_zero_components(&self, block: &[usize]) -> Option<Vec<Vec<usize>>> {
        match &*self.node {
            Node::Leaf(f) => f.induced_zero_components(block),
            Node::Contracted { base, supernodes } => {
                let mut expanded: Vec<(usize, usize)> = block
                    .iter()
                    .enumerate()
                    .flat_map(|(pos, &s)| supernodes[s].iter().map(move |&x| (x, pos)))
                    .collect();
                expanded.sort_unstable();
                let elements: Vec<usize> = expanded.iter().map(|&(x, _)| x).collect();
                let comps = base.induced_zero_components(&elements)?;
                // A supernode straddling several base components joins them.
                let mut uf = UnionFind::new(block.len());
                for c in &comps {
                    for w in c.windows(2) {
                        uf.union(expanded[w[0]].1, expanded[w[1]].1);
                    }
                }
                Some(group_by_root(block.len(), |pos| uf.find(pos)))
            }
            Node::Split { base, block: outer, .. } => {
                let elements: Vec<usize> = block.iter().map(|&i| outer[i]).collect();
                base.induced_zero_components(&elements)
            }
        }
    }
}

/// Groups `0..n` by `root(i)` (a value below `n`), parts ordered by their
/// first member.
fn group_by_root(n: usize, mut root: impl FnMut(usize) -> usize) -> Vec<Vec<usize>> {
    let mut slot = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let r = root(i);
        if slot[r] == usize::MAX {
            slot[r] = out.len();
            out.push(Vec::new());
        }
        out[slot[r]].push(i);
    }
    out
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Outcome of [`check_symmetric_submodular`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContractReport {
    pub n: usize,
    pub tolerance: f64,
    pub empty_value: f64,
    pub full_value: f64,
    pub symmetry_exhaustive: bool,
    pub symmetry_checks: usize,
    /// Largest `|f(S) − f(D∖S)|` seen.
    pub worst_symmetry: f64,
    pub submodular_checks: usize,
    /// Largest `f(A∪B) + f(A∩B) − f(A) − f(B)` seen (positive is a violation).
    pub worst_submodular: f64,
    pub violations: usize,
}

impl ContractReport {
    pub fn is_clean(&self) -> bool {
        self.violations == 0
    }
}

/// Largest ground set on which symmetry is checked exhaustively.
pub const EXHAUSTIVE_SYMMETRY_LIMIT: usize = 12;

/// Spot-checks normalization, symmetry and submodularity.
///
/// Symmetry is exhaustive up to [`EXHAUSTIVE_SYMMETRY_LIMIT`] elements and
/// sampled above it; `samples` random `(A, B)` pairs are drawn for the
/// submodular inequality. Violations are counted, never raised.
pub fn check_symmetric_submodular(oracle: &Oracle, samples: usize, seed: u64) -> Result<ContractReport> {
    if samples == 0 {
        return Err(Error::input("sample count must be at least 1"));
    }
    let n = oracle.ground_size();
    let tol = oracle.tolerance();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all: Vec<usize> = (0..n).collect();
    let empty_value = oracle.eval(&[]);
    let full_value = oracle.eval(&all);
    let mut violations =
        usize::from(empty_value.abs() > tol) + usize::from(full_value.abs() > tol);

    let mut worst_symmetry: f64 = 0.0;
    let mut symmetry_checks = 0;
    let mut check_sym = |s: Vec<usize>, violations: &mut usize| {
        let d = (oracle.eval(&s) - oracle.eval(&set::complement(&s, n))).abs();
        worst_symmetry = worst_symmetry.max(d);
        if d > tol {
            *violations += 1;
        }
        symmetry_checks += 1;
    };
    let exhaustive = n <= EXHAUSTIVE_SYMMETRY_LIMIT;
    if exhaustive {
        for mask in 0u32..(1 << n) {
            check_sym(set::mask_to_set(mask), &mut violations);
        }
    } else {
        for _ in 0..samples {
            let s = random_subset(&mut rng, n);
            check_sym(s, &mut violations);
        }
    }

    let mut worst_submodular = f64::NEG_INFINITY;
    for _ in 0..samples {
        let a = random_subset(&mut rng, n);
        let b = random_subset(&mut rng, n);
        let union = set::union(&a, &b);
        let inter: Vec<usize> = a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect();
        let gap = oracle.eval(&union) + oracle.eval(&inter) - oracle.eval(&a) - oracle.eval(&b);
        worst_submodular = worst_submodular.max(gap);
        if gap > tol {
            violations += 1;
        }
    }

    Ok(ContractReport {
        n,
        tolerance: tol,
        empty_value,
        full_value,
        symmetry_exhaustive: exhaustive,
        symmetry_checks,
        worst_symmetry,
        submodular_checks: samples,
        worst_submodular,
        violations,
    })
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    (0..n).filter(|_| rng.gen_bool(0.5)).collect()
}
