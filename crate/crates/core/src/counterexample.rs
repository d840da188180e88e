//! A graph on which greedy splitting under the actionability constraint
//! is arbitrarily worse than the best feasible partition.
//!
//! The graph is a heavy clique (edge weight `1/ε`) next to a light path
//! (edge weight `ε`), with one group holding every vertex. The path is
//! just large enough to be actionable on its own, so the first greedy
//! split separates the two components for free; afterwards the path can
//! no longer be divided, and every remaining split has to cut through the
//! clique. Grouping the clique with the two path endpoints instead leaves
//! a cheap path to subdivide, and the cost ratio grows like `1/ε²`.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::instance::Instance;
use crate::model::{Grouping, Partition};
use crate::set::ceil_fraction;

/// Name of the single group in generated instances.
pub const GROUP_NAME: &str = "all";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TreeShape {
    #[default]
    Path,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CounterexampleSpec {
    pub vertices: usize,
    pub t: f64,
    pub epsilon: f64,
    pub k: usize,
    pub tree: TreeShape,
}

impl Default for CounterexampleSpec {
    fn default() -> Self {
        CounterexampleSpec {
            vertices: 100,
            t: 0.51,
            epsilon: 0.01,
            k: 10,
            tree: TreeShape::Path,
        }
    }
}

impl CounterexampleSpec {
    /// `(clique size, tree size)` = `(⌊(1−t)|V|⌋, ⌈t|V|⌉)`.
    pub fn sizes(&self) -> (usize, usize) {
        let tree = ceil_fraction(self.t, self.vertices).min(self.vertices);
        (self.vertices - tree, tree)
    }

    pub fn validate(&self) -> Result<()> {
        crate::model::check_threshold(self.t)?;
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::input(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        if self.k == 0 {
            return Err(Error::input("k must be at least 1"));
        }
        let (clique, tree) = self.sizes();
        if clique < 2 {
            return Err(Error::input(format!("clique would have {clique} vertices; need at least 2")));
        }
        if tree < 3 {
            return Err(Error::input(format!("tree would have {tree} vertices; need at least 3")));
        }
        Ok(())
    }
}

/// Named vertex sets of a generated instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Landmarks {
    pub clique: Vec<usize>,
    /// Tree vertices in path order, from `a` to `b`.
    pub tree: Vec<usize>,
    pub a: usize,
    pub b: usize,
}

/// Builds the instance: vertices `0..c` form the clique, the remaining
/// ones a path whose endpoints are `a` and `b`.
pub fn make_counterexample(spec: &CounterexampleSpec) -> Result<(Instance, Landmarks)> {
    spec.validate()?;
    let n = spec.vertices;
    let (c, _) = spec.sizes();
    let heavy = 1.0 / spec.epsilon;
    let mut edges = Vec::new();
    for u in 0..c {
        for v in u + 1..c {
            edges.push((u, v, heavy));
        }
    }
    match spec.tree {
        TreeShape::Path => {
            for u in c..n - 1 {
                edges.push((u, u + 1, spec.epsilon));
            }
        }
    }
    let graph = WeightedGraph::new(n, edges)?;
    let grouping = Grouping::single(n, GROUP_NAME)?;
    let instance = Instance::new(graph, grouping, spec.t)?;
    let landmarks = Landmarks {
        clique: (0..c).collect(),
        tree: (c..n).collect(),
        a: c,
        b: n - 1,
    };
    Ok((instance, landmarks))
}

/// The cheap feasible partition: the clique together with `a` and `b`,
/// then the rest of the path cut into `k − 1` contiguous runs whose
/// lengths differ by at most one (longer runs first).
pub fn make_alternative_partition(landmarks: &Landmarks, k: usize) -> Result<Partition> {
    if k < 2 {
        return Err(Error::input("the alternative partition needs k ≥ 2"));
    }
    let n = landmarks.clique.len() + landmarks.tree.len();
    let interior = &landmarks.tree[1..landmarks.tree.len() - 1];
    let runs = k - 1;
    if interior.len() < runs {
        return Err(Error::input(format!(
            "cannot cut {} interior path vertices into {runs} runs",
            interior.len()
        )));
    }
    let mut first = landmarks.clique.clone();
    first.push(landmarks.a);
    first.push(landmarks.b);
    let mut blocks = vec![first];
    let (q, r) = (interior.len() / runs, interior.len() % runs);
    let mut at = 0;
    for i in 0..runs {
        let len = q + usize::from(i < r);
        blocks.push(interior[at..at + len].to_vec());
        at += len;
    }
    Partition::new(n, blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objective::{is_feasible, partition_cost};

    #[test]
    fn default_sizes() {
        let (inst, lm) = make_counterexample(&CounterexampleSpec::default()).unwrap();
        assert_eq!((lm.clique.len(), lm.tree.len()), (49, 51));
        let heavy = inst.graph.edges().iter().filter(|e| e.2 == 100.0).count();
        let light = inst.graph.edges().iter().filter(|e| e.2 == 0.01).count();
        assert_eq!((heavy, light), (1176, 50));
        assert_eq!(inst.graph.components().len(), 2);
        assert_eq!((inst.graph.degree(lm.a), inst.graph.degree(lm.b)), (1, 1));
        assert_eq!(inst.graph.cut(&lm.clique).unwrap(), 0.0);
        assert_eq!(inst.graph.cut(&lm.tree).unwrap(), 0.0);
    }

    #[test]
    fn scaled_sizes() {
        let spec = CounterexampleSpec { vertices: 12, t: 0.5, ..Default::default() };
        assert_eq!(spec.sizes(), (6, 6));
        let spec = CounterexampleSpec { vertices: 12, t: 0.51, ..Default::default() };
        assert_eq!(spec.sizes(), (5, 7));
    }

    #[test]
    fn invalid_specs() {
        for spec in [
            CounterexampleSpec { epsilon: 0.0, ..Default::default() },
            CounterexampleSpec { t: 0.99, ..Default::default() },
            CounterexampleSpec { t: 0.01, ..Default::default() },
            CounterexampleSpec { vertices: 4, t: 0.5, ..Default::default() },
            CounterexampleSpec { t: 1.2, ..Default::default() },
        ] {
            assert!(make_counterexample(&spec).is_err(), "{spec:?}");
        }
    }

    #[test]
    fn alternative_partition_costs() {
        let eps = 0.01;
        let (inst, lm) = make_counterexample(&CounterexampleSpec::default()).unwrap();
        let f = inst.oracle();
        let p = make_alternative_partition(&lm, 10).unwrap();
        assert_eq!(p.blocks()[0].len(), 51);
        assert_eq!(p.k(), 10);
        let sizes: Vec<usize> = p.blocks()[1..].iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![6, 6, 6, 6, 5, 5, 5, 5, 5]);
        assert!(is_feasible(&p, &inst.grouping, 0.51).is_some());
        assert!((partition_cost(&f, &p) - 20.0 * eps).abs() < 1e-9 / eps);

        let p2 = make_alternative_partition(&lm, 2).unwrap();
        assert!((partition_cost(&f, &p2) - 4.0 * eps).abs() < 1e-12);
        assert!(make_alternative_partition(&lm, 1).is_err());
        assert!(make_alternative_partition(&lm, 51).is_err());
    }
}
