//! Undirected weighted graphs and their cut function.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// An undirected graph with nonnegative edge weights.
///
/// Edges are stored canonically as `(u, v, w)` with `u < v`, sorted, with
/// parallel edges merged by summing their weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
    adjacency: Vec<Vec<(usize, f64)>>,
}

impl WeightedGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        let mut merged: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for (u, v, w) in edges {
            if u >= n || v >= n {
                return Err(Error::input(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::input(format!("self-loop on vertex {u}")));
            }
            if !(w >= 0.0) || !w.is_finite() {
                return Err(Error::input(format!(
                    "edge ({u}, {v}) has invalid weight {w}"
                )));
            }
            *merged.entry((u.min(v), u.max(v))).or_insert(0.0) += w;
        }
        let edges: Vec<_> = merged.into_iter().map(|((u, v), w)| (u, v, w)).collect();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v, w) in &edges {
            adjacency[u].push((v, w));
            adjacency[v].push((u, w));
        }
        Ok(WeightedGraph {
            n,
            edges,
            adjacency,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn neighbors(&self, u: usize) -> &[(usize, f64)] {
        &self.adjacency[u]
    }

    /// Number of distinct neighbours joined by a positive-weight edge.
    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].iter().filter(|(_, w)| *w > 0.0).count()
    }

    /// Total weight of edges with exactly one endpoint in `set`.
    pub fn cut(&self, set: &[usize]) -> Result<f64> {
        if let Some(&x) = set.iter().find(|&&x| x >= self.n) {
            return Err(Error::input(format!("element {x} outside 0..{}", self.n)));
        }
        Ok(self.cut_unchecked(set))
    }

    pub(crate) fn cut_unchecked(&self, set: &[usize]) -> f64 {
        let mut inside = vec![false; self.n];
        for &x in set {
            inside[x] = true;
        }
        let mut total = 0.0;
        for &u in set {
            for &(v, w) in &self.adjacency[u] {
                if !inside[v] {
                    total += w;
                }
            }
        }
        total
    }

    /// Connected components over positive-weight edges, each sorted, listed
    /// by smallest element.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.n).collect();
        self.induced_components(&all)
    }

    /// Components of the subgraph induced by the sorted vertex list `block`,
    /// reported as positions into `block`.
    pub fn induced_components(&self, block: &[usize]) -> Vec<Vec<usize>> {
        let mut position = vec![usize::MAX; self.n];
        for (i, &x) in block.iter().enumerate() {
            position[x] = i;
        }
        let mut comp = vec![usize::MAX; block.len()];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for start in 0..block.len() {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[start] = id;
            let mut members = vec![start];
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for &(v, w) in &self.adjacency[block[i]] {
                    let j = position[v];
                    if w > 0.0 && j != usize::MAX && comp[j] == usize::MAX {
                        comp[j] = id;
                        members.push(j);
                        stack.push(j);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }
}

/// Total weight of edges crossing between `set` and its complement.
pub fn cut_value(graph: &WeightedGraph, set: &[usize]) -> Result<f64> {
    graph.cut(set)
}
