//! Problem instances: the JSON file format and a seeded generator.
//!
//! ```json
//! { "n": 4, "edges": [[0, 1, 1.0], [2, 3, 2.5]],
//!   "groups": { "a": [0, 2], "b": [1, 3] }, "t": 0.5 }
//! ```
//!
//! An optional `"covariance"` matrix switches the objective from the graph
//! cut to Gaussian mutual information. Group order in the file is the group
//! index used everywhere else.

use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::gaussian::GaussianModel;
use crate::graph::WeightedGraph;
use crate::model::{check_threshold, GroundSet, Grouping};
use crate::oracle::Oracle;

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub ground: GroundSet,
    pub graph: WeightedGraph,
    pub covariance: Option<GaussianModel>,
    pub grouping: Grouping,
    pub t: f64,
}

#[derive(Serialize, Deserialize)]
struct InstanceFile {
    n: usize,
    #[serde(default)]
    edges: Vec<(usize, usize, f64)>,
    groups: Map<String, Value>,
    t: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    covariance: Option<Vec<Vec<f64>>>,
}

impl Instance {
    pub fn new(graph: WeightedGraph, grouping: Grouping, t: f64) -> Result<Self> {
        let n = graph.vertex_count();
        if grouping.ground_size() != n {
            return Err(Error::input(format!(
                "grouping covers {} elements but the graph has {n}",
                grouping.ground_size()
            )));
        }
        check_threshold(t)?;
        Ok(Instance {
            ground: GroundSet::new(n)?,
            graph,
            covariance: None,
            grouping,
            t,
        })
    }

    /// Switches the objective to Gaussian mutual information.
    pub fn with_covariance(mut self, model: GaussianModel) -> Result<Self> {
        if model.dimension() != self.n() {
            return Err(Error::input(format!(
                "covariance is {0}x{0} but the instance has {1} elements",
                model.dimension(),
                self.n()
            )));
        }
        self.covariance = Some(model);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.ground.size()
    }

    /// A fresh oracle (with its own call counter) for the instance objective.
    pub fn oracle(&self) -> Oracle {
        match &self.covariance {
            Some(m) => Oracle::gaussian(m.clone()),
            None => Oracle::cut(self.graph.clone()),
        }
    }

    pub fn from_json_str(text: &str, context: &str) -> Result<Self> {
        let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            context: format!("{context} (line {}, column {})", e.line(), e.column()),
            message: e.to_string(),
        })?;
        let mut groups = Vec::with_capacity(file.groups.len());
        for (name, ids) in file.groups {
            let ids: Vec<usize> = serde_json::from_value(ids).map_err(|e| Error::Parse {
                context: format!("{context}, field groups.{name}"),
                message: e.to_string(),
            })?;
            groups.push((name, ids));
        }
        let grouping = Grouping::new(file.n, groups)?;
        let graph = WeightedGraph::new(file.n, file.edges)?;
        let inst = Instance::new(graph, grouping, file.t)?;
        match file.covariance {
            Some(rows) => inst.with_covariance(GaussianModel::new(&rows)?),
            None => Ok(inst),
        }
    }

    pub fn to_json_string(&self) -> String {
        let groups = self
            .grouping
            .iter()
            .map(|(name, g)| (name.to_string(), Value::from(g.to_vec())))
            .collect();
        let file = InstanceFile {
            n: self.n(),
            edges: self.graph.edges().to_vec(),
            groups,
            t: self.t,
            covariance: self.covariance.as_ref().map(GaussianModel::rows),
        };
        let mut s = serde_json::to_string_pretty(&file).expect("instance serializes");
        s.push('\n');
        s
    }
}

pub fn load_instance(path: impl AsRef<Path>) -> Result<Instance> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    Instance::from_json_str(&text, &path.display().to_string())
}

pub fn save_instance(instance: &Instance, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, instance.to_json_string())?;
    Ok(())
}

/// Reads `u<TAB>v[<TAB>w]` lines (weight defaults to 1); blank lines and
/// lines starting with `#` are skipped.
pub fn parse_edge_list_tsv(text: &str) -> Result<Vec<(usize, usize, f64)>> {
    let mut edges = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
        let bad = |message: String| Error::Parse {
            context: format!("edge list line {}", lineno + 1),
            message,
        };
        if !(2..=3).contains(&fields.len()) {
            return Err(bad(format!("expected 2 or 3 fields, got {}", fields.len())));
        }
        let u = fields[0].parse().map_err(|e| bad(format!("vertex {:?}: {e}", fields[0])))?;
        let v = fields[1].parse().map_err(|e| bad(format!("vertex {:?}: {e}", fields[1])))?;
        let w = match fields.get(2) {
            Some(f) => f.parse().map_err(|e| bad(format!("weight {f:?}: {e}")))?,
            None => 1.0,
        };
        edges.push((u, v, w));
    }
    Ok(edges)
}

/// Parameters for [`random_instance`].
#[derive(Debug, Clone, PartialEq)]
pub struct RandomInstanceParams {
    pub seed: u64,
    pub n: usize,
    /// Probability that each vertex pair is joined, in `(0, 1]`.
    pub density: f64,
    /// Inclusive range of integer edge weights.
    pub weights: (u32, u32),
    pub groups: usize,
    pub t: f64,
}

impl RandomInstanceParams {
    pub fn new(seed: u64, n: usize, groups: usize, t: f64) -> Self {
        RandomInstanceParams {
            seed,
            n,
            density: 0.5,
            weights: (1, 9),
            groups,
            t,
        }
    }
}

/// Seeded random graph instance; equal parameters give identical instances.
///
/// Each vertex pair gets an edge with probability `density` and a uniform
/// integer weight; elements are dealt round-robin into `groups` groups
/// named `g0, g1, …`, then the assignment is shuffled.
pub fn random_instance(params: &RandomInstanceParams) -> Result<Instance> {
    let RandomInstanceParams {
        seed,
        n,
        density,
        weights: (lo, hi),
        groups: m,
        t,
    } = *params;
    if n < 2 {
        return Err(Error::input("random instances need at least two elements"));
    }
    if m == 0 || m > n {
        return Err(Error::input(format!("cannot deal {n} elements into {m} nonempty groups")));
    }
    if !(density > 0.0 && density <= 1.0) {
        return Err(Error::input(format!("edge density {density} is outside (0, 1]")));
    }
    if lo > hi {
        return Err(Error::input(format!("empty weight range {lo}..={hi}")));
    }
    check_threshold(t)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.push((u, v, rng.gen_range(lo..=hi) as f64));
            }
        }
    }
    let mut owner: Vec<usize> = (0..n).map(|i| i % m).collect();
    owner.shuffle(&mut rng);
    let mut members = vec![Vec::new(); m];
    for (x, &g) in owner.iter().enumerate() {
        members[g].push(x);
    }
    let grouping = Grouping::new(
        n,
        members
            .into_iter()
            .enumerate()
            .map(|(i, g)| (format!("g{i}"), g))
            .collect(),
    )?;
    Instance::new(WeightedGraph::new(n, edges)?, grouping, t)
}

/// A random positive definite covariance `AAᵀ/n + ½I` with entries of `A`
/// uniform in `[−1, 1]`.
pub fn random_covariance(seed: u64, n: usize) -> Result<GaussianModel> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect())
        .collect();
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let dot: f64 = (0..n).map(|l| a[i][l] * a[j][l]).sum();
                    dot / n as f64 + if i == j { 0.5 } else { 0.0 }
                })
                .collect()
        })
        .collect();
    GaussianModel::new(&rows)
}
