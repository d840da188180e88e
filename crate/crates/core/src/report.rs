//! Run reports: what a clustering run wrote to disk, and an independent
//! re-check of a report against its instance.

use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cluster::{ClusteringRun, TraceStep};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::model::Partition;
use crate::objective::{partition_cost, required_hits};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportParams {
    pub k: usize,
    pub t: f64,
    /// Name of the constrained group, if the algorithm fixed one.
    pub group: Option<String>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportCertificate {
    pub group: String,
    /// Index into the report's `clusters`.
    pub cluster: usize,
    pub fraction: f64,
}

/// The on-disk form of a run. Failed runs keep the parameters, an empty
/// cluster list, a null cost and the error message.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub algorithm: String,
    pub params: ReportParams,
    pub clusters: Vec<Vec<usize>>,
    pub cost: Option<f64>,
    pub oracle_calls: u64,
    pub feasible: bool,
    pub certificate: Option<ReportCertificate>,
    pub degraded: bool,
    pub trace: Vec<TraceStep>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Report {
    /// Clusters are written sorted; the certificate follows its block. Runs
    /// made without a threshold are judged at the instance threshold.
    pub fn from_run(run: &ClusteringRun, instance: &Instance, seed: Option<u64>) -> Report {
        let t = run.params.t.unwrap_or(instance.t);
        let clusters = run.partition.sorted_blocks();
        let certificate = run
            .certificate
            .clone()
            .or_else(|| crate::objective::is_feasible(&run.partition, &instance.grouping, t))
            .map(|c| {
                let block = &run.partition.blocks()[c.block];
                ReportCertificate {
                    group: instance.grouping.name(c.group).to_string(),
                    cluster: clusters.iter().position(|b| b == block).expect("same blocks"),
                    fraction: c.fraction,
                }
            });
        Report {
            algorithm: run.algorithm.name().to_string(),
            params: ReportParams {
                k: run.params.k,
                t,
                group: run.params.group.map(|g| instance.grouping.name(g).to_string()),
                seed: seed.or(run.params.seed),
            },
            clusters,
            cost: Some(run.cost),
            oracle_calls: run.oracle_calls,
            feasible: certificate.is_some(),
            certificate,
            degraded: run.degraded,
            trace: run.trace.clone(),
            error: None,
        }
    }

    /// Report for a run that produced no partition.
    pub fn failed(algorithm: &str, params: ReportParams, error: &Error) -> Report {
        Report {
            algorithm: algorithm.to_string(),
            params,
            clusters: Vec::new(),
            cost: None,
            oracle_calls: 0,
            feasible: false,
            certificate: None,
            degraded: false,
            trace: Vec::new(),
            error: Some(error.to_string()),
        }
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json_str(text: &str, context: &str) -> Result<Report> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            context: format!("{context} (line {}, column {})", e.line(), e.column()),
            message: e.to_string(),
        })
    }
}

pub fn save_report(report: &Report, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, report.to_json_string())?;
    Ok(())
}

pub fn load_report(path: impl AsRef<Path>) -> Result<Report> {
    let path = path.as_ref();
    Report::from_json_str(&fs::read_to_string(path)?, &path.display().to_string())
}

/// Discrepancies between a report and a fresh evaluation of its clusters.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Verification {
    pub recomputed_cost: Option<f64>,
    pub recomputed_feasible: Option<bool>,
    pub mismatches: Vec<String>,
}

impl Verification {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl fmt::Display for Verification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return write!(f, "report matches the instance");
        }
        for m in &self.mismatches {
            writeln!(f, "- {m}")?;
        }
        Ok(())
    }
}

/// Relative tolerance for comparing a reported cost with a recomputed one.
pub const COST_TOLERANCE: f64 = 1e-9;

/// Recomputes the cost and the actionability of `report.clusters` on
/// `instance` and lists every field that disagrees.
pub fn verify(instance: &Instance, report: &Report) -> Verification {
    let mut out = Verification::default();
    let n = instance.n();
    if let Some(e) = &report.error {
        out.mismatches.push(format!("report records a failed run: {e}"));
        return out;
    }

    let mut count = vec![0usize; n];
    let mut outside = Vec::new();
    for (i, c) in report.clusters.iter().enumerate() {
        if c.is_empty() {
            out.mismatches.push(format!("cluster {i} is empty"));
        }
        for &x in c {
            match count.get_mut(x) {
                Some(slot) => *slot += 1,
                None => outside.push(x),
            }
        }
    }
    let missing: Vec<usize> = (0..n).filter(|&x| count[x] == 0).collect();
    let duplicated: Vec<usize> = (0..n).filter(|&x| count[x] > 1).collect();
    if !missing.is_empty() {
        out.mismatches.push(format!("missing ids {missing:?}"));
    }
    if !duplicated.is_empty() {
        out.mismatches.push(format!("duplicated ids {duplicated:?}"));
    }
    if !outside.is_empty() {
        out.mismatches.push(format!("ids outside 0..{n}: {outside:?}"));
    }
    let blocks: Vec<Vec<usize>> = report
        .clusters
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.sort_unstable();
            c
        })
        .collect();
    let Ok(partition) = Partition::new(n, blocks) else {
        if out.ok() {
            out.mismatches.push("clusters do not partition the ground set".into());
        }
        return out;
    };

    let k = report.params.k;
    if report.degraded != (partition.k() < k) || partition.k() > k {
        out.mismatches.push(format!(
            "{} clusters for k={k} disagrees with degraded={}",
            partition.k(),
            report.degraded
        ));
    }

    let oracle = instance.oracle();
    let cost = partition_cost(&oracle, &partition);
    out.recomputed_cost = Some(cost);
    match report.cost {
        Some(c) if (c - cost).abs() <= COST_TOLERANCE * c.abs().max(cost.abs()).max(1.0) => {}
        Some(c) => out.mismatches.push(format!("cost {c} recomputes to {cost}")),
        None => out.mismatches.push(format!("cost missing; recomputes to {cost}")),
    }

    let t = report.params.t;
    let satisfied = instance.grouping.iter().any(|(_, g)| {
        let need = required_hits(g.len(), t);
        partition
            .blocks()
            .iter()
            .any(|b| crate::set::intersection_len(b, g) >= need)
    });
    out.recomputed_feasible = Some(satisfied);
    if satisfied != report.feasible {
        out.mismatches.push(format!(
            "feasible={} but the clusters are {}actionable at t={t}",
            report.feasible,
            if satisfied { "" } else { "not " }
        ));
    }
    if report.feasible != report.certificate.is_some() {
        out.mismatches.push("feasible flag and certificate disagree".into());
    }
    if let Some(cert) = &report.certificate {
        check_certificate(instance, report, cert, t, &mut out.mismatches);
    }
    out
}

fn check_certificate(instance: &Instance, report: &Report, cert: &ReportCertificate, t: f64, out: &mut Vec<String>) {
    let Some(gi) = instance.grouping.index_of(&cert.group) else {
        out.push(format!("certificate names unknown group {:?}", cert.group));
        return;
    };
    let Some(cluster) = report.clusters.get(cert.cluster) else {
        out.push(format!("certificate cluster {} out of range", cert.cluster));
        return;
    };
    let g = instance.grouping.group(gi);
    let hits = cluster.iter().filter(|x| g.binary_search(x).is_ok()).count();
    let fraction = hits as f64 / g.len() as f64;
    if (fraction - cert.fraction).abs() > 1e-12 {
        out.push(format!(
            "certificate fraction {} but cluster {} holds {hits}/{} of {}",
            cert.fraction,
            cert.cluster,
            g.len(),
            cert.group
        ));
    }
    if hits < required_hits(g.len(), t) {
        out.push(format!(
            "certificate cluster {} holds {hits}/{} of {}, below t={t}",
            cert.cluster,
            g.len(),
            cert.group
        ));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::actionable_gsa;
    use crate::instance::{random_instance, RandomInstanceParams};

    fn sample() -> (Instance, Report) {
        let inst = random_instance(&RandomInstanceParams::new(5, 8, 2, 0.5)).unwrap();
        let run = actionable_gsa(&inst.oracle(), &inst.grouping, 1, 0.5, 3).unwrap();
        let report = Report::from_run(&run, &inst, Some(5));
        (inst, report)
    }

    #[test]
    fn own_report_verifies() {
        let (inst, report) = sample();
        assert!(verify(&inst, &report).ok(), "{}", verify(&inst, &report));
        let text = report.to_json_string();
        assert_eq!(Report::from_json_str(&text, "r").unwrap(), report);
        assert_eq!(report.params.group.as_deref(), Some("g1"));
        assert!(report.clusters.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn tampering_is_caught() {
        let (inst, report) = sample();
        let mut r = report.clone();
        r.cost = Some(r.cost.unwrap() + 0.5);
        assert!(verify(&inst, &r).mismatches[0].starts_with("cost"));

        let mut r = report.clone();
        let x = r.clusters[0].pop().unwrap();
        r.clusters[1].push(x);
        r.clusters[1].push(x);
        let v = verify(&inst, &r);
        assert!(v.mismatches.iter().any(|m| m.contains(&format!("duplicated ids [{x}]"))), "{v}");

        let mut r = report.clone();
        r.clusters[0].remove(0);
        let v = verify(&inst, &r);
        assert!(v.mismatches.iter().any(|m| m.starts_with("missing ids")), "{v}");

        let mut r = report;
        let c = r.certificate.as_mut().unwrap();
        c.fraction = 0.123;
        assert!(!verify(&inst, &r).ok());
    }

    #[test]
    fn failed_run_report() {
        let params = ReportParams {
            k: 9,
            t: 0.5,
            group: None,
            seed: None,
        };
        let r = Report::failed("agsa", params, &Error::infeasible("too many blocks"));
        let json = r.to_json_string();
        assert!(json.contains("\"certificate\": null"));
        assert!(json.contains("\"cost\": null"));
        assert!(!verify(&random_instance(&RandomInstanceParams::new(1, 9, 1, 0.5)).unwrap(), &r).ok());
    }
}
