//! A seeded battery of consistency checks, comparing each algorithm with
//! exhaustive search on small instances. Seeds run in parallel; results
//! are merged in seed order, so the outcome does not depend on scheduling.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cluster::{
    actionable_gsa_multigroup, bound_chain, gsa, lemma1_check, optimal_two_clustering, parallel_split,
};
use crate::error::{Error, Result};
use crate::family::GroupCapFamily;
use crate::instance::{random_covariance, random_instance, Instance, RandomInstanceParams};
use crate::minimize::{
    brute_force_best_partition, brute_force_min, constrained_min, minimal_optimal_solutions, queyranne_min,
    BRUTE_PARTITION_LIMIT,
};
use crate::model::Grouping;
use crate::oracle::{check_symmetric_submodular, Oracle};
use crate::report::{verify, Report};
use crate::set;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BatteryConfig {
    pub n_max: usize,
    pub seeds: u64,
    pub k_max: usize,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        BatteryConfig {
            n_max: 10,
            seeds: 100,
            k_max: 4,
        }
    }
}

/// Smallest instance size the battery draws.
pub const N_MIN: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub suite: &'static str,
    pub seed: u64,
    pub detail: String,
    /// The instance in file format, for replay.
    pub instance: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteSummary {
    pub name: &'static str,
    pub cases: usize,
    pub checks: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct BatteryReport {
    pub suites: Vec<SuiteSummary>,
    pub failures: Vec<Failure>,
}

impl BatteryReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Outcome of one suite on one case: number of checks made, or the first
/// one that failed.
type Outcome = std::result::Result<usize, String>;

struct Case {
    seed: u64,
    instance: Instance,
    k_max: usize,
}

type Suite = fn(&Case) -> Outcome;

const SUITES: [(&str, Suite); 10] = [
    ("oracle contracts", oracle_contracts),
    ("family closure", family_closure),
    ("pendant-pair minimum", pendant_pair),
    ("constrained minimum", constrained),
    ("optimal 2-clustering", two_clustering),
    ("greedy bound", greedy_bound),
    ("actionable greedy, k=2", actionable_two),
    ("minimal solutions", minimal_solutions),
    ("parallel-split bound", parallel_bound),
    ("reports", reports),
];

/// The random instance used for `seed`.
pub fn battery_instance(seed: u64, n_max: usize) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_ba77);
    let n = N_MIN + (seed as usize) % (n_max + 1 - N_MIN);
    let groups = *[1, 2].choose(&mut rng).unwrap();
    let t = *[0.4, 0.51, 0.75].choose(&mut rng).unwrap();
    let density = *[0.3, 0.5, 0.8].choose(&mut rng).unwrap();
    random_instance(&RandomInstanceParams {
        seed,
        n,
        density,
        weights: (1, 9),
        groups,
        t,
    })
}

pub fn run_battery(config: &BatteryConfig) -> Result<BatteryReport> {
    if config.n_max > BRUTE_PARTITION_LIMIT {
        return Err(Error::TooLarge {
            what: "self-test instances (exhaustive partition search)",
            n: config.n_max,
            limit: BRUTE_PARTITION_LIMIT,
        });
    }
    if config.n_max < N_MIN {
        return Err(Error::input(format!("n_max must be at least {N_MIN}")));
    }
    if config.seeds == 0 {
        return Err(Error::input("at least one seed is needed"));
    }
    if config.k_max < 2 {
        return Err(Error::input("k_max must be at least 2"));
    }
    let cases: Vec<Case> = (0..config.seeds)
        .map(|seed| {
            battery_instance(seed, config.n_max).map(|instance| Case {
                seed,
                instance,
                k_max: config.k_max,
            })
        })
        .collect::<Result<_>>()?;
    let outcomes: Vec<Vec<Outcome>> = cases
        .par_iter()
        .map(|case| SUITES.iter().map(|(_, suite)| suite(case)).collect())
        .collect();

    let mut report = BatteryReport::default();
    for (s, (name, _)) in SUITES.iter().enumerate() {
        let mut summary = SuiteSummary {
            name,
            cases: cases.len(),
            checks: 0,
            failures: 0,
        };
        for (case, outcome) in cases.iter().zip(&outcomes) {
            match &outcome[s] {
                Ok(n) => summary.checks += n,
                Err(detail) => {
                    summary.failures += 1;
                    report.failures.push(Failure {
                        suite: name,
                        seed: case.seed,
                        detail: detail.clone(),
                        instance: case.instance.to_json_string(),
                    });
                }
            }
        }
        report.suites.push(summary);
    }
    Ok(report)
}

fn ensure(cond: bool, detail: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(detail())
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

fn oracle_contracts(case: &Case) -> Outcome {
    let n = case.instance.n();
    let cov = random_covariance(case.seed, n).map_err(|e| e.to_string())?;
    let mut checks = 0;
    for (name, oracle) in [("cut", case.instance.oracle()), ("gaussian", Oracle::gaussian(cov))] {
        let r = check_symmetric_submodular(&oracle, 200, case.seed).map_err(|e| e.to_string())?;
        ensure(r.is_clean(), || {
            format!(
                "{name} oracle: {} violations, worst symmetry gap {:e}, worst submodularity gap {:e}",
                r.violations, r.worst_symmetry, r.worst_submodular
            )
        })?;
        checks += r.symmetry_checks + r.submodular_checks;
    }
    Ok(checks)
}

fn family_closure(case: &Case) -> Outcome {
    let inst = &case.instance;
    let n = inst.n();
    let fam = GroupCapFamily::global(&inst.grouping, inst.t);
    let mut checks = 0;
    for mask in 0u32..1 << n {
        let s = set::mask_to_set(mask);
        if !fam.contains(&s) {
            continue;
        }
        for &x in &s {
            let smaller = set::mask_to_set(mask & !(1 << x));
            ensure(fam.contains(&smaller), || format!("{s:?} is a member but {smaller:?} is not"))?;
            checks += 1;
        }
    }
    Ok(checks)
}

fn pendant_pair(case: &Case) -> Outcome {
    let oracle = case.instance.oracle();
    let q = queyranne_min(&oracle).map_err(|e| e.to_string())?;
    let b = brute_force_min(&oracle, None).map_err(|e| e.to_string())?;
    ensure(close(q.value, b.value, oracle.tolerance()), || {
        format!("pendant pair found {} at {:?}, exhaustive {}", q.value, q.set, b.value)
    })?;
    Ok(1)
}

fn constrained(case: &Case) -> Outcome {
    let inst = &case.instance;
    let oracle = inst.oracle();
    let mut checks = 0;
    for j in 0..inst.grouping.len() {
        let fam = GroupCapFamily::for_group(&inst.grouping, j, inst.t);
        let fast = constrained_min(&oracle, &fam);
        let slow = brute_force_min(&oracle, Some(&fam));
        match (fast, slow) {
            (Ok(f), Ok(s)) => {
                ensure(fam.contains(&f.set), || format!("group {j}: {:?} is not a member", f.set))?;
                ensure(close(f.value, s.value, oracle.tolerance()), || {
                    format!("group {j}: constrained {} vs exhaustive {}", f.value, s.value)
                })?;
            }
            (Err(Error::Infeasible(_)), Err(Error::Infeasible(_))) => {}
            (f, s) => return Err(format!("group {j}: constrained {f:?} vs exhaustive {s:?}")),
        }
        checks += 1;
    }
    Ok(checks)
}

fn optimum(oracle: &Oracle, k: usize, grouping: &Grouping, t: f64) -> std::result::Result<Option<f64>, String> {
    match brute_force_best_partition(oracle, k, grouping, t) {
        Ok((_, cost)) => Ok(Some(cost)),
        Err(Error::Infeasible(_)) => Ok(None),
        Err(e) => Err(e.to_string()),
    }
}

fn two_clustering(case: &Case) -> Outcome {
    let inst = &case.instance;
    let oracle = inst.oracle();
    let opt = optimum(&oracle, 2, &inst.grouping, inst.t)?;
    match (optimal_two_clustering(&oracle, &inst.grouping, inst.t), opt) {
        (Ok(run), Some(opt)) => {
            ensure(close(run.cost, opt, oracle.tolerance()), || format!("cost {} vs optimum {opt}", run.cost))?;
            let s = &run.partition.blocks()[0];
            ensure(close(run.cost, 2.0 * oracle.eval(s), oracle.tolerance()), || {
                format!("cost {} is not twice f(S*)", run.cost)
            })?;
        }
        (Err(Error::Infeasible(_)), None) => {}
        (run, opt) => return Err(format!("two-clustering {:?} vs optimum {opt:?}", run.map(|r| r.cost))),
    }
    Ok(1)
}

fn greedy_bound(case: &Case) -> Outcome {
    let inst = &case.instance;
    let oracle = inst.oracle();
    let n = inst.n();
    let anyone = Grouping::single(n, "all").map_err(|e| e.to_string())?;
    let mut checks = 0;
    for k in 2..=case.k_max.min(n) {
        let run = gsa(&oracle, k).map_err(|e| e.to_string())?;
        let opt = optimum(&oracle, k, &anyone, 0.0)?.ok_or("no unconstrained optimum")?;
        let bound = (2.0 - 2.0 / k as f64) * opt;
        ensure(run.cost <= bound + 1e-9, || format!("k={k}: greedy {} above {bound}", run.cost))?;
        checks += 1;
    }
    Ok(checks)
}

fn actionable_two(case: &Case) -> Outcome {
    let inst = &case.instance;
    let oracle = inst.oracle();
    let opt = optimum(&oracle, 2, &inst.grouping, inst.t)?;
    match (actionable_gsa_multigroup(&oracle, &inst.grouping, inst.t, 2), opt) {
        (Ok(run), Some(opt)) => {
            ensure(close(run.cost, opt, oracle.tolerance()), || format!("cost {} vs optimum {opt}", run.cost))?;
        }
        (Err(Error::Infeasible(_)), None) => {}
        (run, opt) => return Err(format!("actionable greedy {:?} vs optimum {opt:?}", run.map(|r| r.cost))),
    }
    Ok(1)
}

fn minimal_solutions(case: &Case) -> Outcome {
    let inst = &case.instance;
    let oracle = inst.oracle();
    let tol = oracle.tolerance();
    let mut checks = 0;
    for j in 0..inst.grouping.len() {
        let fam = GroupCapFamily::for_group(&inst.grouping, j, inst.t);
        let sols = match minimal_optimal_solutions(&oracle, &fam) {
            Ok(s) => s,
            Err(Error::Infeasible(_)) => continue,
            Err(e) => return Err(e.to_string()),
        };
        let best = brute_force_min(&oracle, Some(&fam)).map_err(|e| e.to_string())?.value;
        for (a, s) in sols.iter().enumerate() {
            ensure(close(oracle.eval(s), best, tol), || format!("{s:?} is not optimal"))?;
            for other in &sols[a + 1..] {
                ensure(set::intersection_len(s, other) == 0, || format!("{s:?} meets {other:?}"))?;
            }
            checks += 1;
        }
    }
    Ok(checks)
}

fn parallel_bound(case: &Case) -> Outcome {
    let inst = &case.instance;
    let oracle = inst.oracle();
    let mut checks = 0;
    for k in 2..=case.k_max.min(3).min(inst.n()) {
        let run = match parallel_split(&oracle, &inst.grouping, inst.t, k) {
            Ok(r) if !r.degraded => r,
            Ok(_) | Err(Error::Infeasible(_)) => continue,
            Err(e) => return Err(e.to_string()),
        };
        let (opt_partition, opt) = brute_force_best_partition(&oracle, k, &inst.grouping, inst.t)
            .map_err(|e| format!("k={k}: feasible run but no optimum: {e}"))?;
        let check = lemma1_check(run.cost, opt, k);
        ensure(check.holds, || format!("k={k}: ratio {} above {}", check.ratio, check.bound))?;
        let chain = bound_chain(&oracle, &run.partition, &opt_partition);
        ensure(chain.holds(), || format!("k={k}: {chain:?}"))?;
        checks += 2;
    }
    Ok(checks)
}

fn reports(case: &Case) -> Outcome {
    let inst = &case.instance;
    let back = Instance::from_json_str(&inst.to_json_string(), "round trip").map_err(|e| e.to_string())?;
    ensure(&back == inst, || "instance does not round-trip".into())?;
    let mut checks = 1;
    let k = 2.min(inst.n());
    let run_once = || actionable_gsa_multigroup(&inst.oracle(), &inst.grouping, inst.t, k);
    let (first, second) = match (run_once(), run_once()) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(Error::Infeasible(_)), Err(Error::Infeasible(_))) => return Ok(checks),
        (a, b) => return Err(format!("reruns disagree: {a:?} vs {b:?}")),
    };
    let text = Report::from_run(&first, inst, Some(case.seed)).to_json_string();
    ensure(text == Report::from_run(&second, inst, Some(case.seed)).to_json_string(), || {
        "reruns wrote different reports".into()
    })?;
    let report = Report::from_json_str(&text, "report").map_err(|e| e.to_string())?;
    let v = verify(inst, &report);
    ensure(v.ok(), || format!("report does not verify: {v}"))?;
    checks += 2;
    Ok(checks)
}
