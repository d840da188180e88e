//! Acceptance checks. Runs without the libtest harness so that every
//! criterion prints its own PASS/FAIL line; exits non-zero if any fails.
//!
//! Reference values come from the brute-force helpers in `common`, which do
//! not share code with the library's search routines.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{
    naive_cut, naive_feasible, naive_mi, naive_member, naive_min, naive_minimal_minimizers, naive_opt, set_partitions,
};
use subclust::cluster::{gsa, optimal_two_clustering, parallel_split, run_algorithm, Algorithm};
use subclust::counterexample::{make_alternative_partition, make_counterexample, CounterexampleSpec};
use subclust::family::{global_cap, GroupCapFamily};
use subclust::instance::{load_instance, random_covariance, random_instance, save_instance, Instance, RandomInstanceParams};
use subclust::minimize::{constrained_min, minimal_optimal_solutions, queyranne_min};
use subclust::model::Grouping;
use subclust::objective::{is_feasible, partition_cost};
use subclust::oracle::{check_symmetric_submodular, Oracle};
use subclust::report::{verify, Report};
use subclust::Error;

const TOL: f64 = 1e-9;

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn instance(seed: u64, n: usize, m: usize, t: f64, density: f64, weights: (u32, u32)) -> Instance {
    random_instance(&RandomInstanceParams {
        seed,
        n,
        density,
        weights,
        groups: m,
        t,
    })
    .unwrap()
}

fn groups(inst: &Instance) -> Vec<Vec<usize>> {
    inst.grouping.iter().map(|(_, g)| g.to_vec()).collect()
}

fn cut_of(inst: &Instance) -> impl Fn(&[usize]) -> f64 + '_ {
    move |s: &[usize]| naive_cut(inst.n(), inst.graph.edges(), s)
}

const THRESHOLDS: [f64; 3] = [0.4, 0.51, 0.75];

/// Seeds 0..120, sizes cycling 4..=10, one or two groups, every threshold.
fn two_cluster_optimality() -> Verdict {
    let mut compared = 0;
    let mut infeasible = 0;
    for seed in 0..120u64 {
        let n = 4 + (seed % 7) as usize;
        let m = 1 + (seed % 2) as usize;
        let t = THRESHOLDS[(seed / 2 % 3) as usize];
        let inst = instance(seed, n, m, t, 0.5, (1, 9));
        let opt = naive_opt(&cut_of(&inst), n, 2, &groups(&inst), t);
        match (optimal_two_clustering(&inst.oracle(), &inst.grouping, t), opt) {
            (Ok(run), Some(opt)) => {
                ensure((run.cost - opt).abs() <= TOL, || {
                    format!("seed {seed}: two-clustering {} vs optimum {opt}", run.cost)
                })?;
                compared += 1;
            }
            (Err(Error::Infeasible(_)), None) => infeasible += 1,
            (run, opt) => return Err(format!("seed {seed}: {:?} vs {opt:?}", run.map(|r| r.cost))),
        }
    }
    ensure(compared >= 100, || format!("only {compared} feasible instances"))?;
    Ok(format!("{compared} instances equal the optimum ({infeasible} infeasible on both sides)"))
}

fn greedy_bound() -> Verdict {
    let mut checks = 0;
    let mut worst: f64 = 0.0;
    for seed in 0..100u64 {
        let n = 4 + (seed % 7) as usize;
        let inst = instance(seed, n, 1, 0.0, 0.5, (1, 9));
        let oracle = inst.oracle();
        let everyone = vec![(0..n).collect::<Vec<_>>()];
        for k in 2..=4usize.min(n) {
            let run = gsa(&oracle, k).map_err(|e| e.to_string())?;
            let opt = naive_opt(&cut_of(&inst), n, k, &everyone, 0.0).unwrap();
            let factor = 2.0 - 2.0 / k as f64;
            ensure(run.cost <= factor * opt + TOL, || {
                format!("seed {seed} k {k}: greedy {} above {factor} x {opt}", run.cost)
            })?;
            if opt > 0.0 {
                worst = worst.max(run.cost / opt);
            }
            checks += 1;
        }
    }
    Ok(format!("{checks} runs within the bound, worst ratio {worst:.4}"))
}

fn pendant_pair_minimum() -> Verdict {
    let mut compared = 0;
    for seed in 0..100u64 {
        let n = 4 + (seed % 9) as usize;
        let inst = instance(seed, n, 1, 0.5, [0.3, 0.5, 0.8][(seed % 3) as usize], (1, 9));
        let q = queyranne_min(&inst.oracle()).map_err(|e| e.to_string())?;
        let best = naive_min(&cut_of(&inst), n, &|_| true).unwrap();
        ensure((q.value - best).abs() <= TOL, || format!("seed {seed}: {} vs {best}", q.value))?;
        ensure((naive_cut(n, inst.graph.edges(), &q.set) - q.value).abs() <= TOL, || {
            format!("seed {seed}: reported value does not match its set")
        })?;
        compared += 1;
    }
    let mut worst: f64 = 0.0;
    for n in 4..=64usize {
        let inst = instance(1000 + n as u64, n, 1, 0.5, 0.5, (1, 9));
        let q = queyranne_min(&inst.oracle()).map_err(|e| e.to_string())?;
        let limit = 5 * n.pow(3) as u64;
        ensure(q.oracle_calls <= limit, || format!("N={n}: {} calls above {limit}", q.oracle_calls))?;
        worst = worst.max(q.oracle_calls as f64 / n.pow(3) as f64);
    }
    Ok(format!(
        "{compared} minima match exhaustive search; calls at most {worst:.3} N^3 for N = 4..64"
    ))
}

fn counterexample_gap() -> Verdict {
    let ratio = |eps: f64| -> Result<f64, String> {
        let spec = CounterexampleSpec {
            epsilon: eps,
            ..CounterexampleSpec::default()
        };
        let (inst, marks) = make_counterexample(&spec).map_err(|e| e.to_string())?;
        let oracle = inst.oracle();
        let run = run_algorithm(Algorithm::Agsa, &oracle, &inst.grouping, spec.t, spec.k, Some(0))
            .map_err(|e| e.to_string())?;
        let alt = make_alternative_partition(&marks, spec.k).map_err(|e| e.to_string())?;
        let g = groups(&inst);
        ensure(naive_feasible(run.partition.blocks(), &g, spec.t), || "greedy partition infeasible".into())?;
        ensure(naive_feasible(alt.blocks(), &g, spec.t), || "alternative partition infeasible".into())?;
        ensure(is_feasible(&run.partition, &inst.grouping, spec.t).is_some(), || "greedy not certified".into())?;
        ensure(is_feasible(&alt, &inst.grouping, spec.t).is_some(), || "alternative not certified".into())?;
        let f = cut_of(&inst);
        let greedy: f64 = run.partition.blocks().iter().map(|b| f(b)).sum();
        let alt_cost: f64 = alt.blocks().iter().map(|b| f(b)).sum();
        ensure((greedy - run.cost).abs() <= TOL / eps, || "greedy cost does not recompute".into())?;
        ensure((alt_cost - partition_cost(&oracle, &alt)).abs() <= TOL, || "alternative cost mismatch".into())?;
        Ok(greedy / alt_cost)
    };
    let coarse = ratio(1e-2)?;
    let fine = ratio(1e-3)?;
    ensure(coarse >= 1e4, || format!("ratio {coarse} below 1e4 at eps=1e-2"))?;
    ensure(fine / coarse >= 50.0, || format!("ratio grew only {}x", fine / coarse))?;
    Ok(format!(
        "ratio {coarse:.1} at eps=1e-2, {fine:.1} at eps=1e-3 ({:.1}x)",
        fine / coarse
    ))
}

/// Cheapest feasible partition with its blocks, by exhaustive listing.
fn naive_opt_partition(inst: &Instance, k: usize) -> Option<(f64, Vec<Vec<usize>>)> {
    let f = cut_of(inst);
    let g = groups(inst);
    set_partitions(inst.n(), k)
        .into_iter()
        .filter(|p| naive_feasible(p, &g, inst.t))
        .map(|p| (p.iter().map(|b| f(b)).sum::<f64>(), p))
        .min_by(|a, b| a.0.total_cmp(&b.0))
}

fn lemma_bound() -> Verdict {
    let mut checked = [0usize; 2];
    let mut degraded = 0;
    let mut runs = 0;
    for seed in 0..300u64 {
        let n = 4 + (seed % 6) as usize;
        let m = 1 + (seed / 6 % 2) as usize;
        let t = THRESHOLDS[(seed / 12 % 3) as usize];
        // Sparse light graphs often split into several zero-cost pieces,
        // which is where more than one minimal solution appears.
        let (density, weights) = if seed % 2 == 0 { (0.3, (1, 2)) } else { (0.5, (1, 9)) };
        let inst = instance(seed, n, m, t, density, weights);
        let oracle = inst.oracle();
        let f = cut_of(&inst);
        for k in 2..=3usize {
            let run = match parallel_split(&oracle, &inst.grouping, t, k) {
                Ok(r) => r,
                Err(Error::Infeasible(_)) => continue,
                Err(e) => return Err(e.to_string()),
            };
            runs += 1;
            if run.degraded {
                degraded += 1;
                continue;
            }
            let blocks = run.partition.blocks();
            ensure(naive_feasible(blocks, &groups(&inst), t), || format!("seed {seed}: infeasible run"))?;
            let cost: f64 = blocks.iter().map(|b| f(b)).sum();
            let (opt, opt_blocks) = naive_opt_partition(&inst, k).ok_or(format!("seed {seed}: no optimum"))?;
            let factor = 2.0 * (1.0 - 1.0 / k as f64);
            ensure(cost <= factor * opt + TOL, || {
                format!("seed {seed} k {k}: cost {cost} above {factor} x {opt}")
            })?;

            let mut union: Vec<usize> = blocks[..k - 1].iter().flatten().copied().collect();
            union.sort_unstable();
            let f_union = f(&union);
            let sides: f64 = blocks[..k - 1].iter().map(|b| f(b)).sum();
            let mut opt_values: Vec<f64> = opt_blocks.iter().map(|b| f(b)).collect();
            opt_values.sort_by(f64::total_cmp);
            let cheapest: f64 = opt_values[..k - 1].iter().sum();
            let max = opt_values[k - 1];
            let mean = opt_values.iter().sum::<f64>() / k as f64;
            let ctx = |what: &str| format!("seed {seed} k {k}: {what}");
            ensure((f_union - f(&blocks[k - 1])).abs() <= TOL, || ctx("symmetry"))?;
            ensure(f_union <= sides + TOL, || ctx("union bound"))?;
            ensure(sides <= cheapest + TOL, || ctx(&format!("sides {sides} above cheapest optimal blocks {cheapest}")))?;
            ensure(max >= mean - TOL, || ctx("max below mean"))?;
            checked[k - 2] += 1;
        }
    }
    ensure(checked[1] > 0, || "no full 3-partition was produced; nothing to check at k=3".into())?;
    Ok(format!(
        "{} full runs checked (k=2: {}, k=3: {}), {degraded} of {runs} runs degraded",
        checked[0] + checked[1],
        checked[0],
        checked[1]
    ))
}

fn minimal_disjointness() -> Verdict {
    let mut instances = 0;
    let mut solutions = 0;
    let mut multiple = 0;
    for seed in 0..80u64 {
        let n = 4 + (seed % 7) as usize;
        let m = 1 + (seed % 2) as usize;
        let t = THRESHOLDS[(seed / 2 % 3) as usize];
        let (density, weights) = if seed % 3 == 0 { (0.3, (1, 2)) } else { (0.5, (1, 9)) };
        let inst = instance(seed, n, m, t, density, weights);
        let g = groups(&inst);
        let fam = GroupCapFamily::global(&inst.grouping, t);
        let f = cut_of(&inst);
        let want = naive_minimal_minimizers(&f, n, &|s| naive_member(s, &g, t), TOL);
        let got = match minimal_optimal_solutions(&inst.oracle(), &fam) {
            Ok(s) => s,
            Err(Error::Infeasible(_)) => {
                ensure(want.is_empty(), || format!("seed {seed}: reported infeasible"))?;
                continue;
            }
            Err(e) => return Err(e.to_string()),
        };
        ensure(got == want, || format!("seed {seed}: {got:?} vs {want:?}"))?;
        let best = naive_min(&f, n, &|s| naive_member(s, &g, t)).unwrap();
        for (i, a) in got.iter().enumerate() {
            ensure((f(a) - best).abs() <= TOL, || format!("seed {seed}: {a:?} not optimal"))?;
            for b in &got[i + 1..] {
                ensure(a.iter().all(|x| !b.contains(x)), || format!("seed {seed}: {a:?} meets {b:?}"))?;
            }
        }
        instances += 1;
        solutions += got.len();
        multiple += usize::from(got.len() > 1);
    }
    ensure(instances >= 50, || format!("only {instances} instances"))?;
    Ok(format!(
        "{instances} instances, {solutions} minimal solutions, {multiple} instances with several"
    ))
}

fn group_reduction() -> Verdict {
    let mut compared = 0;
    for seed in 0..80u64 {
        let n = 4 + (seed % 6) as usize;
        let m = 2 + (seed % 2) as usize;
        let t = THRESHOLDS[(seed / 2 % 3) as usize];
        let inst = instance(seed, n, m, t, 0.5, (1, 9));
        let oracle = inst.oracle();
        let mut best: Option<f64> = None;
        for j in 0..m {
            let fam = GroupCapFamily::for_group(&inst.grouping, j, t);
            match constrained_min(&oracle, &fam) {
                Ok(r) => {
                    let c = 2.0 * r.value;
                    best = Some(best.map_or(c, |b: f64| b.min(c)));
                }
                Err(Error::Infeasible(_)) => {}
                Err(e) => return Err(e.to_string()),
            }
        }
        let direct = naive_opt(&cut_of(&inst), n, 2, &groups(&inst), t);
        match (best, direct) {
            (Some(a), Some(b)) => ensure((a - b).abs() <= TOL, || format!("seed {seed}: {a} vs {b}"))?,
            (None, None) => {}
            (a, b) => return Err(format!("seed {seed}: {a:?} vs {b:?}")),
        }
        compared += 1;
    }
    ensure(compared >= 50, || format!("only {compared} instances"))?;
    Ok(format!("{compared} instances agree"))
}

fn family_properties() -> Verdict {
    let mut closures = 0;
    for n in 1..=10usize {
        for seed in 0..3u64 {
            let m = 1 + (seed as usize) % n.min(3);
            for &t in &[0.0, 0.3, 0.5, 0.51, 0.75, 1.0] {
                let inst = instance(seed, n.max(2), m.min(n.max(2)), t, 0.5, (1, 1));
                let grouping: Grouping = if n == 1 { Grouping::single(1, "g").unwrap() } else { inst.grouping.clone() };
                let fam = GroupCapFamily::global(&grouping, t);
                let g: Vec<Vec<usize>> = grouping.iter().map(|(_, g)| g.to_vec()).collect();
                let size = grouping.ground_size();
                for mask in 0u32..1 << size {
                    let s: Vec<usize> = (0..size).filter(|&i| mask >> i & 1 == 1).collect();
                    ensure(fam.contains(&s) == naive_member(&s, &g, t), || format!("membership of {s:?}"))?;
                    if !fam.contains(&s) {
                        continue;
                    }
                    for &x in &s {
                        let smaller: Vec<usize> = s.iter().copied().filter(|&y| y != x).collect();
                        ensure(fam.contains(&smaller), || format!("{s:?} member, {smaller:?} not"))?;
                        closures += 1;
                    }
                }
            }
        }
    }
    let mut caps = 0;
    for size in 1..=30usize {
        for step in 0..=100usize {
            let t = step as f64 / 100.0;
            let cap = global_cap(size, t);
            for hits in 0..=size {
                // |g ∖ S| ≥ t|g| in exact integer arithmetic.
                let exact = (size - hits) * 100 >= step * size;
                ensure((hits as i64 <= cap) == exact, || format!("|g|={size} t={t} hits={hits}"))?;
                caps += 1;
            }
        }
    }
    Ok(format!("{closures} subset-closure checks, {caps} integer-cap checks"))
}

fn oracle_contracts() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut summary = Vec::new();
    for n in [6usize, 9, 12] {
        let inst = instance(n as u64, n, 1, 0.5, 0.5, (1, 9));
        let cov = random_covariance(n as u64, n).map_err(|e| e.to_string())?;
        let rows = cov.rows();
        let cut_ref = cut_of(&inst);
        let mi_ref = |s: &[usize]| naive_mi(&rows, s);
        let cases: [(&str, Oracle, &dyn Fn(&[usize]) -> f64, f64); 2] = [
            ("cut", inst.oracle(), &cut_ref, 1e-9),
            ("gaussian", Oracle::gaussian(cov.clone()), &mi_ref, 1e-7),
        ];
        for (name, oracle, reference, tol) in cases {
            let report = check_symmetric_submodular(&oracle, 10_000, n as u64).map_err(|e| e.to_string())?;
            ensure(report.is_clean() && report.symmetry_exhaustive && report.submodular_checks >= 10_000, || {
                format!("{name} N={n}: {report:?}")
            })?;
            // The same properties, evaluated with the reference formula.
            let mut worst_sym: f64 = 0.0;
            for mask in 0u32..1 << n {
                let s: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                let c: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 0).collect();
                worst_sym = worst_sym.max((reference(&s) - reference(&c)).abs());
            }
            let mut worst_sub = f64::NEG_INFINITY;
            let mut worst_agree: f64 = 0.0;
            for _ in 0..10_000 {
                let a: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
                let b: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
                let u: Vec<usize> = (0..n).filter(|x| a.contains(x) || b.contains(x)).collect();
                let i: Vec<usize> = (0..n).filter(|x| a.contains(x) && b.contains(x)).collect();
                worst_sub = worst_sub.max(reference(&u) + reference(&i) - reference(&a) - reference(&b));
                worst_agree = worst_agree.max((oracle.eval(&a) - reference(&a)).abs());
            }
            ensure(worst_sym <= tol, || format!("{name} N={n}: symmetry gap {worst_sym:e}"))?;
            ensure(worst_sub <= tol, || format!("{name} N={n}: submodularity gap {worst_sub:e}"))?;
            ensure(worst_agree <= tol, || format!("{name} N={n}: oracle differs from formula by {worst_agree:e}"))?;
            summary.push(format!("{name} N={n}"));
        }
    }
    Ok(format!(
        "no violations ({}); symmetry exhaustive, 10^4 submodular pairs each",
        summary.join(", ")
    ))
}

fn determinism_and_io() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut reports = 0;
    let mut round_trips = 0;
    for seed in 0..100u64 {
        let n = 4 + (seed % 7) as usize;
        let m = 1 + (seed % 2) as usize;
        let t = THRESHOLDS[(seed % 3) as usize];
        let params = RandomInstanceParams::new(seed, n, m, t);
        let inst = random_instance(&params).map_err(|e| e.to_string())?;
        ensure(random_instance(&params).unwrap().to_json_string() == inst.to_json_string(), || {
            format!("seed {seed}: generator not deterministic")
        })?;
        let path = dir.path().join(format!("{seed}.json"));
        save_instance(&inst, &path).map_err(|e| e.to_string())?;
        let back = load_instance(&path).map_err(|e| e.to_string())?;
        ensure(back == inst && back.to_json_string() == inst.to_json_string(), || {
            format!("seed {seed}: round trip changed the instance")
        })?;
        round_trips += 1;
        for algo in Algorithm::ALL {
            let k = if algo == Algorithm::TwoOpt { 2 } else { 2 + (seed % 2) as usize };
            let once = || {
                run_algorithm(algo, &inst.oracle(), &inst.grouping, t, k, Some(0))
                    .map(|r| Report::from_run(&r, &inst, Some(seed)).to_json_string())
            };
            let (a, b) = match (once(), once()) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(Error::Infeasible(_)), Err(Error::Infeasible(_))) => continue,
                (a, b) => return Err(format!("seed {seed} {algo}: {a:?} / {b:?}")),
            };
            ensure(a == b, || format!("seed {seed} {algo}: reports differ"))?;
            let report = Report::from_json_str(&a, "report").map_err(|e| e.to_string())?;
            let v = verify(&inst, &report);
            ensure(v.ok(), || format!("seed {seed} {algo}: {v}"))?;
            reports += 1;
        }
    }
    let (ce, _) = make_counterexample(&CounterexampleSpec::default()).map_err(|e| e.to_string())?;
    let text = ce.to_json_string();
    let back = Instance::from_json_str(&text, "counterexample").map_err(|e| e.to_string())?;
    ensure(back == ce && back.to_json_string() == text, || "counterexample round trip".into())?;
    round_trips += 1;
    Ok(format!(
        "{round_trips} lossless round trips, {reports} reports identical on rerun and verified"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict, Duration); 10] = [
        ("k=2 optimality", two_cluster_optimality, Duration::from_secs(60)),
        ("unconstrained greedy bound", greedy_bound, Duration::from_secs(120)),
        ("pendant-pair minimum and call count", pendant_pair_minimum, Duration::from_secs(120)),
        ("counterexample gap", counterexample_gap, Duration::from_secs(180)),
        ("parallel-split bound and its proof steps", lemma_bound, Duration::from_secs(180)),
        ("minimal optimal solutions are disjoint", minimal_disjointness, Duration::MAX),
        ("per-group reduction", group_reduction, Duration::MAX),
        ("hereditary family and integer caps", family_properties, Duration::MAX),
        ("oracle contracts", oracle_contracts, Duration::MAX),
        ("determinism and I/O", determinism_and_io, Duration::MAX),
    ];
    let mut failed = 0;
    for (i, (name, check, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let verdict = check().and_then(|detail| {
            let spent = start.elapsed();
            if spent > budget {
                Err(format!("{detail}; took {spent:.1?}, budget {budget:?}"))
            } else {
                Ok(detail)
            }
        });
        let spent = start.elapsed();
        match verdict {
            Ok(detail) => println!("PASS  {:>2}. {name}: {detail} [{spent:.2?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {:>2}. {name}: {detail} [{spent:.2?}]", i + 1);
            }
        }
    }
    println!("{} of 10 acceptance criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
