use std::env;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use subclust::battery::{run_battery, BatteryConfig};
use subclust::cluster::{actionable_gsa, run_algorithm, Algorithm};
use subclust::counterexample::{make_alternative_partition, make_counterexample, CounterexampleSpec, TreeShape};
use subclust::instance::{load_instance, save_instance, Instance};
use subclust::objective::{is_feasible, partition_cost};
use subclust::report::{load_report, save_report, verify, Report, ReportParams};
use subclust::Error;

/// Environment variable naming the directory for outputs written without
/// an explicit path.
const OUT_DIR_VAR: &str = "SUBCLUST_OUT_DIR";

const EXIT_INPUT: u8 = 1;
const EXIT_INFEASIBLE: u8 = 2;
const EXIT_MISMATCH: u8 = 3;
const EXIT_SELFTEST: u8 = 4;

#[derive(Parser)]
#[command(name = "subclust", version, about = "Actionable clustering with symmetric submodular costs")]
struct Cli {
    /// Print per-iteration detail.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Partition an instance and write a report.
    Cluster(ClusterArgs),
    /// Build the clique-and-path instance and compare greedy splitting with
    /// the hand-made partition.
    Counterexample(CounterexampleArgs),
    /// Recompute a report's cost and feasibility from its instance.
    Verify(VerifyArgs),
    /// Run the randomized consistency battery.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct ClusterArgs {
    #[arg(long)]
    instance: PathBuf,
    /// gsa, agsa, agsa-multi, two-opt, parallel or brute.
    #[arg(long)]
    algo: Algorithm,
    #[arg(long)]
    k: usize,
    /// Threshold, overriding the instance's.
    #[arg(long)]
    t: Option<f64>,
    /// Group kept actionable by agsa.
    #[arg(long)]
    group: Option<String>,
    /// Recorded in the report.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CounterexampleArgs {
    #[arg(long, default_value_t = 100)]
    n: usize,
    #[arg(long, default_value_t = 0.51)]
    t: f64,
    #[arg(long, default_value_t = 0.01)]
    eps: f64,
    #[arg(long, default_value_t = 10)]
    k: usize,
    /// Smallest cost ratio that counts as reproduced.
    #[arg(long, default_value_t = 1e4)]
    threshold: f64,
    /// Report of the greedy run.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the generated instance here.
    #[arg(long)]
    instance_out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    report: PathBuf,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = 10)]
    n_max: usize,
    #[arg(long, default_value_t = 100)]
    seeds: u64,
    #[arg(long, default_value_t = 4)]
    k_max: usize,
}

fn main() -> ExitCode {
    // Usage errors share the input-error code; clap would use 2, which here
    // means an infeasible instance.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Cluster(a) => cluster(a, cli.verbose),
        Command::Counterexample(a) => counterexample(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Selftest(a) => selftest(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Infeasible(_) => EXIT_INFEASIBLE,
        _ => EXIT_INPUT,
    }
}

fn out_path(explicit: Option<PathBuf>, default_name: &str) -> PathBuf {
    explicit.unwrap_or_else(|| {
        let dir = env::var_os(OUT_DIR_VAR).map(PathBuf::from).unwrap_or_default();
        dir.join(default_name)
    })
}

fn stem(path: &Path) -> String {
    path.file_stem().map_or("instance".into(), |s| s.to_string_lossy().into_owned())
}

fn ensure_parent(path: &Path) -> Result<(), Error> {
    match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() => Ok(fs::create_dir_all(dir)?),
        _ => Ok(()),
    }
}

fn write_report(report: &Report, path: &Path) -> Result<(), Error> {
    ensure_parent(path)?;
    save_report(report, path)
}

fn print_report(report: &Report, path: &Path) {
    println!("algorithm     {}", report.algorithm);
    println!("k             {} ({} clusters)", report.params.k, report.clusters.len());
    println!("t             {}", report.params.t);
    if let Some(cost) = report.cost {
        println!("cost          {cost}");
    }
    println!("oracle calls  {}", report.oracle_calls);
    match &report.certificate {
        Some(c) => println!(
            "certificate   group {}, cluster {}, fraction {}",
            c.group, c.cluster, c.fraction
        ),
        None => println!("certificate   none"),
    }
    if report.degraded {
        println!("degraded      fewer clusters than requested");
    }
    println!("report        {}", path.display());
}

fn cluster(args: ClusterArgs, verbose: bool) -> Result<u8, Error> {
    let instance = load_instance(&args.instance)?;
    let t = args.t.unwrap_or(instance.t);
    let group = match &args.group {
        Some(name) => Some(
            instance
                .grouping
                .index_of(name)
                .ok_or_else(|| Error::Input(format!("unknown group {name:?}")))?,
        ),
        None => None,
    };
    let path = out_path(
        args.out,
        &format!("{}.{}.k{}.report.json", stem(&args.instance), args.algo, args.k),
    );
    let oracle = instance.oracle();
    match run_algorithm(args.algo, &oracle, &instance.grouping, t, args.k, group) {
        Ok(run) => {
            let report = Report::from_run(&run, &instance, args.seed);
            write_report(&report, &path)?;
            if verbose {
                for (i, step) in run.trace.iter().enumerate() {
                    let incs: Vec<String> = step
                        .blocks
                        .iter()
                        .map(|b| match b.increment {
                            Some(c) => format!("{c}{}", if b.beta { "*" } else { "" }),
                            None => format!("inf{}", if b.beta { "*" } else { "" }),
                        })
                        .collect();
                    println!("split {}: block {} of [{}]", i + 1, step.chosen, incs.join(", "));
                }
            }
            print_report(&report, &path);
            Ok(0)
        }
        Err(e) => {
            let params = ReportParams {
                k: args.k,
                t,
                group: args.group.clone().or_else(|| {
                    (args.algo == Algorithm::Agsa && instance.grouping.len() == 1)
                        .then(|| instance.grouping.name(0).to_string())
                }),
                seed: args.seed,
            };
            write_report(&Report::failed(args.algo.name(), params, &e), &path)?;
            eprintln!("report        {}", path.display());
            Err(e)
        }
    }
}

fn counterexample(args: CounterexampleArgs) -> Result<u8, Error> {
    let spec = CounterexampleSpec {
        vertices: args.n,
        t: args.t,
        epsilon: args.eps,
        k: args.k,
        tree: TreeShape::Path,
    };
    let (instance, landmarks) = make_counterexample(&spec)?;
    let path = out_path(
        args.out,
        &format!("counterexample-n{}-k{}.report.json", args.n, args.k),
    );
    if let Some(p) = &args.instance_out {
        ensure_parent(p)?;
        save_instance(&instance, p)?;
    }
    let oracle = instance.oracle();
    let run = match actionable_gsa(&oracle, &instance.grouping, 0, args.t, args.k) {
        Ok(run) => run,
        Err(e) => {
            let params = ReportParams {
                k: args.k,
                t: args.t,
                group: Some(instance.grouping.name(0).to_string()),
                seed: None,
            };
            write_report(&Report::failed(Algorithm::Agsa.name(), params, &e), &path)?;
            return Err(e);
        }
    };
    let report = Report::from_run(&run, &instance, None);
    write_report(&report, &path)?;

    let alternative = make_alternative_partition(&landmarks, args.k)?;
    let alt_cost = partition_cost(&oracle, &alternative);
    let alt_feasible = is_feasible(&alternative, &instance.grouping, args.t).is_some();
    let ratio = run.cost / alt_cost;
    let (clique, tree) = spec.sizes();
    println!("instance      clique {clique} + path {tree}, eps {}", args.eps);
    println!(
        "greedy        cost {} ({} clusters, feasible {})",
        run.cost,
        run.k(),
        run.certificate.is_some()
    );
    println!(
        "alternative   cost {alt_cost} ({} clusters, feasible {alt_feasible})",
        alternative.k()
    );
    println!("ratio         {ratio}");
    println!("report        {}", path.display());
    Ok(if ratio > args.threshold && alt_feasible {
        println!("reproduced    ratio exceeds {}", args.threshold);
        0
    } else {
        println!("not reproduced: ratio does not exceed {}", args.threshold);
        EXIT_MISMATCH
    })
}

fn verify_cmd(args: VerifyArgs) -> Result<u8, Error> {
    let instance: Instance = load_instance(&args.instance)?;
    let report = load_report(&args.report)?;
    let v = verify(&instance, &report);
    if let Some(c) = v.recomputed_cost {
        println!("recomputed cost  {c}");
    }
    if let Some(f) = v.recomputed_feasible {
        println!("feasible         {f}");
    }
    if v.ok() {
        println!("ok");
        Ok(0)
    } else {
        println!("mismatch:");
        print!("{v}");
        Ok(EXIT_MISMATCH)
    }
}

fn selftest(args: SelftestArgs) -> Result<u8, Error> {
    let config = BatteryConfig {
        n_max: args.n_max,
        seeds: args.seeds,
        k_max: args.k_max,
    };
    let report = run_battery(&config).map_err(|e| match e {
        Error::TooLarge { limit, .. } => Error::Input(format!(
            "{e}; exhaustive checks enumerate every partition, so keep --n-max at {limit} or below"
        )),
        e => e,
    })?;
    for s in &report.suites {
        println!(
            "{:<24} {:>4} cases {:>8} checks {:>3} failures",
            s.name, s.cases, s.checks, s.failures
        );
    }
    if report.passed() {
        println!("all suites passed");
        return Ok(0);
    }
    for f in &report.failures {
        let name = format!(
            "selftest-failure-{}-seed{}.json",
            f.suite.replace(|c: char| !c.is_ascii_alphanumeric(), "-"),
            f.seed
        );
        let path = out_path(None, &name);
        ensure_parent(&path)?;
        fs::write(&path, &f.instance)?;
        println!("FAIL {} seed {}: {} (instance: {})", f.suite, f.seed, f.detail, path.display());
    }
    Ok(EXIT_SELFTEST)
}
