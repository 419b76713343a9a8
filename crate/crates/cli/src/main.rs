use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use epipodal::bench::{
    run_experiment, sample_random_code, write_profile_csv, Algorithm, ExperimentConfig,
    SingleReport,
};
use epipodal::bounds::{bkz_profile_bound, griesmer_sum, slide_profile_bound, GriesmerProxy};
use epipodal::domain::fundamental_weight_distribution;
use epipodal::gf::Field;
use epipodal::linalg::{io as mio, CodeBasis};
use epipodal::reduce::{one_block_shortest, ShortestOracle};

#[derive(Parser)]
#[command(name = "epipodal", version, about = "Basis reduction for linear codes over F_q")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a basis (from a file or a seeded random code) with a chosen
    /// algorithm and write the result, optionally with a JSON report.
    Reduce(ReduceArgs),
    /// Exact weight distribution of the fundamental domain for a profile.
    Wdist(WdistArgs),
    /// Closed-form output bound on the first epipodal length.
    Bound(BoundArgs),
    /// Experiment harness.
    #[command(subcommand)]
    Bench(BenchCommand),
}

#[derive(Args)]
struct ReduceArgs {
    /// lll | bkz | slide | fullbackward | selective | oneblock | approxgriesmer
    #[arg(long)]
    alg: String,
    #[arg(long)]
    beta: Option<usize>,
    #[arg(long)]
    tau: Option<usize>,
    /// Chain a final LLL pass after slide reduction (default: true).
    #[arg(long)]
    post_lll: Option<bool>,
    /// Lee-Brickell pattern weight (approxgriesmer).
    #[arg(long)]
    p: Option<usize>,
    /// Lee-Brickell information-set budget (approxgriesmer).
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long)]
    skip_threshold: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Input generator matrix ("q k n" header format); otherwise a random
    /// code is sampled from --q/--n/--k/--seed.
    #[arg(long, value_name = "FILE")]
    r#in: Option<PathBuf>,
    /// Output matrix (or codeword, for oneblock) in the same format.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// JSON run report.
    #[arg(long, value_name = "FILE.json")]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct WdistArgs {
    #[arg(long)]
    q: u32,
    /// Comma-separated epipodal profile, e.g. 3,2,1.
    #[arg(long)]
    profile: String,
    #[arg(long, value_name = "FILE.json")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BoundArgs {
    /// lll | bkz | slide
    #[arg(long)]
    alg: String,
    #[arg(long)]
    q: u32,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    beta: Option<u32>,
}

#[derive(Subcommand)]
enum BenchCommand {
    /// Run an experiment from a TOML config or from flags.
    Run(BenchRunArgs),
}

#[derive(Args)]
struct BenchRunArgs {
    /// TOML experiment config; flags below override nothing when given.
    #[arg(long, value_name = "FILE.toml")]
    config: Option<PathBuf>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    alg: Option<String>,
    #[arg(long)]
    beta: Option<usize>,
    #[arg(long)]
    tau: Option<usize>,
    #[arg(long)]
    post_lll: Option<bool>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long)]
    skip_threshold: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Disable trial-level parallelism.
    #[arg(long)]
    sequential: bool,
    /// JSON report path.
    #[arg(long, value_name = "FILE.json")]
    out: Option<PathBuf>,
    /// Plot-ready CSV (index,mean,two_sigma).
    #[arg(long, value_name = "FILE.csv")]
    csv: Option<PathBuf>,
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Reduce(args) => cmd_reduce(args),
        Command::Wdist(args) => cmd_wdist(args),
        Command::Bound(args) => cmd_bound(args),
        Command::Bench(BenchCommand::Run(args)) => cmd_bench_run(args),
    }
}

fn load_or_sample(args: &ReduceArgs) -> Result<CodeBasis> {
    if let Some(path) = &args.r#in {
        return mio::read_matrix_path(path)
            .with_context(|| format!("reading {}", path.display()));
    }
    let q = args.q.context("--q required without --in")?;
    let n = args.n.context("--n required without --in")?;
    let k = args.k.unwrap_or(n / 2);
    Ok(sample_random_code(q, k, n, args.seed)?)
}

fn cmd_reduce(args: ReduceArgs) -> Result<()> {
    if args.alg == "oneblock" {
        let basis = load_or_sample(&args)?;
        let beta = args.beta.unwrap_or(2);
        let mut oracle = ShortestOracle::exhaustive_default(basis.field().q());
        let start = Instant::now();
        let word = one_block_shortest(&basis, beta, &mut oracle)?;
        let wall = start.elapsed().as_secs_f64();
        eprintln!(
            "oneblock(beta={beta}): found weight {} in {:.3}s",
            word.weight(),
            wall
        );
        if let Some(path) = &args.out {
            let file = std::fs::File::create(path)?;
            mio::write_rows(std::io::BufWriter::new(file), basis.field(), &[word.clone()])?;
        }
        if let Some(path) = &args.report {
            let report = serde_json::json!({
                "algorithm": format!("oneblock(beta={beta})"),
                "q": basis.field().q(),
                "n": basis.n(),
                "k": basis.k(),
                "seed": args.seed,
                "field": basis.field().spec(),
                "weight": word.weight(),
                "wall_seconds": wall,
            });
            std::fs::write(path, serde_json::to_string_pretty(&report)?)?;
        }
        return Ok(());
    }

    let basis = load_or_sample(&args)?;
    let q = basis.field().q();
    let (n, k) = (basis.n(), basis.k());
    let alg = Algorithm::resolve(
        &args.alg,
        q,
        n,
        k,
        args.beta,
        args.tau,
        args.post_lll,
        args.p,
        args.budget,
        args.skip_threshold,
    )?;
    let start = Instant::now();
    let (reduced, counters) = alg.run(&basis, args.seed ^ 0x517c_c1b7_2722_0a95)?;
    let wall = start.elapsed().as_secs_f64();
    let report = SingleReport::from_run(alg.label(), args.seed, &reduced, counters, wall);
    eprintln!(
        "{}: l1={} k1={} k1*={} support={} iterations={} in {:.3}s",
        report.algorithm,
        report.l1,
        report.k1,
        report.k1_star,
        report.support,
        counters.loop_iterations,
        wall
    );
    if let Some(path) = &args.out {
        mio::write_matrix_path(path, &reduced)?;
    }
    if let Some(path) = &args.report {
        std::fs::write(path, serde_json::to_string_pretty(&report)?)?;
    }
    Ok(())
}

fn cmd_wdist(args: WdistArgs) -> Result<()> {
    if args.q > 16 {
        bail!("wdist supports q <= 16; the per-block counts grow with the field size");
    }
    Field::new(args.q)?; // validate q is a prime power
    let profile: Vec<usize> = args
        .profile
        .split(',')
        .map(|s| s.trim().parse::<usize>().context("bad profile entry"))
        .collect::<Result<_>>()?;
    let weights = fundamental_weight_distribution(&profile, args.q)?;
    // Emit decimal big integers as bare JSON number literals.
    let mut body = String::from("{\"weights\":[");
    for (i, w) in weights.iter().enumerate() {
        if i > 0 {
            body.push(',');
        }
        body.push_str(&w.to_string());
    }
    body.push_str("]}\n");
    match &args.out {
        Some(path) => std::fs::write(path, body)?,
        None => print!("{body}"),
    }
    Ok(())
}

fn cmd_bound(args: BoundArgs) -> Result<()> {
    let proxy = GriesmerProxy { q: args.q };
    let bound = match args.alg.as_str() {
        "lll" => {
            let n = args.n as u64;
            (0..=n)
                .filter(|&d| griesmer_sum(args.q, d, args.k) <= n)
                .max()
                .unwrap_or(0)
        }
        "bkz" => bkz_profile_bound(
            args.q,
            args.n,
            args.k,
            args.beta.context("--beta required for bkz")?,
            &proxy,
        )?,
        "slide" => slide_profile_bound(
            args.q,
            args.n,
            args.k,
            args.beta.context("--beta required for slide")?,
            &proxy,
        )?,
        other => bail!("unknown bound algorithm {other:?}"),
    };
    println!("{bound}");
    Ok(())
}

fn cmd_bench_run(args: BenchRunArgs) -> Result<()> {
    let mut config: ExperimentConfig = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            toml::from_str(&text).context("parsing experiment config")?
        }
        None => ExperimentConfig {
            q: args.q.context("--q required without --config")?,
            n: args.n.context("--n required without --config")?,
            k: None,
            alg: args.alg.clone().context("--alg required without --config")?,
            beta: None,
            tau: None,
            post_lll: None,
            p: None,
            budget: None,
            skip_threshold: None,
            trials: None,
            seed: None,
            parallel: None,
        },
    };
    // Flags refine the config.
    if let Some(v) = args.k {
        config.k = Some(v);
    }
    if let Some(v) = args.beta {
        config.beta = Some(v);
    }
    if let Some(v) = args.tau {
        config.tau = Some(v);
    }
    if let Some(v) = args.post_lll {
        config.post_lll = Some(v);
    }
    if let Some(v) = args.p {
        config.p = Some(v);
    }
    if let Some(v) = args.budget {
        config.budget = Some(v);
    }
    if let Some(v) = args.skip_threshold {
        config.skip_threshold = Some(v);
    }
    if let Some(v) = args.trials {
        config.trials = Some(v);
    }
    if let Some(v) = args.seed {
        config.seed = Some(v);
    }
    if args.sequential {
        config.parallel = Some(false);
    }
    let report = run_experiment(&config)?;
    let agg = &report.aggregate;
    eprintln!(
        "{}: trials={} ok={} mean sorted l1={:.1} (2sigma {:.2}) mean k1={:.2} mean k1*={:.2}",
        report.algorithm,
        report.trial_reports.len(),
        agg.successes,
        agg.mean_sorted_profile.first().copied().unwrap_or(0.0),
        agg.two_sigma_sorted_profile.first().copied().unwrap_or(0.0),
        agg.mean_k1,
        agg.mean_k1_star,
    );
    match &args.out {
        Some(path) => std::fs::write(path, serde_json::to_string_pretty(&report)?)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "{}", serde_json::to_string_pretty(&report)?)?;
        }
    }
    if let Some(path) = &args.csv {
        let file = std::fs::File::create(path)?;
        write_profile_csv(std::io::BufWriter::new(file), &report)?;
    }
    Ok(())
}
