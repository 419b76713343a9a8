//! Random-code generation and the experiment harness.
//!
//! Sampling is driven by ChaCha8 seeded with a caller-provided 64-bit value,
//! so every experiment replays bit-identically across machines. Trials run
//! in parallel across seeds `seed..seed+trials` (with the `parallel`
//! feature), and aggregation folds the trial list in index order, so the
//! report is independent of scheduling. Wall-clock fields are informational
//! only and never affect any decision.

use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::backward::{default_tau, full_backward_reduce, selective_backward_reduce};
use crate::gf::{Elt, Field, FieldSpec};
use crate::linalg::{CodeBasis, Profile, Word};
use crate::reduce::{
    approx_griesmer_reduce, bkz_reduce, default_lee_brickell_budget, lll_reduce, slide_reduce,
    IterationCounters, ShortestOracle,
};
use crate::{par, Error, Result};

/// Uniform k x n matrix over F_q from the given stream (rows need not be
/// independent).
pub fn sample_uniform_rows(
    field: &Arc<Field>,
    k: usize,
    n: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Word> {
    let q = field.q();
    (0..k)
        .map(|_| {
            let mut w = Word::zero(field.clone(), n);
            if q == 2 {
                // Draw 64 coordinates per generator word.
                let mut i = 0;
                while i < n {
                    let bits = rng.next_u64();
                    let take = 64.min(n - i);
                    for b in 0..take {
                        if bits >> b & 1 == 1 {
                            w.set(i + b, 1);
                        }
                    }
                    i += take;
                }
            } else {
                for i in 0..n {
                    w.set(i, rng.gen_range(0..q) as Elt);
                }
            }
            w
        })
        .collect()
}

/// Samples a uniformly random k x n matrix, resampling until it has full
/// rank, then systematizes it on the lexicographically first information
/// set. The result is proper; identical seeds yield identical bases.
pub fn sample_random_code(q: u32, k: usize, n: usize, seed: u64) -> Result<CodeBasis> {
    if k > n {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds n = {n}")));
    }
    let field = Field::new(q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let rows = sample_uniform_rows(&field, k, n, &mut rng);
        let raw = CodeBasis::from_rows_unchecked(field.clone(), n, rows);
        match raw.systematize_full(None) {
            Ok((basis, _, _)) => return Ok(basis),
            Err(Error::RankDeficient) => continue,
            Err(e) => return Err(e),
        }
    }
}

/// A reduction algorithm with its parameters resolved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "lowercase")]
pub enum Algorithm {
    Lll,
    Bkz {
        beta: usize,
    },
    Slide {
        beta: usize,
        post_lll: bool,
    },
    FullBackward {
        tau: usize,
    },
    Selective {
        beta: usize,
    },
    ApproxGriesmer {
        p: usize,
        budget: usize,
        skip_threshold: usize,
    },
}

impl Algorithm {
    pub fn label(&self) -> String {
        match self {
            Algorithm::Lll => "lll".into(),
            Algorithm::Bkz { beta } => format!("bkz(beta={beta})"),
            Algorithm::Slide { beta, post_lll } => {
                if *post_lll {
                    format!("slide+lll(beta={beta})")
                } else {
                    format!("slide(beta={beta})")
                }
            }
            Algorithm::FullBackward { tau } => format!("fullbackward(tau={tau})"),
            Algorithm::Selective { beta } => format!("selective(beta={beta})"),
            Algorithm::ApproxGriesmer {
                p,
                budget,
                skip_threshold,
            } => format!("approxgriesmer(p={p},budget={budget},skip={skip_threshold})"),
        }
    }

    /// Resolves an algorithm name plus optional parameters, filling in the
    /// documented defaults.
    pub fn resolve(
        name: &str,
        q: u32,
        n: usize,
        k: usize,
        beta: Option<usize>,
        tau: Option<usize>,
        post_lll: Option<bool>,
        p: Option<usize>,
        budget: Option<usize>,
        skip_threshold: Option<usize>,
    ) -> Result<Algorithm> {
        let beta_or = |d: usize| beta.unwrap_or(d);
        Ok(match name {
            "lll" => Algorithm::Lll,
            "bkz" => Algorithm::Bkz { beta: beta_or(2) },
            "slide" => Algorithm::Slide {
                beta: beta_or(2),
                post_lll: post_lll.unwrap_or(true),
            },
            "fullbackward" => Algorithm::FullBackward {
                tau: tau.unwrap_or_else(|| default_tau(q, n, k)),
            },
            "selective" => Algorithm::Selective { beta: beta_or(2) },
            "approxgriesmer" => Algorithm::ApproxGriesmer {
                p: p.unwrap_or(2),
                budget: budget.unwrap_or_else(|| default_lee_brickell_budget(k)),
                skip_threshold: skip_threshold.unwrap_or(6),
            },
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown algorithm {other:?}"
                )))
            }
        })
    }

    /// Runs the algorithm on a proper basis. The oracle stream is derived
    /// from `oracle_seed`.
    pub fn run(
        &self,
        basis: &CodeBasis,
        oracle_seed: u64,
    ) -> Result<(CodeBasis, IterationCounters)> {
        let q = basis.field().q();
        match self {
            Algorithm::Lll => {
                let mut o = ShortestOracle::exhaustive_default(q);
                lll_reduce(basis, &mut o)
            }
            Algorithm::Bkz { beta } => {
                let mut o = ShortestOracle::exhaustive_default(q);
                bkz_reduce(basis, *beta, &mut o, None)
            }
            Algorithm::Slide { beta, post_lll } => {
                let mut o = ShortestOracle::exhaustive_default(q);
                let (mid, c1) = slide_reduce(basis, *beta, &mut o)?;
                if !post_lll {
                    return Ok((mid, c1));
                }
                let (out, c2) = lll_reduce(&mid, &mut o)?;
                Ok((
                    out,
                    IterationCounters {
                        loop_iterations: c1.loop_iterations + c2.loop_iterations,
                        forward_updates: c1.forward_updates + c2.forward_updates,
                        backward_updates: c1.backward_updates + c2.backward_updates,
                    },
                ))
            }
            Algorithm::FullBackward { tau } => full_backward_reduce(basis, *tau),
            Algorithm::Selective { beta } => {
                let out =
                    selective_backward_reduce(basis.field(), basis.rows(), *beta)?;
                Ok((out, IterationCounters::default()))
            }
            Algorithm::ApproxGriesmer {
                p,
                budget,
                skip_threshold,
            } => {
                let mut o = ShortestOracle::lee_brickell(*p, *budget, oracle_seed);
                approx_griesmer_reduce(basis, &mut o, *skip_threshold)
            }
        }
    }
}

/// One experiment: q, n, k (default n/2), an algorithm, a trial count, and a
/// base seed. Trials use seeds `seed..seed+trials`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub q: u32,
    pub n: usize,
    #[serde(default)]
    pub k: Option<usize>,
    pub alg: String,
    #[serde(default)]
    pub beta: Option<usize>,
    #[serde(default)]
    pub tau: Option<usize>,
    #[serde(default)]
    pub post_lll: Option<bool>,
    #[serde(default)]
    pub p: Option<usize>,
    #[serde(default)]
    pub budget: Option<usize>,
    #[serde(default)]
    pub skip_threshold: Option<usize>,
    #[serde(default)]
    pub trials: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub parallel: Option<bool>,
}

impl ExperimentConfig {
    pub fn k(&self) -> usize {
        self.k.unwrap_or(self.n / 2)
    }
    pub fn trials(&self) -> usize {
        self.trials.unwrap_or(10)
    }
    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }
    pub fn algorithm(&self) -> Result<Algorithm> {
        Algorithm::resolve(
            &self.alg,
            self.q,
            self.n,
            self.k(),
            self.beta,
            self.tau,
            self.post_lll,
            self.p,
            self.budget,
            self.skip_threshold,
        )
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrialReport {
    pub seed: u64,
    /// Raw matrices redrawn before the algorithm accepted one.
    pub resamples: u64,
    pub sorted_profile: Vec<usize>,
    pub l1: usize,
    pub k1: usize,
    pub k1_star: usize,
    pub support: usize,
    pub counters: IterationCounters,
    pub wall_seconds: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Aggregate {
    pub successes: usize,
    pub failures: usize,
    /// Per-index mean of the descending-sorted profiles.
    pub mean_sorted_profile: Vec<f64>,
    /// Two sample standard deviations per index.
    pub two_sigma_sorted_profile: Vec<f64>,
    pub mean_l1: f64,
    pub two_sigma_l1: f64,
    pub mean_k1: f64,
    pub two_sigma_k1: f64,
    pub mean_k1_star: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReductionReport {
    pub algorithm: String,
    pub config: ExperimentConfig,
    pub field: FieldSpec,
    pub trial_reports: Vec<TrialReport>,
    pub aggregate: Aggregate,
}

fn mean_and_two_sigma(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (0.0, 0.0);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, 2.0 * var.sqrt())
}

/// Derives the oracle stream for a trial from its sampling seed.
fn oracle_seed(trial_seed: u64) -> u64 {
    trial_seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(0x1234_5678)
}

/// Runs a single trial: sample, reduce (timed), measure.
pub fn run_trial(alg: &Algorithm, q: u32, n: usize, k: usize, seed: u64) -> TrialReport {
    let attempt = || -> Result<(u64, CodeBasis, IterationCounters, f64)> {
        match alg {
            Algorithm::Selective { beta } => {
                // The algorithm itself may reject a sample; redraw from the
                // same stream, like the protocol prescribes.
                let field = Field::new(q)?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut resamples = 0u64;
                loop {
                    let rows = sample_uniform_rows(&field, k, n, &mut rng);
                    let start = Instant::now();
                    match selective_backward_reduce(&field, &rows, *beta) {
                        Ok(out) => {
                            let wall = start.elapsed().as_secs_f64();
                            return Ok((resamples, out, IterationCounters::default(), wall));
                        }
                        Err(Error::RetryableSystematization) => {
                            resamples += 1;
                            if resamples > 200 {
                                return Err(Error::RetryableSystematization);
                            }
                        }
                        Err(e) => return Err(e),
                    }
                }
            }
            _ => {
                let basis = sample_random_code(q, k, n, seed)?;
                let start = Instant::now();
                let (out, counters) = alg.run(&basis, oracle_seed(seed))?;
                let wall = start.elapsed().as_secs_f64();
                Ok((0, out, counters, wall))
            }
        }
    };
    match attempt() {
        Ok((resamples, basis, counters, wall)) => {
            let profile = basis.profile();
            let mut sorted = profile.lengths.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            TrialReport {
                seed,
                resamples,
                l1: profile.lengths[0],
                k1: profile.k1(),
                k1_star: profile.k1_star(),
                support: profile.support_size(),
                sorted_profile: sorted,
                counters,
                wall_seconds: wall,
                error: None,
            }
        }
        Err(e) => TrialReport {
            seed,
            resamples: 0,
            sorted_profile: Vec::new(),
            l1: 0,
            k1: 0,
            k1_star: 0,
            support: 0,
            counters: IterationCounters::default(),
            wall_seconds: 0.0,
            error: Some(e.to_string()),
        },
    }
}

/// Runs all trials (in parallel across seeds when enabled) and aggregates.
/// Failed trials are kept in the report and excluded from the aggregates.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ReductionReport> {
    let alg = config.algorithm()?;
    let field = Field::new(config.q)?;
    let k = config.k();
    if k == 0 || k > config.n {
        return Err(Error::InvalidParameter(format!(
            "k = {k} out of range for n = {}",
            config.n
        )));
    }
    let trials = config.trials().max(1);
    let base = config.seed();
    let parallel = config.parallel.unwrap_or(true);
    let reports = par::run_indexed(trials, parallel, |t| {
        run_trial(&alg, config.q, config.n, k, base + t as u64)
    });

    let ok: Vec<&TrialReport> = reports.iter().filter(|r| r.error.is_none()).collect();
    let mut aggregate = Aggregate {
        successes: ok.len(),
        failures: reports.len() - ok.len(),
        ..Aggregate::default()
    };
    if !ok.is_empty() {
        let klen = ok.iter().map(|r| r.sorted_profile.len()).max().unwrap();
        for idx in 0..klen {
            let vals: Vec<f64> = ok
                .iter()
                .map(|r| r.sorted_profile.get(idx).copied().unwrap_or(0) as f64)
                .collect();
            let (m, s) = mean_and_two_sigma(&vals);
            aggregate.mean_sorted_profile.push(m);
            aggregate.two_sigma_sorted_profile.push(s);
        }
        let l1: Vec<f64> = ok.iter().map(|r| r.l1 as f64).collect();
        let k1: Vec<f64> = ok.iter().map(|r| r.k1 as f64).collect();
        let k1s: Vec<f64> = ok.iter().map(|r| r.k1_star as f64).collect();
        (aggregate.mean_l1, aggregate.two_sigma_l1) = mean_and_two_sigma(&l1);
        (aggregate.mean_k1, aggregate.two_sigma_k1) = mean_and_two_sigma(&k1);
        aggregate.mean_k1_star = mean_and_two_sigma(&k1s).0;
    }
    Ok(ReductionReport {
        algorithm: alg.label(),
        config: config.clone(),
        field: field.spec(),
        trial_reports: reports,
        aggregate,
    })
}

/// Plot-ready CSV of the aggregated sorted profile: `index,mean,two_sigma`.
pub fn write_profile_csv<W: std::io::Write>(mut w: W, report: &ReductionReport) -> Result<()> {
    writeln!(w, "index,mean,two_sigma")?;
    for (i, (m, s)) in report
        .aggregate
        .mean_sorted_profile
        .iter()
        .zip(&report.aggregate.two_sigma_sorted_profile)
        .enumerate()
    {
        writeln!(w, "{},{m},{s}", i + 1)?;
    }
    Ok(())
}

/// Single-run report for the `reduce` CLI.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SingleReport {
    pub algorithm: String,
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    pub field: FieldSpec,
    pub profile: Vec<usize>,
    pub l1: usize,
    pub k1: usize,
    pub k1_star: usize,
    pub support: usize,
    pub counters: IterationCounters,
    pub wall_seconds: f64,
}

impl SingleReport {
    pub fn from_run(
        algorithm: String,
        seed: u64,
        basis: &CodeBasis,
        counters: IterationCounters,
        wall_seconds: f64,
    ) -> Self {
        let profile: Profile = basis.profile();
        SingleReport {
            algorithm,
            q: basis.field().q(),
            n: basis.n(),
            k: basis.k(),
            seed,
            field: basis.field().spec(),
            l1: profile.lengths.first().copied().unwrap_or(0),
            k1: profile.k1(),
            k1_star: profile.k1_star(),
            support: profile.support_size(),
            profile: profile.lengths,
            counters,
            wall_seconds,
        }
    }
}
