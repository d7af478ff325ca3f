//! Seeded multi-trial experiments.
//!
//! Trial `i` under `base_seed` draws its real target from a stream that depends
//! only on `(base_seed, i)`, so every strategy run with the same base seed faces
//! the same sequence of targets. Trials run on a rayon pool and are collected in
//! trial order, which keeps results independent of the worker count.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::lattice::{GridConfig, Position};
use crate::mcts::{play_game, Budget, MctsConfig};
use crate::policy::{baseline_search, RolloutPolicy, BASELINE_CAP};
use crate::rng::{rng_from_seed, stream_seed, trial_seed, SEARCH_STREAM, TARGET_STREAM};
use crate::stats::{mean, quantile_sorted, sample_std};
use crate::target::TargetDistribution;

#[derive(Debug, Clone, PartialEq)]
pub enum Strategy {
    Mcts(MctsConfig),
    Baseline(RolloutPolicy),
}

impl Strategy {
    pub fn label(&self) -> String {
        match self {
            Strategy::Mcts(m) => m.label(),
            Strategy::Baseline(p) => p.label().to_string(),
        }
    }

    fn budget(&self) -> Option<Budget> {
        match self {
            Strategy::Mcts(m) => Some(m.get_budget()),
            Strategy::Baseline(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub seed: u64,
    pub target: Position,
    pub steps_taken: u64,
    pub optimal_steps: u32,
    pub wall_ms: f64,
    pub capped: bool,
    pub strategy: String,
    /// MCTS loops played over the whole game; 0 for baselines.
    pub loops: u64,
}

impl TrialRecord {
    pub fn excess(&self) -> f64 {
        self.steps_taken as f64 - f64::from(self.optimal_steps)
    }

    pub fn ratio(&self) -> f64 {
        self.steps_taken as f64 / f64::from(self.optimal_steps.max(1))
    }
}

/// Column order of [`records_csv`]. Wall time is left out so reruns compare byte for byte.
pub const RECORDS_CSV_HEADER: &str = "trial,seed,target_x,target_y,steps_taken,optimal_steps,capped,strategy,loops";

/// Header line plus one line per record, newline terminated.
pub fn records_csv(records: &[TrialRecord]) -> String {
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str(RECORDS_CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.trial, r.seed, r.target.x, r.target.y, r.steps_taken, r.optimal_steps, r.capped, r.strategy, r.loops
        ));
    }
    out
}

/// Target of trial `trial`, as every strategy sees it.
pub fn trial_target(dist: &TargetDistribution, cfg: &GridConfig, base_seed: u64, trial: u64) -> Position {
    let seed = trial_seed(base_seed, trial);
    dist.sample(cfg, &mut rng_from_seed(stream_seed(seed, TARGET_STREAM)))
}

fn run_one(
    strategy: &Strategy,
    dist: &TargetDistribution,
    cfg: &GridConfig,
    base_seed: u64,
    trial: u64,
) -> TrialRecord {
    let seed = trial_seed(base_seed, trial);
    let target = trial_target(dist, cfg, base_seed, trial);
    let mut rng = rng_from_seed(stream_seed(seed, SEARCH_STREAM));
    let started = Instant::now();
    let (steps_taken, capped, loops) = match strategy {
        Strategy::Mcts(mcfg) => {
            let game = play_game(target, dist, cfg, mcfg, &mut rng);
            (game.steps, game.capped, game.loops)
        }
        Strategy::Baseline(policy) => match baseline_search(policy, target, cfg, &mut rng) {
            Ok(steps) => (steps, false, 0),
            Err(_) => (BASELINE_CAP, true, 0),
        },
    };
    TrialRecord {
        trial,
        seed,
        target,
        steps_taken,
        optimal_steps: crate::lattice::torus_l1(cfg.start(), target, cfg.side()),
        wall_ms: started.elapsed().as_secs_f64() * 1e3,
        capped,
        strategy: strategy.label(),
        loops,
    }
}

fn parallel_map<T, F>(count: u64, workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    match workers {
        1 => (0..count).map(f).collect(),
        0 => (0..count).into_par_iter().map(f).collect(),
        n => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| (0..count).into_par_iter().map(&f).collect()),
            Err(_) => (0..count).map(f).collect(),
        },
    }
}

/// Runs `trials` seeded games. `workers = 0` uses rayon's global pool.
pub fn run_trials(
    strategy: &Strategy,
    dist: &TargetDistribution,
    cfg: &GridConfig,
    trials: u64,
    base_seed: u64,
    workers: usize,
) -> Result<Vec<TrialRecord>, Error> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    dist.validate(cfg)?;
    Ok(parallel_map(trials, workers, |i| run_one(strategy, dist, cfg, base_seed, i)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryStats {
    pub n: usize,
    pub mean_steps: f64,
    pub mean_optimal: f64,
    /// Mean of `steps - optimal`; the headline ASOO reading.
    pub mean_excess: f64,
    /// Mean of `steps / max(optimal, 1)`.
    pub mean_ratio: f64,
    /// Sample standard deviation of the excess.
    pub std: f64,
    pub ci95_half_width: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub capped_count: usize,
}

impl SummaryStats {
    /// `mean_excess ± ci95_half_width`.
    pub fn ci95_interval(&self) -> (f64, f64) {
        (self.mean_excess - self.ci95_half_width, self.mean_excess + self.ci95_half_width)
    }

    pub fn ci_overlaps(&self, other: &SummaryStats) -> bool {
        let (a_lo, a_hi) = self.ci95_interval();
        let (b_lo, b_hi) = other.ci95_interval();
        a_lo <= b_hi && b_lo <= a_hi
    }
}

pub fn summarize(records: &[TrialRecord]) -> Result<SummaryStats, Error> {
    let n = records.len();
    if n < 2 {
        return Err(Error::TooFewRecords(n));
    }
    let total_steps: u64 = records.iter().map(|r| r.steps_taken).sum();
    let total_optimal: u64 = records.iter().map(|r| u64::from(r.optimal_steps)).sum();
    let mean_steps = total_steps as f64 / n as f64;
    let mean_optimal = total_optimal as f64 / n as f64;
    let mut excess: Vec<f64> = records.iter().map(TrialRecord::excess).collect();
    let ratios: Vec<f64> = records.iter().map(TrialRecord::ratio).collect();
    let std = sample_std(&excess);
    excess.sort_by(f64::total_cmp);
    Ok(SummaryStats {
        n,
        mean_steps,
        mean_optimal,
        mean_excess: mean_steps - mean_optimal,
        mean_ratio: mean(&ratios),
        std,
        ci95_half_width: 1.96 * std / (n as f64).sqrt(),
        q1: quantile_sorted(&excess, 0.25),
        median: quantile_sorted(&excess, 0.5),
        q3: quantile_sorted(&excess, 0.75),
        capped_count: records.iter().filter(|r| r.capped).count(),
    })
}

/// One summary line of an experiment table.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRow {
    pub experiment: String,
    pub strategy: String,
    pub side: u32,
    pub sigma: f64,
    pub budget: Option<Budget>,
    pub trials: u64,
    pub base_seed: u64,
    pub summary: SummaryStats,
}

/// Flat form of [`ExperimentRow`], one field per output column.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlatRow {
    pub experiment: String,
    pub strategy: String,
    #[serde(rename = "N")]
    pub n: u32,
    pub sigma: String,
    pub loops: Option<u64>,
    pub time_ms: Option<f64>,
    pub trials: u64,
    pub mean_excess: f64,
    pub mean_ratio: f64,
    pub std: f64,
    pub ci95: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub capped_count: usize,
    pub base_seed: u64,
}

pub const SUMMARY_CSV_HEADER: &str = "experiment,strategy,N,sigma,loops,time_ms,trials,mean_excess,mean_ratio,std,ci95,q1,median,q3,capped_count,base_seed";

pub fn format_sigma(sigma: f64) -> String {
    if sigma.is_infinite() {
        "inf".to_string()
    } else {
        format!("{sigma}")
    }
}

impl ExperimentRow {
    pub fn flat(&self) -> FlatRow {
        let (loops, time_ms) = match self.budget {
            Some(Budget::Loops(l)) => (Some(l), None),
            Some(Budget::Time(t)) => (None, Some(t.as_secs_f64() * 1e3)),
            None => (None, None),
        };
        FlatRow {
            experiment: self.experiment.clone(),
            strategy: self.strategy.clone(),
            n: self.side,
            sigma: format_sigma(self.sigma),
            loops,
            time_ms,
            trials: self.trials,
            mean_excess: self.summary.mean_excess,
            mean_ratio: self.summary.mean_ratio,
            std: self.summary.std,
            ci95: self.summary.ci95_half_width,
            q1: self.summary.q1,
            median: self.summary.median,
            q3: self.summary.q3,
            capped_count: self.summary.capped_count,
            base_seed: self.base_seed,
        }
    }

    /// The row in [`SUMMARY_CSV_HEADER`] column order.
    pub fn to_csv(&self) -> String {
        let f = self.flat();
        let opt = |v: Option<String>| v.unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            f.experiment,
            f.strategy,
            f.n,
            f.sigma,
            opt(f.loops.map(|l| l.to_string())),
            opt(f.time_ms.map(|t| t.to_string())),
            f.trials,
            f.mean_excess,
            f.mean_ratio,
            f.std,
            f.ci95,
            f.q1,
            f.median,
            f.q3,
            f.capped_count,
            f.base_seed
        )
    }
}

/// Shared inputs of every preset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunSettings {
    pub trials: u64,
    pub base_seed: u64,
    pub workers: usize,
}

/// Runs each strategy on one distribution, paired by seed.
pub fn experiment_compare(
    name: &str,
    cfg: &GridConfig,
    dist: &TargetDistribution,
    strategies: &[Strategy],
    run: RunSettings,
) -> Result<Vec<(ExperimentRow, Vec<TrialRecord>)>, Error> {
    strategies
        .iter()
        .map(|s| {
            let records = run_trials(s, dist, cfg, run.trials, run.base_seed, run.workers)?;
            let row = ExperimentRow {
                experiment: name.to_string(),
                strategy: s.label(),
                side: cfg.side(),
                sigma: dist.sigma(),
                budget: s.budget(),
                trials: run.trials,
                base_seed: run.base_seed,
                summary: summarize(&records)?,
            };
            Ok((row, records))
        })
        .collect()
}

/// Centered Gaussian for finite sigma, uniform for infinite.
pub fn sigma_distribution(side: u32, sigma: f64) -> TargetDistribution {
    if sigma.is_infinite() {
        TargetDistribution::Uniform
    } else {
        TargetDistribution::centered_gaussian(side, sigma)
    }
}

/// One row per `(sigma, strategy)`. An infinite sigma means the uniform endpoint.
pub fn experiment_gaussian_sweep(
    cfg: &GridConfig,
    sigmas: &[f64],
    strategies: &[Strategy],
    run: RunSettings,
) -> Result<Vec<(ExperimentRow, Vec<TrialRecord>)>, Error> {
    let mut out = Vec::new();
    for &sigma in sigmas {
        let dist = sigma_distribution(cfg.side(), sigma);
        out.extend(experiment_compare("gauss-sweep", cfg, &dist, strategies, run)?);
    }
    Ok(out)
}

/// One row per `(budget, rollout policy)`, all other MCTS settings from `template`.
pub fn experiment_budget_sweep(
    name: &str,
    cfg: &GridConfig,
    budgets: &[Budget],
    rollouts: &[RolloutPolicy],
    template: &MctsConfig,
    dist: &TargetDistribution,
    run: RunSettings,
) -> Result<Vec<(ExperimentRow, Vec<TrialRecord>)>, Error> {
    let mut out = Vec::new();
    for &budget in budgets {
        let strategies: Vec<Strategy> = rollouts
            .iter()
            .map(|p| Ok(Strategy::Mcts(template.clone().budget(budget)?.rollout(p.clone()))))
            .collect::<Result<_, Error>>()?;
        out.extend(experiment_compare(name, cfg, dist, &strategies, run)?);
    }
    Ok(out)
}

/// Parameters of the NSARW convergence study other than the grid size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceSetup {
    pub vision_radius: u32,
    pub loops: u64,
    pub exploration: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub side: u32,
    pub mcts: ExperimentRow,
    pub nsarw: ExperimentRow,
    /// `|mean_MCTS - mean_NSARW| / mean_NSARW` over mean steps.
    pub gap: f64,
}

/// MCTS with random-walk rollouts against the NSARW baseline on uniform targets,
/// one paired comparison per grid size.
pub fn experiment_nsarw_convergence(
    sizes: &[u32],
    setup: ConvergenceSetup,
    run: RunSettings,
) -> Result<Vec<ConvergenceRow>, Error> {
    sizes
        .iter()
        .map(|&side| {
            let cfg = GridConfig::new(side, setup.vision_radius)?;
            let cap = RolloutPolicy::default_cap(side);
            let mcts = MctsConfig::with_loops(setup.loops, RolloutPolicy::random_walk(cap)?)?
                .exploration(setup.exploration)?
                .reuse_stats(true);
            let strategies = [Strategy::Mcts(mcts), Strategy::Baseline(RolloutPolicy::nsarw(cap)?)];
            let mut rows =
                experiment_compare("nsarw-convergence", &cfg, &TargetDistribution::Uniform, &strategies, run)?;
            let (nsarw, _) = rows.pop().expect("two rows");
            let (mcts, _) = rows.pop().expect("two rows");
            let gap = (mcts.summary.mean_steps - nsarw.summary.mean_steps).abs() / nsarw.summary.mean_steps;
            Ok(ConvergenceRow { side, mcts, nsarw, gap })
        })
        .collect()
}

/// Budget in milliseconds, for presets given wall-clock limits.
pub fn time_budget_ms(ms: f64) -> Budget {
    Budget::Time(Duration::from_secs_f64(ms / 1e3))
}
