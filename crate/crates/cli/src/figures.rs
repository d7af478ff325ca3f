//! Preset experiments, one per figure.

use lattice_mcts::harness::{
    experiment_budget_sweep, experiment_compare, experiment_gaussian_sweep, experiment_nsarw_convergence,
    time_budget_ms, ConvergenceSetup, ExperimentRow, RunSettings, Strategy,
};
use lattice_mcts::lattice::Position;
use lattice_mcts::mcts::Budget;
use lattice_mcts::rng::rng_from_seed;
use lattice_mcts::target::{histogram, TargetDistribution};

use crate::config::{ConfigError, Resolver, Settings};

pub const FIGURES: &[&str] = &[
    "gauss-sweep",
    "delta-compare",
    "budget-loops",
    "budget-time",
    "uniform-compare",
    "nsarw-convergence",
    "target-histogram",
];

pub const FIGURE_TRIALS: u64 = 1_000;
pub const HISTOGRAM_DRAWS: u64 = 10_000;

/// Figure-specific keys and their defaults.
pub fn figure_defaults(name: &str) -> &'static [(&'static str, &'static str)] {
    match name {
        "gauss-sweep" => &[("figure.sigmas", "0,2,5,10,inf")],
        "budget-loops" => &[("figure.loops", "10,100,1000,10000")],
        "budget-time" => &[("figure.time_ms", "1,2,5,10")],
        "nsarw-convergence" => &[("figure.sizes", "11,21,41")],
        "target-histogram" => &[("figure.sigma", "5"), ("figure.draws", "10000")],
        _ => &[],
    }
}

pub struct FigureOutput {
    pub rows: Vec<ExperimentRow>,
    /// Extra `(file name, body)` beside the summary.
    pub extra: Option<(&'static str, String)>,
}

fn list<T: std::str::FromStr>(settings: &Settings, key: &str) -> Result<Vec<T>, ConfigError> {
    let raw = settings.get(key).map(String::as_str).unwrap_or_default();
    raw.split(',')
        .map(|s| {
            let s = s.trim();
            let s = if s == "inf" || s == "uniform" { "inf" } else { s };
            s.parse().map_err(|_| ConfigError {
                key: Some(key.to_string()),
                line: None,
                message: format!("invalid list entry `{s}`"),
            })
        })
        .collect()
}

fn comparison(r: &Resolver) -> Result<Vec<Strategy>, ConfigError> {
    Ok(vec![
        Strategy::Mcts(r.mcts(r.policy("rw")?)?),
        Strategy::Mcts(r.mcts(r.policy("levy")?)?),
        Strategy::Baseline(r.policy("rw")?),
        Strategy::Baseline(r.policy("levy")?),
        Strategy::Baseline(r.policy("nsarw")?),
    ])
}

fn delta(r: &Resolver) -> Result<TargetDistribution, ConfigError> {
    let x = r.value("target.x")?;
    let y = r.value("target.y")?;
    let parse = |k: &str, v: &str| {
        v.parse().map_err(|_| ConfigError { key: Some(k.into()), line: None, message: format!("invalid value `{v}`") })
    };
    Ok(TargetDistribution::Delta(Position::new(parse("target.x", &x)?, parse("target.y", &y)?)))
}

pub fn run_figure(name: &str, settings: &Settings, workers: usize) -> Result<FigureOutput, ConfigError> {
    let r = Resolver::new(settings);
    let cfg = r.grid()?;
    let run = RunSettings { trials: r.trials()?, base_seed: r.seed()?, workers };
    let rows = |v: Vec<(ExperimentRow, Vec<_>)>| v.into_iter().map(|(row, _)| row).collect();
    let out = match name {
        "gauss-sweep" => {
            let sigmas: Vec<f64> = list(settings, "figure.sigmas")?;
            rows(experiment_gaussian_sweep(&cfg, &sigmas, &comparison(&r)?, run)?)
        }
        "delta-compare" => rows(experiment_compare(name, &cfg, &delta(&r)?, &comparison(&r)?, run)?),
        "uniform-compare" => rows(experiment_compare(name, &cfg, &TargetDistribution::Uniform, &comparison(&r)?, run)?),
        "budget-loops" | "budget-time" => {
            let budgets: Vec<Budget> = if name == "budget-loops" {
                list::<u64>(settings, "figure.loops")?.into_iter().map(Budget::Loops).collect()
            } else {
                list::<f64>(settings, "figure.time_ms")?.into_iter().map(time_budget_ms).collect()
            };
            let template = r.mcts(r.policy("rw")?)?;
            let rollouts = [r.policy("rw")?, r.policy("levy")?];
            rows(experiment_budget_sweep(name, &cfg, &budgets, &rollouts, &template, &delta(&r)?, run)?)
        }
        "nsarw-convergence" => {
            let sizes: Vec<u32> = list(settings, "figure.sizes")?;
            let Budget::Loops(loops) = r.budget()? else {
                return Err(ConfigError::new("nsarw-convergence needs a loop budget, not mcts.time_budget_ms"));
            };
            let setup = ConvergenceSetup {
                vision_radius: cfg.vision_radius(),
                loops,
                exploration: r.mcts(r.policy("rw")?)?.get_exploration(),
            };
            let conv = experiment_nsarw_convergence(&sizes, setup, run)?;
            let mut table = String::from("N,mcts_mean_steps,nsarw_mean_steps,gap\n");
            for c in &conv {
                table.push_str(&format!(
                    "{},{},{},{}\n",
                    c.side, c.mcts.summary.mean_steps, c.nsarw.summary.mean_steps, c.gap
                ));
            }
            return Ok(FigureOutput {
                rows: conv.into_iter().flat_map(|c| [c.mcts, c.nsarw]).collect(),
                extra: Some(("convergence.csv", table)),
            });
        }
        "target-histogram" => {
            let sigma: f64 = list(settings, "figure.sigma")?.first().copied().unwrap_or(5.0);
            let draws: u64 = list(settings, "figure.draws")?.first().copied().unwrap_or(HISTOGRAM_DRAWS);
            let dist = if sigma.is_infinite() {
                TargetDistribution::Uniform
            } else {
                TargetDistribution::Gaussian {
                    mean_x: r.value("target.mean_x")?.parse().unwrap_or(f64::from(cfg.side()) / 2.0),
                    mean_y: r.value("target.mean_y")?.parse().unwrap_or(f64::from(cfg.side()) / 2.0),
                    sigma,
                }
            };
            dist.validate(&cfg)?;
            let hist = histogram(&dist, &cfg, draws, &mut rng_from_seed(r.seed()?));
            let mut body = String::new();
            for y in 1..=cfg.side() {
                let row: Vec<String> = hist.row(y).iter().map(u64::to_string).collect();
                body.push_str(&row.join(","));
                body.push('\n');
            }
            return Ok(FigureOutput { rows: Vec::new(), extra: Some(("histogram.csv", body)) });
        }
        _ => return Err(ConfigError::new(format!("unknown figure `{name}`; expected one of {}", FIGURES.join(", ")))),
    };
    Ok(FigureOutput { rows: out, extra: None })
}
