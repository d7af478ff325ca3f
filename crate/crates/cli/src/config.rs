//! Key registry, config files and resolution into library types.

use std::collections::BTreeMap;
use std::fmt;

use lattice_mcts::harness::{time_budget_ms, Strategy};
use lattice_mcts::lattice::{GridConfig, Position};
use lattice_mcts::mcts::{Budget, CreditMode, FinalMove, MctsConfig, ValueEstimate};
use lattice_mcts::policy::RolloutPolicy;
use lattice_mcts::target::TargetDistribution;

pub struct KeySpec {
    pub name: &'static str,
    pub default: &'static str,
    pub help: &'static str,
}

const fn key(name: &'static str, default: &'static str, help: &'static str) -> KeySpec {
    KeySpec { name, default, help }
}

/// Every accepted key, in the order they are echoed into output headers.
pub const KEYS: &[KeySpec] = &[
    key("experiment", "run", "label written to the experiment column"),
    key("grid.n", "40", "lattice side N"),
    key("grid.vision_radius", "1", "detection radius in lattice steps"),
    key("grid.start_x", "1", "searcher start column"),
    key("grid.start_y", "1", "searcher start row"),
    key("target.kind", "uniform", "delta | gaussian | uniform"),
    key("target.x", "(N+1)/2", "delta target column"),
    key("target.y", "(N+1)/2", "delta target row"),
    key("target.sigma", "0", "gaussian standard deviation"),
    key("target.mean_x", "N/2", "gaussian mean column"),
    key("target.mean_y", "N/2", "gaussian mean row"),
    key("strategy", "mcts", "mcts | baseline (the policy below searches on its own)"),
    key("policy.kind", "rw", "rw | levy | nsarw"),
    key("policy.mu", "2", "levy exponent in (1, 3]"),
    key("policy.lmax", "N", "longest levy jump"),
    key("policy.cap", "50*N^2", "rollout step cap (baselines always use 1000000)"),
    key("policy.levy_unit_cost", "false", "a levy jump costs one step"),
    key("policy.levy_midjump_detect", "true", "detect at every cell of a levy jump"),
    key("mcts.c", "1.4142135623730951", "UCT exploration constant"),
    key("mcts.loops", "100", "loops per move"),
    key("mcts.time_budget_ms", "", "wall-clock budget per move; replaces mcts.loops when set"),
    key("mcts.reuse_stats", "true", "keep statistics between moves"),
    key("mcts.credit_mode", "remaining", "remaining | total"),
    key("mcts.final_move", "value_per_visit", "value_per_visit | avg_reward | max_visits | uct"),
    key("mcts.value", "inverse_mean_steps", "inverse_mean_steps | mean_reward"),
    key("mcts.depth_cap", "1", "selection steps below the root"),
    key("trials", "100", "number of paired trials"),
    key("seed", "0", "base seed"),
];

pub fn is_key(name: &str) -> bool {
    KEYS.iter().any(|k| k.name == name)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub key: Option<String>,
    pub line: Option<usize>,
    pub message: String,
}

impl ConfigError {
    pub fn new(message: impl Into<String>) -> Self {
        Self { key: None, line: None, message: message.into() }
    }

    fn for_key(key: &str, message: impl Into<String>) -> Self {
        Self { key: Some(key.to_string()), line: None, message: message.into() }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.key, self.line) {
            (Some(k), Some(l)) => write!(f, "line {l}: key `{k}`: {}", self.message),
            (Some(k), None) => write!(f, "key `{k}`: {}", self.message),
            (None, Some(l)) => write!(f, "line {l}: {}", self.message),
            (None, None) => write!(f, "{}", self.message),
        }
    }
}

impl From<lattice_mcts::error::Error> for ConfigError {
    fn from(e: lattice_mcts::error::Error) -> Self {
        ConfigError::new(e.to_string())
    }
}

/// Explicitly set keys; everything else takes its default.
pub type Settings = BTreeMap<String, String>;

/// Parses `key = value` lines. Blank lines and `#` comments are skipped.
pub fn parse_config(text: &str) -> Result<Settings, ConfigError> {
    let mut out = Settings::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or(ConfigError {
            key: None,
            line: Some(i + 1),
            message: format!("expected key=value, got `{line}`"),
        })?;
        let (k, v) = (k.trim(), v.trim());
        if !is_key(k) {
            return Err(ConfigError { key: Some(k.to_string()), line: Some(i + 1), message: "unknown key".into() });
        }
        out.insert(k.to_string(), v.to_string());
    }
    Ok(out)
}

/// Reads the leading `# key=value` header of an output file.
pub fn parse_header(text: &str) -> Result<(Option<String>, Settings), ConfigError> {
    let mut figure = None;
    let mut out = Settings::new();
    for (i, raw) in text.lines().enumerate() {
        let Some(body) = raw.strip_prefix('#') else { break };
        let Some((k, v)) = body.trim().split_once('=') else { continue };
        let (k, v) = (k.trim(), v.trim());
        if k == "figure" {
            figure = Some(v.to_string());
        } else if is_key(k) {
            out.insert(k.to_string(), v.to_string());
        } else if !is_figure_key(k) {
            return Err(ConfigError { key: Some(k.to_string()), line: Some(i + 1), message: "unknown key".into() });
        } else {
            out.insert(k.to_string(), v.to_string());
        }
    }
    if out.is_empty() && figure.is_none() {
        return Err(ConfigError::new("no `# key=value` header found"));
    }
    Ok((figure, out))
}

/// Figure-only settings that may appear in headers.
pub const FIGURE_KEYS: &[&str] = &["figure.sigmas", "figure.sizes", "figure.loops", "figure.time_ms", "figure.sigma", "figure.draws"];

pub fn is_figure_key(name: &str) -> bool {
    FIGURE_KEYS.contains(&name)
}

/// `delta:X,Y`, `gaussian:SIGMA`, `gaussian:SIGMA@MX,MY` or `uniform`.
pub fn expand_target(spec: &str, settings: &mut Settings) -> Result<(), ConfigError> {
    let bad = || ConfigError::for_key("target", format!("cannot parse `{spec}`"));
    let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let mut set = |k: &str, v: &str| {
        settings.insert(k.to_string(), v.trim().to_string());
    };
    match kind {
        "uniform" if rest.is_empty() => set("target.kind", "uniform"),
        "delta" => {
            let (x, y) = rest.split_once(',').ok_or_else(bad)?;
            set("target.kind", "delta");
            set("target.x", x);
            set("target.y", y);
        }
        "gaussian" => {
            let (sigma, mean) = rest.split_once('@').map_or((rest, None), |(s, m)| (s, Some(m)));
            if sigma.is_empty() {
                return Err(bad());
            }
            set("target.kind", "gaussian");
            set("target.sigma", sigma);
            if let Some(m) = mean {
                let (x, y) = m.split_once(',').ok_or_else(bad)?;
                set("target.mean_x", x);
                set("target.mean_y", y);
            }
        }
        _ => return Err(bad()),
    }
    Ok(())
}

/// Typed view over the settings, with defaults filled in from [`KEYS`].
pub struct Resolver<'a> {
    settings: &'a Settings,
}

impl<'a> Resolver<'a> {
    pub fn new(settings: &'a Settings) -> Self {
        Self { settings }
    }

    pub fn raw(&self, name: &str) -> Option<&str> {
        self.settings.get(name).map(String::as_str)
    }

    /// The set value, or the registry default with `N` substituted.
    pub fn value(&self, name: &str) -> Result<String, ConfigError> {
        if let Some(v) = self.raw(name) {
            return Ok(v.to_string());
        }
        let spec = KEYS.iter().find(|k| k.name == name).ok_or_else(|| ConfigError::for_key(name, "unknown key"))?;
        if !spec.default.contains('N') {
            return Ok(spec.default.to_string());
        }
        let n = self.side()?;
        Ok(match name {
            "target.x" | "target.y" => n.div_ceil(2).to_string(),
            "target.mean_x" | "target.mean_y" => (f64::from(n) / 2.0).to_string(),
            "policy.lmax" => n.to_string(),
            "policy.cap" => RolloutPolicy::default_cap(n).to_string(),
            _ => unreachable!("no derived default for {name}"),
        })
    }

    fn parse<T: std::str::FromStr>(&self, name: &str) -> Result<T, ConfigError> {
        let v = self.value(name)?;
        v.parse().map_err(|_| ConfigError::for_key(name, format!("invalid value `{v}`")))
    }

    fn choice<T: Copy>(&self, name: &str, options: &[(&str, T)]) -> Result<T, ConfigError> {
        let v = self.value(name)?;
        options.iter().find(|(s, _)| *s == v).map(|&(_, t)| t).ok_or_else(|| {
            let names: Vec<&str> = options.iter().map(|(s, _)| *s).collect();
            ConfigError::for_key(name, format!("`{v}` is not one of {}", names.join(", ")))
        })
    }

    pub fn side(&self) -> Result<u32, ConfigError> {
        let v = self.raw("grid.n").unwrap_or("40");
        v.parse().map_err(|_| ConfigError::for_key("grid.n", format!("invalid value `{v}`")))
    }

    pub fn trials(&self) -> Result<u64, ConfigError> {
        self.parse("trials")
    }

    pub fn seed(&self) -> Result<u64, ConfigError> {
        self.parse("seed")
    }

    pub fn experiment(&self) -> Result<String, ConfigError> {
        self.value("experiment")
    }

    pub fn grid(&self) -> Result<GridConfig, ConfigError> {
        let start = Position::new(self.parse("grid.start_x")?, self.parse("grid.start_y")?);
        Ok(GridConfig::new(self.side()?, self.parse("grid.vision_radius")?)?.with_start(start)?)
    }

    pub fn target(&self) -> Result<TargetDistribution, ConfigError> {
        Ok(match self.choice("target.kind", &[("delta", 0), ("gaussian", 1), ("uniform", 2)])? {
            0 => TargetDistribution::Delta(Position::new(self.parse("target.x")?, self.parse("target.y")?)),
            1 => TargetDistribution::Gaussian {
                mean_x: self.parse("target.mean_x")?,
                mean_y: self.parse("target.mean_y")?,
                sigma: self.parse("target.sigma")?,
            },
            _ => TargetDistribution::Uniform,
        })
    }

    pub fn policy_kind(&self) -> Result<&'static str, ConfigError> {
        self.choice("policy.kind", &[("rw", "rw"), ("levy", "levy"), ("nsarw", "nsarw")])
    }

    pub fn policy(&self, kind: &str) -> Result<RolloutPolicy, ConfigError> {
        let cap = self.parse("policy.cap")?;
        let policy = match kind {
            "rw" => RolloutPolicy::random_walk(cap)?,
            "nsarw" => RolloutPolicy::nsarw(cap)?,
            _ => RolloutPolicy::levy(self.parse("policy.mu")?, self.parse("policy.lmax")?, cap)?,
        };
        Ok(policy.with_levy_costs(self.parse("policy.levy_unit_cost")?, self.parse("policy.levy_midjump_detect")?))
    }

    pub fn budget(&self) -> Result<Budget, ConfigError> {
        let ms = self.value("mcts.time_budget_ms")?;
        if ms.is_empty() {
            return Ok(Budget::Loops(self.parse("mcts.loops")?));
        }
        let ms: f64 = self.parse("mcts.time_budget_ms")?;
        if !(ms.is_finite() && ms >= 0.0) {
            return Err(ConfigError::for_key("mcts.time_budget_ms", "must be a non-negative number"));
        }
        Ok(time_budget_ms(ms))
    }

    /// MCTS settings with the given rollout policy.
    pub fn mcts(&self, rollout: RolloutPolicy) -> Result<MctsConfig, ConfigError> {
        let credit = self.choice(
            "mcts.credit_mode",
            &[("remaining", CreditMode::RemainingSteps), ("total", CreditMode::TotalSteps)],
        )?;
        let final_move = self.choice(
            "mcts.final_move",
            &[
                ("value_per_visit", FinalMove::ValuePerVisit),
                ("avg_reward", FinalMove::AverageReward),
                ("max_visits", FinalMove::MaxVisits),
                ("uct", FinalMove::Uct),
            ],
        )?;
        let value = self.choice(
            "mcts.value",
            &[("inverse_mean_steps", ValueEstimate::InverseMeanSteps), ("mean_reward", ValueEstimate::MeanReward)],
        )?;
        Ok(MctsConfig::new(self.budget()?, rollout)?
            .exploration(self.parse("mcts.c")?)?
            .reuse_stats(self.parse("mcts.reuse_stats")?)
            .credit_mode(credit)
            .final_move(final_move)
            .value_estimate(value)
            .depth_cap(self.parse("mcts.depth_cap")?))
    }

    pub fn strategy(&self) -> Result<Strategy, ConfigError> {
        let policy = self.policy(self.policy_kind()?)?;
        if self.choice("strategy", &[("mcts", true), ("baseline", false)])? {
            Ok(Strategy::Mcts(self.mcts(policy)?))
        } else {
            Ok(Strategy::Baseline(policy))
        }
    }

    /// Every key with its effective value, for output headers.
    pub fn echo(&self) -> Result<Vec<(String, String)>, ConfigError> {
        KEYS.iter().map(|k| Ok((k.name.to_string(), self.value(k.name)?))).collect()
    }
}
