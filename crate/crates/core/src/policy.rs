//! Walkers used both as MCTS rollout policies and as standalone baseline
//! searchers: the simple random walk, a discrete Lévy flight and the nearly
//! self-avoiding random walk (NSARW).

use rand::Rng;

use crate::error::Error;
use crate::lattice::{axis_distance, detected, step, Direction, GridConfig, Position};

/// Step cap used by [`baseline_search`].
pub const BASELINE_CAP: u64 = 1_000_000;

/// Exponent used when none is configured.
pub const DEFAULT_LEVY_MU: f64 = 2.0;

/// Truncated discrete power law `P(l) ∝ l^-mu` on `1..=l_max`, sampled by
/// inverting the cumulative mass.
#[derive(Debug, Clone, PartialEq)]
pub struct LevyLaw {
    mu: f64,
    l_max: u32,
    cdf: Vec<f64>,
}

impl LevyLaw {
    pub fn new(mu: f64, l_max: u32) -> Result<Self, Error> {
        if !(mu > 1.0 && mu <= 3.0) {
            return Err(Error::InvalidExponent(mu));
        }
        if l_max == 0 {
            return Err(Error::InvalidMaxLength);
        }
        let weights: Vec<f64> = (1..=l_max).map(|l| f64::from(l).powf(-mu)).collect();
        let total: f64 = weights.iter().sum();
        let mut acc = 0.0;
        let mut cdf: Vec<f64> = weights
            .iter()
            .map(|w| {
                acc += w / total;
                acc
            })
            .collect();
        *cdf.last_mut().expect("l_max >= 1") = 1.0;
        Ok(Self { mu, l_max, cdf })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn l_max(&self) -> u32 {
        self.l_max
    }

    /// Probability of drawing length `l`.
    pub fn pmf(&self, l: u32) -> f64 {
        match l {
            0 => 0.0,
            1 => self.cdf[0],
            l if l <= self.l_max => self.cdf[l as usize - 1] - self.cdf[l as usize - 2],
            _ => 0.0,
        }
    }

    #[inline]
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        let u: f64 = rng.random();
        self.cdf.partition_point(|&c| c <= u) as u32 + 1
    }
}

/// One jump length from the truncated power law. Builds the table on every call;
/// hold a [`LevyLaw`] for repeated draws.
pub fn levy_length<R: Rng + ?Sized>(mu: f64, l_max: u32, rng: &mut R) -> Result<u32, Error> {
    Ok(LevyLaw::new(mu, l_max)?.sample(rng))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Walker {
    RandomWalk,
    LevyFlight(LevyLaw),
    Nsarw,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RolloutPolicy {
    walker: Walker,
    cap: u64,
    /// A whole Lévy jump costs one step instead of one per cell.
    levy_unit_cost: bool,
    /// Check detection at every cell of a jump, not only where it lands.
    levy_midjump_detect: bool,
}

impl RolloutPolicy {
    pub fn new(walker: Walker, cap: u64) -> Result<Self, Error> {
        if cap == 0 {
            return Err(Error::InvalidCap);
        }
        Ok(Self { walker, cap, levy_unit_cost: false, levy_midjump_detect: true })
    }

    pub fn random_walk(cap: u64) -> Result<Self, Error> {
        Self::new(Walker::RandomWalk, cap)
    }

    pub fn levy(mu: f64, l_max: u32, cap: u64) -> Result<Self, Error> {
        Self::new(Walker::LevyFlight(LevyLaw::new(mu, l_max)?), cap)
    }

    pub fn nsarw(cap: u64) -> Result<Self, Error> {
        Self::new(Walker::Nsarw, cap)
    }

    /// `50 N^2`.
    pub fn default_cap(side: u32) -> u64 {
        50 * u64::from(side) * u64::from(side)
    }

    pub fn with_levy_costs(mut self, unit_cost: bool, midjump_detect: bool) -> Self {
        self.levy_unit_cost = unit_cost;
        self.levy_midjump_detect = midjump_detect;
        self
    }

    pub fn with_cap(mut self, cap: u64) -> Result<Self, Error> {
        if cap == 0 {
            return Err(Error::InvalidCap);
        }
        self.cap = cap;
        Ok(self)
    }

    pub fn walker(&self) -> &Walker {
        &self.walker
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn levy_unit_cost(&self) -> bool {
        self.levy_unit_cost
    }

    pub fn levy_midjump_detect(&self) -> bool {
        self.levy_midjump_detect
    }

    /// Short name used in experiment tables.
    pub fn label(&self) -> &'static str {
        match self.walker {
            Walker::RandomWalk => "RW",
            Walker::LevyFlight(_) => "LFS",
            Walker::Nsarw => "NSARW",
        }
    }
}

/// Per-cell visit counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VisitGrid {
    side: u32,
    counts: Vec<u32>,
    total: u64,
}

impl VisitGrid {
    pub fn new(side: u32) -> Self {
        Self { side, counts: vec![0; (side as usize) * (side as usize)], total: 0 }
    }

    #[inline]
    fn offset(&self, pos: Position) -> usize {
        (pos.y as usize - 1) * self.side as usize + (pos.x as usize - 1)
    }

    #[inline]
    pub fn record(&mut self, pos: Position) {
        let i = self.offset(pos);
        self.counts[i] += 1;
        self.total += 1;
    }

    #[inline]
    pub fn count(&self, pos: Position) -> u32 {
        self.counts[self.offset(pos)]
    }

    pub fn set(&mut self, pos: Position, count: u32) {
        let i = self.offset(pos);
        self.total = self.total - u64::from(self.counts[i]) + u64::from(count);
        self.counts[i] = count;
    }

    /// Number of positions recorded.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn distinct(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }
}

/// Uniform choice among the neighbors with the fewest visits.
pub fn nsarw_choose<R: Rng + ?Sized>(
    pos: Position,
    visits: &VisitGrid,
    cfg: &GridConfig,
    rng: &mut R,
) -> Direction {
    let counts = cfg.neighbors(pos).map(|p| visits.count(p));
    let least = *counts.iter().min().expect("four neighbors");
    let mut options = [Direction::Up; 4];
    let mut k = 0;
    for d in Direction::ALL {
        if counts[d.index()] == least {
            options[k] = d;
            k += 1;
        }
    }
    if k == 1 {
        options[0]
    } else {
        options[rng.random_range(0..k)]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkOutcome {
    pub steps: u64,
    pub found: bool,
}

/// Runs `policy` from `start` until the target is detected or `cap` steps pass,
/// reporting every cell entered to `observe`.
pub fn walk<R, F>(
    start: Position,
    target: Position,
    policy: &RolloutPolicy,
    cfg: &GridConfig,
    cap: u64,
    rng: &mut R,
    mut observe: F,
) -> WalkOutcome
where
    R: Rng + ?Sized,
    F: FnMut(Position),
{
    if detected(start, target, cfg) {
        return WalkOutcome { steps: 0, found: true };
    }
    match &policy.walker {
        Walker::RandomWalk => random_walk(start, target, cfg, cap, rng, &mut observe),
        Walker::LevyFlight(law) => levy_walk(start, target, policy, law, cfg, cap, rng, &mut observe),
        Walker::Nsarw => nsarw_walk(start, target, cfg, cap, rng, &mut observe),
    }
}

fn random_walk<R, F>(
    start: Position,
    target: Position,
    cfg: &GridConfig,
    cap: u64,
    rng: &mut R,
    observe: &mut F,
) -> WalkOutcome
where
    R: Rng + ?Sized,
    F: FnMut(Position),
{
    let n = cfg.side();
    let radius = cfg.vision_radius();
    // 0-based coordinates; offsets indexed like Direction::ALL, pre-wrapped mod n.
    let (tx, ty) = (target.x - 1, target.y - 1);
    let (mut x, mut y) = (start.x - 1, start.y - 1);
    let dx = [0, 0, 1, n - 1];
    let dy = [1, n - 1, 0, 0];
    let mut bits = 0u64;
    let mut left = 0u32;
    for steps in 1..=cap {
        if left == 0 {
            bits = rng.next_u64();
            left = 32;
        }
        let d = (bits & 3) as usize;
        bits >>= 2;
        left -= 1;
        x += dx[d];
        if x >= n {
            x -= n;
        }
        y += dy[d];
        if y >= n {
            y -= n;
        }
        observe(Position::new(x + 1, y + 1));
        if axis_distance(x, tx, n) + axis_distance(y, ty, n) <= radius {
            return WalkOutcome { steps, found: true };
        }
    }
    WalkOutcome { steps: cap, found: false }
}

#[allow(clippy::too_many_arguments)]
fn levy_walk<R, F>(
    start: Position,
    target: Position,
    policy: &RolloutPolicy,
    law: &LevyLaw,
    cfg: &GridConfig,
    cap: u64,
    rng: &mut R,
    observe: &mut F,
) -> WalkOutcome
where
    R: Rng + ?Sized,
    F: FnMut(Position),
{
    let mut pos = start;
    let mut steps = 0u64;
    loop {
        let dir = Direction::ALL[rng.random_range(0..4)];
        let length = law.sample(rng);
        for k in 1..=length {
            pos = step(pos, dir, cfg);
            observe(pos);
            if !policy.levy_unit_cost {
                steps += 1;
            }
            if (policy.levy_midjump_detect || k == length) && detected(pos, target, cfg) {
                if policy.levy_unit_cost {
                    steps += 1;
                }
                return WalkOutcome { steps, found: true };
            }
            if steps == cap {
                return WalkOutcome { steps, found: false };
            }
        }
        if policy.levy_unit_cost {
            steps += 1;
            if steps == cap {
                return WalkOutcome { steps, found: false };
            }
        }
    }
}

fn nsarw_walk<R, F>(
    start: Position,
    target: Position,
    cfg: &GridConfig,
    cap: u64,
    rng: &mut R,
    observe: &mut F,
) -> WalkOutcome
where
    R: Rng + ?Sized,
    F: FnMut(Position),
{
    let mut visits = VisitGrid::new(cfg.side());
    visits.record(start);
    let mut pos = start;
    for steps in 1..=cap {
        pos = step(pos, nsarw_choose(pos, &visits, cfg, rng), cfg);
        visits.record(pos);
        observe(pos);
        if detected(pos, target, cfg) {
            return WalkOutcome { steps, found: true };
        }
    }
    WalkOutcome { steps: cap, found: false }
}

/// One rollout, capped at the policy's own cap.
#[inline]
pub fn rollout<R: Rng + ?Sized>(
    start: Position,
    target: Position,
    policy: &RolloutPolicy,
    cfg: &GridConfig,
    rng: &mut R,
) -> WalkOutcome {
    walk(start, target, policy, cfg, policy.cap, rng, |_| {})
}

/// Rollout that also returns every cell visited, start included.
pub fn trace<R: Rng + ?Sized>(
    start: Position,
    target: Position,
    policy: &RolloutPolicy,
    cfg: &GridConfig,
    rng: &mut R,
) -> (WalkOutcome, Vec<Position>) {
    let mut path = vec![start];
    let outcome = walk(start, target, policy, cfg, policy.cap, rng, |p| path.push(p));
    (outcome, path)
}

/// Searches from the grid's start cell with the policy as a standalone searcher.
/// Returns the unit steps to detection, or `CapExhausted` after [`BASELINE_CAP`].
pub fn baseline_search<R: Rng + ?Sized>(
    policy: &RolloutPolicy,
    target: Position,
    cfg: &GridConfig,
    rng: &mut R,
) -> Result<u64, Error> {
    let outcome = walk(cfg.start(), target, policy, cfg, BASELINE_CAP, rng, |_| {});
    if outcome.found {
        Ok(outcome.steps)
    } else {
        Err(Error::CapExhausted { cap: BASELINE_CAP })
    }
}
