//! UCT search over the lattice state graph.
//!
//! Statistics are keyed by cell rather than by tree path: a loop credits every
//! cell its selection path passed through, so the cell the searcher just left
//! shows up as a heavily visited neighbor of the new root.
//!
//! One loop:
//! 1. place a practice target drawn from the target distribution,
//! 2. descend from the root by maximum UCT value (ties broken uniformly) until a
//!    cell has an unvisited neighbor, the depth cap is hit, or the practice target
//!    is detected,
//! 3. expand into a uniformly chosen unvisited neighbor,
//! 4. roll out with the default policy,
//! 5. credit each path cell with `1 / max(tau, 1)` where `tau` counts the steps
//!    from that cell to detection.
//!
//! The default depth cap of 1 keeps the tree to the root's children, so each loop
//! picks a neighbor by UCT and rolls out from there. Deeper selection on a reused
//! table credits the cells diagonal to the searcher twice as often as the cell
//! straight ahead, which skews the next move.
//!
//! A cell's value is the inverse of its mean step count by default. Averaging the
//! per-loop rewards instead is available as [`ValueEstimate::MeanReward`]; that
//! estimate is heavy tailed, so thinly sampled cells usually look worse than the
//! cell just left and the searcher tends to walk back and forth.

use std::time::{Duration, Instant};

use rand::Rng;

use crate::error::Error;
use crate::lattice::{detected, step, torus_l1, Direction, GridConfig, Position};
use crate::policy::{rollout, RolloutPolicy, WalkOutcome};
use crate::target::TargetDistribution;

pub const DEFAULT_EXPLORATION: f64 = std::f64::consts::SQRT_2;

/// Minimum loops per decision, whatever the budget.
pub const MIN_LOOPS: u64 = 4;

pub const DEFAULT_DEPTH_CAP: u32 = 1;

/// UCT score of a child. Unvisited children score `+inf`.
#[inline]
pub fn uct_value(child_n: u64, child_w: f64, parent_n: u64, c: f64) -> f64 {
    if child_n == 0 {
        return f64::INFINITY;
    }
    let n = child_n as f64;
    uct_score(child_w / n, child_n, parent_n, c)
}

#[inline]
fn uct_score(value: f64, child_n: u64, parent_n: u64, c: f64) -> f64 {
    if child_n == 0 {
        return f64::INFINITY;
    }
    value + c * ((parent_n as f64).ln() / child_n as f64).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Budget {
    Loops(u64),
    Time(Duration),
}

/// How the steps of one loop are turned into per-cell rewards.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CreditMode {
    /// Each cell is rewarded for the steps remaining after it.
    RemainingSteps,
    /// Every cell on the path gets the loop's total step count.
    TotalSteps,
}

/// How a cell's statistics become the value used by UCT and the final move.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueEstimate {
    /// `1 / mean(max(tau, 1))`, scaled.
    InverseMeanSteps,
    /// Cumulative reward over visits.
    MeanReward,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FinalMove {
    AverageReward,
    MaxVisits,
    /// Largest UCT value, exploration term included.
    Uct,
    /// Largest value divided by visit count.
    ValuePerVisit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MctsConfig {
    exploration: f64,
    budget: Budget,
    rollout: RolloutPolicy,
    reuse_stats: bool,
    credit_mode: CreditMode,
    final_move: FinalMove,
    value_estimate: ValueEstimate,
    depth_cap: u32,
    reward_scale: f64,
}

impl MctsConfig {
    pub fn new(budget: Budget, rollout: RolloutPolicy) -> Result<Self, Error> {
        if budget == Budget::Loops(0) {
            return Err(Error::InvalidLoops);
        }
        Ok(Self {
            exploration: DEFAULT_EXPLORATION,
            budget,
            rollout,
            reuse_stats: true,
            credit_mode: CreditMode::RemainingSteps,
            final_move: FinalMove::ValuePerVisit,
            value_estimate: ValueEstimate::InverseMeanSteps,
            depth_cap: DEFAULT_DEPTH_CAP,
            reward_scale: 1.0,
        })
    }

    pub fn with_loops(loops: u64, rollout: RolloutPolicy) -> Result<Self, Error> {
        Self::new(Budget::Loops(loops), rollout)
    }

    pub fn exploration(mut self, c: f64) -> Result<Self, Error> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidExploration(c));
        }
        self.exploration = c;
        Ok(self)
    }

    pub fn budget(mut self, budget: Budget) -> Result<Self, Error> {
        if budget == Budget::Loops(0) {
            return Err(Error::InvalidLoops);
        }
        self.budget = budget;
        Ok(self)
    }

    pub fn rollout(mut self, policy: RolloutPolicy) -> Self {
        self.rollout = policy;
        self
    }

    pub fn reuse_stats(mut self, reuse: bool) -> Self {
        self.reuse_stats = reuse;
        self
    }

    pub fn credit_mode(mut self, mode: CreditMode) -> Self {
        self.credit_mode = mode;
        self
    }

    pub fn final_move(mut self, rule: FinalMove) -> Self {
        self.final_move = rule;
        self
    }

    pub fn value_estimate(mut self, estimate: ValueEstimate) -> Self {
        self.value_estimate = estimate;
        self
    }

    /// Maximum number of selection steps below the root.
    pub fn depth_cap(mut self, cap: u32) -> Self {
        self.depth_cap = cap;
        self
    }

    /// Multiplies every per-loop reward.
    pub fn reward_scale(mut self, scale: f64) -> Result<Self, Error> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::InvalidRewardScale(scale));
        }
        self.reward_scale = scale;
        Ok(self)
    }

    pub fn rollout_policy(&self) -> &RolloutPolicy {
        &self.rollout
    }

    pub fn get_exploration(&self) -> f64 {
        self.exploration
    }

    pub fn get_budget(&self) -> Budget {
        self.budget
    }

    pub fn get_reuse_stats(&self) -> bool {
        self.reuse_stats
    }

    pub fn get_credit_mode(&self) -> CreditMode {
        self.credit_mode
    }

    pub fn get_final_move(&self) -> FinalMove {
        self.final_move
    }

    pub fn get_value_estimate(&self) -> ValueEstimate {
        self.value_estimate
    }

    pub fn get_depth_cap(&self) -> u32 {
        self.depth_cap
    }

    pub fn get_reward_scale(&self) -> f64 {
        self.reward_scale
    }

    /// `MCTS-` plus the rollout policy's label.
    pub fn label(&self) -> String {
        format!("MCTS-{}", self.rollout.label())
    }
}

/// Visit counts, cumulative rewards and cumulative step counts per lattice cell.
#[derive(Debug, Clone, PartialEq)]
pub struct StatTable {
    side: u32,
    visits: Vec<u64>,
    rewards: Vec<f64>,
    steps: Vec<u64>,
    root: Option<Position>,
    root_loops: u64,
    // Loop id per cell, to credit each cell at most once per loop.
    stamps: Vec<u64>,
    stamp: u64,
}

impl StatTable {
    pub fn new(side: u32) -> Self {
        let cells = (side as usize) * (side as usize);
        Self {
            side,
            visits: vec![0; cells],
            rewards: vec![0.0; cells],
            steps: vec![0; cells],
            root: None,
            root_loops: 0,
            stamps: vec![0; cells],
            stamp: 0,
        }
    }

    #[inline]
    fn offset(&self, pos: Position) -> usize {
        (pos.y as usize - 1) * self.side as usize + (pos.x as usize - 1)
    }

    #[inline]
    pub fn visits(&self, pos: Position) -> u64 {
        self.visits[self.offset(pos)]
    }

    #[inline]
    pub fn reward(&self, pos: Position) -> f64 {
        self.rewards[self.offset(pos)]
    }

    pub fn average(&self, pos: Position) -> Option<f64> {
        let n = self.visits(pos);
        (n > 0).then(|| self.reward(pos) / n as f64)
    }

    /// Mean of `max(tau, 1)` over the loops that credited `pos`.
    pub fn mean_steps(&self, pos: Position) -> Option<f64> {
        let n = self.visits(pos);
        (n > 0).then(|| self.steps[self.offset(pos)] as f64 / n as f64)
    }

    /// Value of a visited cell under `mcfg`'s estimate.
    pub fn value(&self, pos: Position, mcfg: &MctsConfig) -> Option<f64> {
        match mcfg.value_estimate {
            ValueEstimate::MeanReward => self.average(pos),
            ValueEstimate::InverseMeanSteps => self.mean_steps(pos).map(|m| mcfg.reward_scale / m),
        }
    }

    /// Loops run since the current root took over.
    pub fn root_loops(&self) -> u64 {
        self.root_loops
    }

    pub fn root(&self) -> Option<Position> {
        self.root
    }

    pub fn clear(&mut self) {
        self.visits.fill(0);
        self.rewards.fill(0.0);
        self.steps.fill(0);
        self.stamps.fill(0);
        self.stamp = 0;
        self.root = None;
        self.root_loops = 0;
    }

    fn credit(&mut self, pos: Position, tau: u64, reward: f64) -> bool {
        let i = self.offset(pos);
        if self.stamps[i] == self.stamp {
            return false;
        }
        self.stamps[i] = self.stamp;
        self.visits[i] += 1;
        self.rewards[i] += reward;
        self.steps[i] += tau;
        true
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoopOutcome {
    pub practice_target: Position,
    /// Selection path from the root, expanded cell last.
    pub path: Vec<Position>,
    pub rollout: WalkOutcome,
    pub total_steps: u64,
}

/// Picks uniformly among the indices whose score equals the maximum.
#[inline]
fn argmax_uniform<R: Rng + ?Sized>(scores: &[f64; 4], eligible: [bool; 4], rng: &mut R) -> Option<usize> {
    let mut best = f64::NEG_INFINITY;
    let mut ties = [0usize; 4];
    let mut k = 0;
    for i in 0..4 {
        if !eligible[i] {
            continue;
        }
        if scores[i] > best || k == 0 {
            best = scores[i];
            ties[0] = i;
            k = 1;
        } else if scores[i] == best {
            ties[k] = i;
            k += 1;
        }
    }
    match k {
        0 => None,
        1 => Some(ties[0]),
        _ => Some(ties[rng.random_range(0..k)]),
    }
}

/// Plays one selection / expansion / rollout / backpropagation loop from `root`.
pub fn run_loop<R: Rng + ?Sized>(
    root: Position,
    stats: &mut StatTable,
    dist: &TargetDistribution,
    cfg: &GridConfig,
    mcfg: &MctsConfig,
    rng: &mut R,
) -> LoopOutcome {
    if stats.root != Some(root) {
        stats.root = Some(root);
        stats.root_loops = 0;
    }
    let practice = dist.sample(cfg, rng);
    let depth_cap = mcfg.depth_cap as usize;
    let mut path = vec![root];
    let mut cur = root;

    while !detected(cur, practice, cfg) && path.len() - 1 < depth_cap {
        let neighbors = cfg.neighbors(cur);
        let counts = neighbors.map(|p| stats.visits(p));
        if counts.contains(&0) {
            let unvisited = counts.map(|n| n == 0);
            let pick = argmax_uniform(&[0.0; 4], unvisited, rng).expect("an unvisited neighbor");
            cur = neighbors[pick];
            path.push(cur);
            break;
        }
        // A root can have every neighbor visited while never having been on a path itself.
        let parent_n = stats.visits(cur).max(1);
        let scores: [f64; 4] = std::array::from_fn(|i| {
            let value = stats.value(neighbors[i], mcfg).unwrap_or(0.0);
            uct_score(value, counts[i], parent_n, mcfg.exploration)
        });
        let pick = argmax_uniform(&scores, [true; 4], rng).expect("four neighbors");
        cur = neighbors[pick];
        path.push(cur);
    }

    let out = rollout(cur, practice, &mcfg.rollout, cfg, rng);
    let total = (path.len() as u64 - 1) + out.steps;
    let scale = mcfg.reward_scale;
    stats.stamp += 1;
    for (i, &cell) in path.iter().enumerate() {
        let tau = if out.found {
            let tau = match mcfg.credit_mode {
                CreditMode::RemainingSteps => total - i as u64,
                CreditMode::TotalSteps => total,
            };
            tau.max(1)
        } else {
            mcfg.rollout.cap()
        };
        stats.credit(cell, tau, scale / tau as f64);
    }
    stats.root_loops += 1;

    LoopOutcome { practice_target: practice, path, rollout: out, total_steps: total }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decision {
    pub direction: Direction,
    pub loops: u64,
}

/// Runs the loop budget from `root` and returns the chosen move with the
/// number of loops played.
pub fn decide<R: Rng + ?Sized>(
    root: Position,
    stats: &mut StatTable,
    dist: &TargetDistribution,
    cfg: &GridConfig,
    mcfg: &MctsConfig,
    rng: &mut R,
) -> Decision {
    let mut loops = 0u64;
    match mcfg.budget {
        Budget::Loops(n) => {
            for _ in 0..n.max(MIN_LOOPS) {
                run_loop(root, stats, dist, cfg, mcfg, rng);
            }
            loops = n.max(MIN_LOOPS);
        }
        Budget::Time(limit) => {
            let started = Instant::now();
            while loops < MIN_LOOPS || started.elapsed() < limit {
                run_loop(root, stats, dist, cfg, mcfg, rng);
                loops += 1;
            }
        }
    }

    let neighbors = cfg.neighbors(root);
    let visited = neighbors.map(|p| stats.visits(p) > 0);
    let parent_n = stats.visits(root).max(1);
    let scores: [f64; 4] = std::array::from_fn(|i| match mcfg.final_move {
        FinalMove::AverageReward => stats.value(neighbors[i], mcfg).unwrap_or(f64::NEG_INFINITY),
        FinalMove::MaxVisits => stats.visits(neighbors[i]) as f64,
        FinalMove::ValuePerVisit => stats
            .value(neighbors[i], mcfg)
            .map_or(f64::NEG_INFINITY, |v| v / stats.visits(neighbors[i]) as f64),
        FinalMove::Uct => {
            let value = stats.value(neighbors[i], mcfg).unwrap_or(0.0);
            uct_score(value, stats.visits(neighbors[i]), parent_n, mcfg.exploration)
        }
    });
    let pick = argmax_uniform(&scores, visited, rng)
        // Only when every loop detected the practice target at the root.
        .unwrap_or_else(|| rng.random_range(0..4));
    Decision { direction: Direction::ALL[pick], loops }
}

/// Runs the configured budget from `root` and returns the best move.
pub fn select_move<R: Rng + ?Sized>(
    root: Position,
    stats: &mut StatTable,
    dist: &TargetDistribution,
    cfg: &GridConfig,
    mcfg: &MctsConfig,
    rng: &mut R,
) -> Direction {
    decide(root, stats, dist, cfg, mcfg, rng).direction
}

#[derive(Debug, Clone, PartialEq)]
pub struct GameOutcome {
    pub target: Position,
    pub steps: u64,
    pub optimal_steps: u32,
    /// The game cap ran out before detection.
    pub capped: bool,
    pub loops: u64,
    /// Every searcher position, start first.
    pub path: Vec<Position>,
}

/// Real-step cap of one game, `100 N^2`.
pub fn game_cap(cfg: &GridConfig) -> u64 {
    100 * u64::from(cfg.side()) * u64::from(cfg.side())
}

/// Samples the real target from `dist`, then plays the game.
pub fn search_game<R: Rng + ?Sized>(
    dist: &TargetDistribution,
    cfg: &GridConfig,
    mcfg: &MctsConfig,
    rng: &mut R,
) -> GameOutcome {
    let target = dist.sample(cfg, rng);
    play_game(target, dist, cfg, mcfg, rng)
}

/// Plays one game against a fixed real target, with `dist` as the searcher's prior.
pub fn play_game<R: Rng + ?Sized>(
    target: Position,
    dist: &TargetDistribution,
    cfg: &GridConfig,
    mcfg: &MctsConfig,
    rng: &mut R,
) -> GameOutcome {
    let cap = game_cap(cfg);
    let mut stats = StatTable::new(cfg.side());
    let mut pos = cfg.start();
    let mut path = vec![pos];
    let mut steps = 0u64;
    let mut loops = 0u64;
    let mut capped = false;
    while !detected(pos, target, cfg) {
        if steps == cap {
            capped = true;
            break;
        }
        if !mcfg.reuse_stats {
            stats.clear();
        }
        let decision = decide(pos, &mut stats, dist, cfg, mcfg, rng);
        loops += decision.loops;
        pos = step(pos, decision.direction, cfg);
        path.push(pos);
        steps += 1;
    }
    GameOutcome {
        target,
        steps,
        optimal_steps: torus_l1(cfg.start(), target, cfg.side()),
        capped,
        loops,
        path,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;

    fn rw(cfg: &GridConfig) -> RolloutPolicy {
        RolloutPolicy::random_walk(RolloutPolicy::default_cap(cfg.side())).unwrap()
    }

    #[test]
    fn uct_examples() {
        assert_eq!(uct_value(0, 0.0, 10, 1.0), f64::INFINITY);
        let v = uct_value(4, 2.0, 100, std::f64::consts::SQRT_2);
        let expected = 0.5 + std::f64::consts::SQRT_2 * (100f64.ln() / 4.0).sqrt();
        assert!((v - expected).abs() < 1e-12);
        assert!((v - 2.0174).abs() < 1e-4);
        assert_eq!(uct_value(5, 1.0, 50, 0.0), uct_value(10, 2.0, 7, 0.0));
    }

    #[test]
    fn practice_target_at_root() {
        let cfg = GridConfig::new(9, 0).unwrap();
        let root = Position::new(4, 4);
        let dist = TargetDistribution::Delta(root);
        let mcfg = MctsConfig::with_loops(10, rw(&cfg)).unwrap();
        let mut stats = StatTable::new(9);
        let out = run_loop(root, &mut stats, &dist, &cfg, &mcfg, &mut rng_from_seed(1));
        assert_eq!(out.path, vec![root]);
        assert_eq!(out.total_steps, 0);
        assert_eq!(stats.visits(root), 1);
        assert_eq!(stats.reward(root), 1.0);
    }

    #[test]
    fn first_four_loops_expand_each_neighbor() {
        let cfg = GridConfig::new(15, 0).unwrap();
        let root = Position::new(8, 8);
        let dist = TargetDistribution::Delta(Position::new(1, 1));
        let mcfg = MctsConfig::with_loops(4, rw(&cfg)).unwrap();
        for seed in 0..50 {
            let mut stats = StatTable::new(15);
            let mut rng = rng_from_seed(seed);
            let mut expanded = Vec::new();
            for _ in 0..4 {
                let out = run_loop(root, &mut stats, &dist, &cfg, &mcfg, &mut rng);
                assert_eq!(out.path.len(), 2);
                expanded.push(out.path[1]);
            }
            expanded.sort();
            let mut neighbors = cfg.neighbors(root).to_vec();
            neighbors.sort();
            assert_eq!(expanded, neighbors);
            assert_eq!(stats.visits(root), 4);
            assert_eq!(stats.root_loops(), 4);
        }
    }

    #[test]
    fn remaining_vs_total_credit() {
        let cfg = GridConfig::new(15, 0).unwrap();
        let root = Position::new(8, 8);
        let dist = TargetDistribution::Delta(Position::new(1, 1));
        for mode in [CreditMode::RemainingSteps, CreditMode::TotalSteps] {
            let mcfg = MctsConfig::with_loops(1, rw(&cfg)).unwrap().credit_mode(mode);
            let mut stats = StatTable::new(15);
            let out = run_loop(root, &mut stats, &dist, &cfg, &mcfg, &mut rng_from_seed(2));
            assert!(out.rollout.found);
            let child = out.path[1];
            let total = out.total_steps as f64;
            assert_eq!(stats.reward(root), 1.0 / total);
            let expected_child = match mode {
                CreditMode::RemainingSteps => 1.0 / (total - 1.0).max(1.0),
                CreditMode::TotalSteps => 1.0 / total,
            };
            assert_eq!(stats.reward(child), expected_child);
            assert_eq!(stats.mean_steps(root), Some(total));
            assert_eq!(stats.value(root, &mcfg), Some(1.0 / total));
        }
    }

    #[test]
    fn value_estimates_differ_on_uneven_steps() {
        // Two loops from the root with 1 and 3 steps: mean reward 2/3, inverse mean 1/2.
        let cfg = GridConfig::new(9, 0).unwrap();
        let root = Position::new(5, 5);
        let mut stats = StatTable::new(9);
        stats.stamp = 1;
        stats.credit(root, 1, 1.0);
        stats.stamp = 2;
        stats.credit(root, 3, 1.0 / 3.0);
        let inverse = MctsConfig::with_loops(1, rw(&cfg)).unwrap();
        let mean = inverse.clone().value_estimate(ValueEstimate::MeanReward);
        assert!((stats.value(root, &inverse).unwrap() - 0.5).abs() < 1e-12);
        assert!((stats.value(root, &mean).unwrap() - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(stats.value(Position::new(1, 1), &inverse), None);
    }

    #[test]
    fn failed_rollout_credit() {
        let cfg = GridConfig::new(30, 0).unwrap();
        let root = Position::new(1, 1);
        let dist = TargetDistribution::Delta(Position::new(15, 15));
        let policy = RolloutPolicy::random_walk(5).unwrap();
        let mcfg = MctsConfig::with_loops(1, policy).unwrap();
        let mut stats = StatTable::new(30);
        let out = run_loop(root, &mut stats, &dist, &cfg, &mcfg, &mut rng_from_seed(3));
        assert!(!out.rollout.found);
        assert_eq!(stats.reward(root), 0.2);
    }

    #[test]
    fn depth_cap_stops_selection() {
        let cfg = GridConfig::new(7, 0).unwrap();
        let root = Position::new(1, 1);
        let dist = TargetDistribution::Delta(Position::new(4, 4));
        let mcfg = MctsConfig::with_loops(1, rw(&cfg)).unwrap().depth_cap(2);
        let mut stats = StatTable::new(7);
        let mut rng = rng_from_seed(4);
        for _ in 0..500 {
            let out = run_loop(root, &mut stats, &dist, &cfg, &mcfg, &mut rng);
            assert!(out.path.len() <= 3);
        }
    }

    #[test]
    fn cells_on_a_cycle_are_credited_once() {
        let cfg = GridConfig::new(4, 0).unwrap();
        let root = Position::new(1, 1);
        let dist = TargetDistribution::Delta(Position::new(3, 3));
        let mcfg = MctsConfig::with_loops(1, rw(&cfg)).unwrap();
        let mut stats = StatTable::new(4);
        let mut rng = rng_from_seed(5);
        for k in 1..=300u64 {
            let before: Vec<f64> = cfg.cells().map(|p| stats.reward(p)).collect();
            run_loop(root, &mut stats, &dist, &cfg, &mcfg, &mut rng);
            assert_eq!(stats.visits(root), k);
            for (i, p) in cfg.cells().enumerate() {
                let gained = stats.reward(p) - before[i];
                assert!((0.0..=1.0 + 1e-12).contains(&gained));
                assert!(stats.reward(p) <= stats.visits(p) as f64 + 1e-9);
            }
        }
    }

    #[test]
    fn adjacent_delta_target_is_taken() {
        let cfg = GridConfig::new(11, 0).unwrap();
        let root = Position::new(5, 5);
        let dist = TargetDistribution::Delta(Position::new(5, 6));
        let mcfg = MctsConfig::with_loops(200, rw(&cfg)).unwrap().reuse_stats(false);
        let mut rng = rng_from_seed(6);
        let ups = (0..200)
            .filter(|_| {
                let mut stats = StatTable::new(11);
                select_move(root, &mut stats, &dist, &cfg, &mcfg, &mut rng) == Direction::Up
            })
            .count();
        assert!(ups as f64 / 200.0 >= 0.99, "{ups}");
    }

    #[test]
    fn game_on_target_is_free() {
        let cfg = GridConfig::new(8, 0).unwrap();
        let dist = TargetDistribution::Delta(cfg.start());
        let mcfg = MctsConfig::with_loops(10, rw(&cfg)).unwrap();
        let g = search_game(&dist, &cfg, &mcfg, &mut rng_from_seed(7));
        assert_eq!((g.steps, g.optimal_steps, g.capped), (0, 0, false));
        assert_eq!(g.path, vec![cfg.start()]);
    }

    #[test]
    fn tiny_budget_is_clamped() {
        let cfg = GridConfig::new(8, 0).unwrap();
        let dist = TargetDistribution::Delta(Position::new(4, 4));
        let mcfg = MctsConfig::with_loops(1, rw(&cfg)).unwrap();
        let mut stats = StatTable::new(8);
        let d = decide(cfg.start(), &mut stats, &dist, &cfg, &mcfg, &mut rng_from_seed(8));
        assert_eq!(d.loops, MIN_LOOPS);
        let timed = mcfg.clone().budget(Budget::Time(Duration::ZERO)).unwrap();
        let mut stats = StatTable::new(8);
        let d = decide(cfg.start(), &mut stats, &dist, &cfg, &timed, &mut rng_from_seed(8));
        assert_eq!(d.loops, MIN_LOOPS);
    }

    #[test]
    fn config_validation() {
        let cfg = GridConfig::new(8, 0).unwrap();
        assert!(MctsConfig::with_loops(0, rw(&cfg)).is_err());
        let m = MctsConfig::with_loops(5, rw(&cfg)).unwrap();
        assert!(m.clone().exploration(0.0).is_err());
        assert!(m.clone().exploration(f64::NAN).is_err());
        assert!(m.clone().reward_scale(-1.0).is_err());
        assert_eq!(m.get_depth_cap(), DEFAULT_DEPTH_CAP);
        assert_eq!(m.get_final_move(), FinalMove::ValuePerVisit);
        assert_eq!(m.get_value_estimate(), ValueEstimate::InverseMeanSteps);
        assert_eq!(m.label(), "MCTS-RW");
    }

    #[test]
    fn game_is_seed_deterministic() {
        let cfg = GridConfig::new(10, 1).unwrap();
        let dist = TargetDistribution::centered_gaussian(10, 2.0);
        let mcfg = MctsConfig::with_loops(50, rw(&cfg)).unwrap();
        let a = search_game(&dist, &cfg, &mcfg, &mut rng_from_seed(9));
        let b = search_game(&dist, &cfg, &mcfg, &mut rng_from_seed(9));
        assert_eq!(a, b);
    }
}
