mod common;

use std::time::Duration;

use lattice_mcts::lattice::{best_directions, step, Direction, GridConfig, Position};
use lattice_mcts::mcts::{decide, run_loop, search_game, Budget, MctsConfig, StatTable};
use lattice_mcts::policy::RolloutPolicy;
use lattice_mcts::rng::rng_from_seed;
use lattice_mcts::stats::{chi_square_homogeneity, paired_t_test_less};
use lattice_mcts::target::TargetDistribution;

fn rw(side: u32) -> RolloutPolicy {
    RolloutPolicy::random_walk(RolloutPolicy::default_cap(side)).unwrap()
}

#[test]
fn forced_rollout_average_converges_to_inverse_hitting_time() {
    let n = 5;
    let cfg = GridConfig::new(n, 0).unwrap();
    let dist = TargetDistribution::Delta(Position::new(3, 3));
    let exact = common::hitting_times(n, 3, 3, 0);
    // Depth 0 forces every loop straight into a rollout from the cell itself.
    let mcfg = MctsConfig::with_loops(1, rw(n)).unwrap().depth_cap(0);
    let mut rng = rng_from_seed(21);
    for cell in [Position::new(1, 1), Position::new(3, 4), Position::new(5, 2)] {
        let mut stats = StatTable::new(n);
        for _ in 0..100_000 {
            run_loop(cell, &mut stats, &dist, &cfg, &mcfg, &mut rng);
        }
        let expected = 1.0 / exact[common::idx(n, cell.x, cell.y)];
        let got = stats.value(cell, &mcfg).unwrap();
        assert!((got - expected).abs() / expected < 0.03, "{cell}: {got} vs {expected}");
        assert_eq!(stats.visits(cell), 100_000);
    }
}

#[test]
fn distance_decreasing_neighbors_earn_more() {
    let n = 11;
    let cfg = GridConfig::new(n, 0).unwrap();
    let target = Position::new(4, 3);
    let dist = TargetDistribution::Delta(target);
    let h = common::hitting_times(n, 4, 3, 0);
    let root = cfg.start();
    let closer = step(root, Direction::Up, &cfg);
    let farther = step(root, Direction::Down, &cfg);
    assert!(h[common::idx(n, closer.x, closer.y)] < h[common::idx(n, farther.x, farther.y)]);

    let mcfg = MctsConfig::with_loops(10_000, rw(n)).unwrap();
    let mut rng = rng_from_seed(22);
    let (mut near, mut far) = (Vec::new(), Vec::new());
    for _ in 0..20 {
        let mut stats = StatTable::new(n);
        decide(root, &mut stats, &dist, &cfg, &mcfg, &mut rng);
        near.push(stats.value(closer, &mcfg).unwrap());
        far.push(stats.value(farther, &mcfg).unwrap());
    }
    let test = paired_t_test_less(&far, &near);
    assert!(test.p_value < 0.01, "{test:?}");
}

#[test]
fn scaling_rewards_and_exploration_together_changes_nothing() {
    let n = 12;
    let cfg = GridConfig::new(n, 1).unwrap();
    let base = MctsConfig::with_loops(60, rw(n)).unwrap();
    for dist in [TargetDistribution::Delta(Position::new(8, 5)), TargetDistribution::centered_gaussian(n, 3.0)] {
        for k in [0.25, 2.0, 8.0] {
            let scaled = base
                .clone()
                .reward_scale(k)
                .unwrap()
                .exploration(k * base.get_exploration())
                .unwrap();
            for seed in 0..3 {
                let a = search_game(&dist, &cfg, &base, &mut rng_from_seed(seed));
                let b = search_game(&dist, &cfg, &scaled, &mut rng_from_seed(seed));
                assert_eq!(a, b);
            }
        }
    }
}

fn first_moves(mcfg: &MctsConfig, cfg: &GridConfig, seed: u64) -> [u64; 4] {
    let mut counts = [0u64; 4];
    let mut rng = rng_from_seed(seed);
    for _ in 0..400 {
        let mut stats = StatTable::new(cfg.side());
        let d = decide(cfg.start(), &mut stats, &TargetDistribution::Uniform, cfg, mcfg, &mut rng);
        counts[d.direction.index()] += 1;
    }
    counts
}

#[test]
fn time_budget_behaves_like_loops() {
    let n = 21;
    let cfg = GridConfig::new(n, 1).unwrap();
    let loops = MctsConfig::with_loops(40, rw(n)).unwrap();
    let timed = loops.clone().budget(Budget::Time(Duration::from_millis(1))).unwrap();
    let mut stats = StatTable::new(n);
    let d = decide(cfg.start(), &mut stats, &TargetDistribution::Uniform, &cfg, &timed, &mut rng_from_seed(23));
    assert!(d.loops >= 40, "only {} loops in the time budget", d.loops);
    let a = first_moves(&loops, &cfg, 24);
    let b = first_moves(&timed, &cfg, 25);
    assert!(chi_square_homogeneity(&a, &b).p_value > 0.01, "{a:?} vs {b:?}");
}

#[test]
fn previous_root_is_a_heavily_visited_neighbor() {
    let n = 15;
    let cfg = GridConfig::new(n, 1).unwrap();
    let mcfg = MctsConfig::with_loops(100, rw(n)).unwrap();
    let mut rng = rng_from_seed(26);
    let mut stats = StatTable::new(n);
    let root = cfg.start();
    let d = decide(root, &mut stats, &TargetDistribution::Uniform, &cfg, &mcfg, &mut rng);
    let next = step(root, d.direction, &cfg);
    decide(next, &mut stats, &TargetDistribution::Uniform, &cfg, &mcfg, &mut rng);
    assert!(stats.visits(root) >= 100);
    for p in cfg.neighbors(next).into_iter().filter(|&p| p != root) {
        assert!(stats.visits(p) < stats.visits(root));
    }
    // Reuse disabled: the table only reflects the latest decision.
    let fresh = mcfg.clone().reuse_stats(false);
    let g = search_game(&TargetDistribution::Uniform, &cfg, &fresh, &mut rng_from_seed(27));
    assert!(g.steps >= u64::from(g.optimal_steps).saturating_sub(1));
}

#[test]
fn delta_games_head_straight_for_the_target() {
    let n = 15;
    let cfg = GridConfig::new(n, 0).unwrap();
    let target = Position::new(6, 9);
    let mcfg = MctsConfig::with_loops(2_000, rw(n)).unwrap();
    let g = search_game(&TargetDistribution::Delta(target), &cfg, &mcfg, &mut rng_from_seed(28));
    assert!(!g.capped);
    assert!(g.steps <= u64::from(g.optimal_steps) + 4, "{} vs {}", g.steps, g.optimal_steps);
    let first = Direction::ALL
        .into_iter()
        .find(|&d| step(cfg.start(), d, &cfg) == g.path[1])
        .unwrap();
    assert!(best_directions(cfg.start(), target, &cfg).contains(&first));
}
