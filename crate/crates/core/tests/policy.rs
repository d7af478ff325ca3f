mod common;

use lattice_mcts::lattice::{torus_l1, GridConfig, Position};
use lattice_mcts::policy::{baseline_search, levy_length, rollout, trace, LevyLaw, RolloutPolicy};
use lattice_mcts::rng::rng_from_seed;

#[test]
fn random_walk_hitting_times_with_vision() {
    let n = 7;
    let cfg = GridConfig::new(n, 1).unwrap();
    let target = Position::new(4, 4);
    let exact = common::hitting_times(n, 4, 4, 1);
    let policy = RolloutPolicy::random_walk(RolloutPolicy::default_cap(n)).unwrap();
    let mut rng = rng_from_seed(11);
    for start in [Position::new(1, 1), Position::new(4, 1), Position::new(6, 4), Position::new(2, 3)] {
        let reps = 20_000;
        let total: u64 = (0..reps).map(|_| rollout(start, target, &policy, &cfg, &mut rng).steps).sum();
        let mean = total as f64 / reps as f64;
        let h = exact[common::idx(n, start.x, start.y)];
        assert!((mean - h).abs() / h < 0.03, "start {start}: {mean} vs {h}");
    }
}

#[test]
fn exact_hitting_time_grows_with_distance() {
    let n = 11;
    let h = common::hitting_times(n, 6, 6, 0);
    // Along a row through the target, two extra steps of distance always cost more.
    for d in 0..=3u32 {
        let near = h[common::idx(n, 6 + d, 6)];
        let far = h[common::idx(n, 6 + d + 2, 6)];
        assert!(near < far, "d={d}: {near} !< {far}");
    }
}

#[test]
fn levy_law_matches_the_normalized_power_law() {
    for mu in [1.5, 2.0, 2.5, 3.0] {
        for l_max in [1u32, 4, 40] {
            let law = LevyLaw::new(mu, l_max).unwrap();
            let exact = common::power_law_pmf(mu, l_max);
            for l in 1..=l_max {
                assert!((law.pmf(l) - exact[l as usize - 1]).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn levy_draws_follow_the_law() {
    let (mu, l_max) = (2.5, 12);
    let mut rng = rng_from_seed(12);
    let mut counts = vec![0u64; l_max as usize];
    let draws = 200_000;
    for _ in 0..draws {
        counts[levy_length(mu, l_max, &mut rng).unwrap() as usize - 1] += 1;
    }
    let empirical: Vec<f64> = counts.iter().map(|&c| c as f64 / draws as f64).collect();
    assert!(common::total_variation(&empirical, &common::power_law_pmf(mu, l_max)) < 0.01);
}

#[test]
fn levy_paths_are_contiguous_and_costed() {
    let n = 15;
    let cfg = GridConfig::new(n, 0).unwrap();
    let target = Position::new(9, 12);
    for (unit, mid) in [(false, true), (false, false), (true, true), (true, false)] {
        let policy = RolloutPolicy::levy(2.0, n, 20_000).unwrap().with_levy_costs(unit, mid);
        let mut rng = rng_from_seed(13);
        for _ in 0..200 {
            let (out, path) = trace(Position::new(1, 1), target, &policy, &cfg, &mut rng);
            for pair in path.windows(2) {
                assert_eq!(torus_l1(pair[0], pair[1], n), 1);
            }
            if !unit {
                assert_eq!(out.steps as usize, path.len() - 1);
            } else {
                assert!((out.steps as usize) < path.len());
            }
            if out.found {
                let last = *path.last().unwrap();
                assert_eq!(last, target);
                if mid {
                    assert_eq!(path.iter().filter(|&&p| p == target).count(), 1);
                }
            }
        }
    }
}

#[test]
fn nsarw_steps_to_a_least_visited_neighbor() {
    let n = 9;
    let cfg = GridConfig::new(n, 0).unwrap();
    let policy = RolloutPolicy::nsarw(5_000).unwrap();
    let mut rng = rng_from_seed(14);
    for _ in 0..50 {
        let (_, path) = trace(Position::new(1, 1), Position::new(5, 7), &policy, &cfg, &mut rng);
        let mut seen = vec![0u32; (n * n) as usize];
        seen[common::idx(n, 1, 1)] = 1;
        for pair in path.windows(2) {
            let (from, to) = (pair[0], pair[1]);
            let least = common::torus_neighbors(n, from.x, from.y)
                .iter()
                .map(|&(x, y)| seen[common::idx(n, x, y)])
                .min()
                .unwrap();
            assert_eq!(seen[common::idx(n, to.x, to.y)], least);
            seen[common::idx(n, to.x, to.y)] += 1;
        }
    }
}

#[test]
fn baselines_never_beat_the_metric() {
    let cfg = GridConfig::new(12, 0).unwrap();
    let target = Position::new(7, 9);
    let optimal = u64::from(torus_l1(cfg.start(), target, 12));
    let mut rng = rng_from_seed(15);
    for policy in [
        RolloutPolicy::random_walk(1).unwrap(),
        RolloutPolicy::levy(2.0, 12, 1).unwrap(),
        RolloutPolicy::nsarw(1).unwrap(),
    ] {
        for _ in 0..50 {
            // The policy's own cap does not bound a baseline search.
            assert!(baseline_search(&policy, target, &cfg, &mut rng).unwrap() >= optimal);
        }
    }
}
