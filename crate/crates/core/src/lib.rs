//! Monte Carlo tree search (UCT) for a single stationary target hidden on an
//! `N x N` periodic lattice.
//!
//! The searcher starts at a fixed cell and moves one unit per turn. Before each
//! move it plays a budget of simulation loops against practice targets drawn
//! from the known target prior, rewarding cells by the inverse of the steps a
//! rollout needed to find the target. Baseline searchers (random walk, Lévy
//! flight, nearly self-avoiding walk) and a seeded experiment harness are
//! included for comparison.
//!
//! ```
//! use lattice_mcts::{
//!     lattice::GridConfig, mcts::{search_game, MctsConfig}, policy::RolloutPolicy,
//!     rng::rng_from_seed, target::TargetDistribution,
//! };
//!
//! let cfg = GridConfig::new(10, 1).unwrap();
//! let rollout = RolloutPolicy::random_walk(RolloutPolicy::default_cap(10)).unwrap();
//! let mcts = MctsConfig::with_loops(200, rollout).unwrap();
//! let game = search_game(&TargetDistribution::centered_gaussian(10, 0.0), &cfg, &mcts, &mut rng_from_seed(7));
//! assert!(!game.capped);
//! ```

pub mod error;
pub mod harness;
pub mod lattice;
pub mod mcts;
pub mod policy;
pub mod rng;
pub mod stats;
pub mod target;

pub use error::Error;
pub use lattice::{Direction, GridConfig, Position};
pub use mcts::{Budget, CreditMode, FinalMove, MctsConfig, StatTable, ValueEstimate};
pub use policy::{RolloutPolicy, Walker};
pub use target::TargetDistribution;
