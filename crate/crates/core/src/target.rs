//! Target placement: a known point, a wrapped and rounded Gaussian, or a uniform
//! cell. The same distribution places the real target and every practice target.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::lattice::{GridConfig, Position};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum TargetDistribution {
    /// Fully known target.
    Delta(Position),
    /// Independent normal components, rounded to the nearest cell and wrapped.
    Gaussian { mean_x: f64, mean_y: f64, sigma: f64 },
    /// Every cell equally likely.
    Uniform,
}

impl TargetDistribution {
    /// Gaussian centered at `(N/2, N/2)`.
    pub fn centered_gaussian(side: u32, sigma: f64) -> Self {
        let mean = f64::from(side) / 2.0;
        TargetDistribution::Gaussian { mean_x: mean, mean_y: mean, sigma }
    }

    pub fn validate(&self, cfg: &GridConfig) -> Result<(), Error> {
        match *self {
            TargetDistribution::Delta(pos) if !cfg.contains(pos) => {
                Err(Error::PositionOutOfRange { pos, side: cfg.side() })
            }
            TargetDistribution::Gaussian { sigma, .. } if !(sigma.is_finite() && sigma >= 0.0) => {
                Err(Error::InvalidSigma(sigma))
            }
            TargetDistribution::Gaussian { mean_x, mean_y, .. }
                if !(mean_x.is_finite() && mean_y.is_finite()) =>
            {
                Err(Error::InvalidMean(mean_x, mean_y))
            }
            _ => Ok(()),
        }
    }

    /// Spread of the distribution: 0 for a delta, infinity for uniform.
    pub fn sigma(&self) -> f64 {
        match *self {
            TargetDistribution::Delta(_) => 0.0,
            TargetDistribution::Gaussian { sigma, .. } => sigma,
            TargetDistribution::Uniform => f64::INFINITY,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            TargetDistribution::Delta(_) => "delta",
            TargetDistribution::Gaussian { .. } => "gaussian",
            TargetDistribution::Uniform => "uniform",
        }
    }

    #[inline]
    pub fn sample<R: Rng + ?Sized>(&self, cfg: &GridConfig, rng: &mut R) -> Position {
        sample_target(self, cfg, rng)
    }
}

/// Nearest integer with halves rounded up, then wrapped into `[1, N]`.
fn round_wrap(v: f64, side: u32) -> u32 {
    let nearest = (v + 0.5).floor() as i64;
    ((nearest - 1).rem_euclid(i64::from(side)) + 1) as u32
}

/// Draws one target cell.
///
/// A zero-sigma Gaussian consumes no randomness, so it replays exactly like the
/// delta at its rounded mean.
pub fn sample_target<R: Rng + ?Sized>(
    dist: &TargetDistribution,
    cfg: &GridConfig,
    rng: &mut R,
) -> Position {
    let side = cfg.side();
    match *dist {
        TargetDistribution::Delta(pos) => pos,
        TargetDistribution::Gaussian { mean_x, mean_y, sigma: 0.0 } => {
            Position::new(round_wrap(mean_x, side), round_wrap(mean_y, side))
        }
        TargetDistribution::Gaussian { mean_x, mean_y, sigma } => {
            let zx: f64 = rng.sample(StandardNormal);
            let zy: f64 = rng.sample(StandardNormal);
            Position::new(round_wrap(mean_x + sigma * zx, side), round_wrap(mean_y + sigma * zy, side))
        }
        TargetDistribution::Uniform => {
            Position::new(rng.random_range(1..=side), rng.random_range(1..=side))
        }
    }
}

/// Per-cell target counts over the `N x N` lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Histogram {
    side: u32,
    counts: Vec<u64>,
}

impl Histogram {
    pub fn new(side: u32) -> Self {
        Self { side, counts: vec![0; (side as usize) * (side as usize)] }
    }

    pub fn side(&self) -> u32 {
        self.side
    }

    pub fn get(&self, pos: Position) -> u64 {
        self.counts[self.offset(pos)]
    }

    pub fn add(&mut self, pos: Position) {
        let i = self.offset(pos);
        self.counts[i] += 1;
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Counts in row-major order, `y` outer.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Row `y` (1-based), ordered by `x`.
    pub fn row(&self, y: u32) -> &[u64] {
        let n = self.side as usize;
        let start = (y as usize - 1) * n;
        &self.counts[start..start + n]
    }

    fn offset(&self, pos: Position) -> usize {
        (pos.y as usize - 1) * self.side as usize + (pos.x as usize - 1)
    }
}

pub fn histogram<R: Rng + ?Sized>(
    dist: &TargetDistribution,
    cfg: &GridConfig,
    draws: u64,
    rng: &mut R,
) -> Histogram {
    let mut hist = Histogram::new(cfg.side());
    for _ in 0..draws {
        hist.add(sample_target(dist, cfg, rng));
    }
    hist
}
