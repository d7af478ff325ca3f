use thiserror::Error;

use crate::lattice::Position;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("grid side must be at least 2, got {0}")]
    InvalidGrid(u32),
    #[error("vision radius {radius} must be below half the grid side {side}")]
    InvalidVisionRadius { radius: u32, side: u32 },
    #[error("position {pos} lies outside the {side}x{side} grid")]
    PositionOutOfRange { pos: Position, side: u32 },
    #[error("gaussian sigma must be finite and non-negative, got {0}")]
    InvalidSigma(f64),
    #[error("gaussian mean ({0}, {1}) must be finite")]
    InvalidMean(f64, f64),
    #[error("levy exponent must lie in (1, 3], got {0}")]
    InvalidExponent(f64),
    #[error("levy maximum length must be at least 1")]
    InvalidMaxLength,
    #[error("step cap must be at least 1")]
    InvalidCap,
    #[error("exploration constant must be positive and finite, got {0}")]
    InvalidExploration(f64),
    #[error("loop budget must be at least 1")]
    InvalidLoops,
    #[error("reward scale must be positive and finite, got {0}")]
    InvalidRewardScale(f64),
    #[error("walk exhausted its cap of {cap} steps without detection")]
    CapExhausted { cap: u64 },
    #[error("summary needs at least 2 records, got {0}")]
    TooFewRecords(usize),
    #[error("trial count must be at least 1")]
    NoTrials,
}
