//! Reference computations that share no code with the crate under test.
#![allow(dead_code)]

use std::collections::VecDeque;

use nalgebra::{DMatrix, DVector};
use statrs::distribution::{ContinuousCDF, Normal};

/// Cells are `(x, y)` with 1-based coordinates, indexed `(y - 1) * n + (x - 1)`.
pub fn idx(n: u32, x: u32, y: u32) -> usize {
    ((y - 1) * n + (x - 1)) as usize
}

pub fn torus_neighbors(n: u32, x: u32, y: u32) -> [(u32, u32); 4] {
    let up = if y == n { 1 } else { y + 1 };
    let down = if y == 1 { n } else { y - 1 };
    let right = if x == n { 1 } else { x + 1 };
    let left = if x == 1 { n } else { x - 1 };
    [(x, up), (x, down), (right, y), (left, y)]
}

/// Shortest-path lengths from `(x0, y0)` to every cell of the torus graph.
pub fn bfs_distances(n: u32, x0: u32, y0: u32) -> Vec<u32> {
    let mut dist = vec![u32::MAX; (n * n) as usize];
    let mut queue = VecDeque::new();
    dist[idx(n, x0, y0)] = 0;
    queue.push_back((x0, y0));
    while let Some((x, y)) = queue.pop_front() {
        let d = dist[idx(n, x, y)];
        for (nx, ny) in torus_neighbors(n, x, y) {
            if dist[idx(n, nx, ny)] == u32::MAX {
                dist[idx(n, nx, ny)] = d + 1;
                queue.push_back((nx, ny));
            }
        }
    }
    dist
}

/// Expected number of simple-random-walk steps until the walker is within
/// graph distance `r` of `(tx, ty)`, for every start cell. Solves `(I - P) h = 1`
/// on the transient cells.
pub fn hitting_times(n: u32, tx: u32, ty: u32, r: u32) -> Vec<f64> {
    let dist = bfs_distances(n, tx, ty);
    let cells = (n * n) as usize;
    let transient: Vec<usize> = (0..cells).filter(|&i| dist[i] > r).collect();
    let mut slot = vec![usize::MAX; cells];
    for (k, &i) in transient.iter().enumerate() {
        slot[i] = k;
    }
    let m = transient.len();
    let mut a = DMatrix::<f64>::identity(m, m);
    for (k, &i) in transient.iter().enumerate() {
        let (x, y) = (i as u32 % n + 1, i as u32 / n + 1);
        for (nx, ny) in torus_neighbors(n, x, y) {
            let j = idx(n, nx, ny);
            if slot[j] != usize::MAX {
                a[(k, slot[j])] -= 0.25;
            }
        }
    }
    let h = a.lu().solve(&DVector::from_element(m, 1.0)).expect("nonsingular chain");
    (0..cells).map(|i| if slot[i] == usize::MAX { 0.0 } else { h[slot[i]] }).collect()
}

/// Probability that one coordinate lands on `k` (1-based) after drawing
/// `mean + sigma * Z`, rounding halves up and wrapping onto `1..=n`.
pub fn wrapped_rounded_normal_pmf(n: u32, mean: f64, sigma: f64, k: u32) -> f64 {
    let normal = Normal::new(mean, sigma).unwrap();
    let span = (12.0 * sigma / f64::from(n)).ceil() as i64 + 2;
    let mut p = 0.0;
    for wrap in -span..=span {
        // The value rounds to the integer j exactly on [j - 0.5, j + 0.5).
        let j = f64::from(k) + (wrap * i64::from(n)) as f64;
        p += normal.cdf(j + 0.5) - normal.cdf(j - 0.5);
    }
    p
}

/// Normalized truncated power law `l^-mu / H` on `1..=l_max`.
pub fn power_law_pmf(mu: f64, l_max: u32) -> Vec<f64> {
    let weights: Vec<f64> = (1..=l_max).map(|l| f64::from(l).powf(-mu)).collect();
    let total: f64 = weights.iter().sum();
    weights.iter().map(|w| w / total).collect()
}

/// Maximum-likelihood exponent of a truncated discrete power law on `1..=l_max`,
/// by golden-section search of the log-likelihood over `[lo, hi]`.
pub fn power_law_mle(samples: &[u32], l_max: u32, lo: f64, hi: f64) -> f64 {
    let n = samples.len() as f64;
    let sum_ln: f64 = samples.iter().map(|&l| f64::from(l).ln()).sum();
    let neg_ll = |mu: f64| {
        let h: f64 = (1..=l_max).map(|l| f64::from(l).powf(-mu)).sum();
        mu * sum_ln + n * h.ln()
    };
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    while b - a > 1e-9 {
        let c = b - ratio * (b - a);
        let d = a + ratio * (b - a);
        if neg_ll(c) < neg_ll(d) {
            b = d;
        } else {
            a = c;
        }
    }
    (a + b) / 2.0
}

pub fn total_variation(p: &[f64], q: &[f64]) -> f64 {
    p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>() / 2.0
}
