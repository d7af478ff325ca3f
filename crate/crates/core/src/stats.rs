//! Small statistics toolbox: moments, quantiles and the handful of hypothesis
//! tests the experiment checks rely on.

use statrs::distribution::{ChiSquared, ContinuousCDF, StudentsT};

pub fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Sample standard deviation (`n - 1` denominator).
pub fn sample_std(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return f64::NAN;
    }
    let m = mean(xs);
    let ss: f64 = xs.iter().map(|x| (x - m) * (x - m)).sum();
    (ss / (xs.len() - 1) as f64).sqrt()
}

/// Linear-interpolation quantile (Hyndman-Fan type 7) of unsorted data.
pub fn quantile(xs: &[f64], q: f64) -> f64 {
    let mut sorted = xs.to_vec();
    sorted.sort_by(f64::total_cmp);
    quantile_sorted(&sorted, q)
}

pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    let h = (sorted.len() - 1) as f64 * q.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestResult {
    pub statistic: f64,
    pub dof: f64,
    pub p_value: f64,
}

/// Pearson goodness of fit of `counts` against equal cell probabilities.
pub fn chi_square_uniform(counts: &[u64]) -> TestResult {
    let expected = vec![1.0 / counts.len() as f64; counts.len()];
    chi_square_gof(counts, &expected)
}

/// Pearson goodness of fit against the given cell probabilities.
pub fn chi_square_gof(counts: &[u64], probs: &[f64]) -> TestResult {
    assert_eq!(counts.len(), probs.len());
    let n: u64 = counts.iter().sum();
    let statistic: f64 = counts
        .iter()
        .zip(probs)
        .map(|(&c, &p)| {
            let e = p * n as f64;
            (c as f64 - e).powi(2) / e
        })
        .sum();
    let dof = (counts.len() - 1) as f64;
    TestResult { statistic, dof, p_value: chi_square_sf(statistic, dof) }
}

/// Two-sample chi-square test of homogeneity on a `2 x k` table. Columns empty
/// in both samples are dropped.
pub fn chi_square_homogeneity(a: &[u64], b: &[u64]) -> TestResult {
    assert_eq!(a.len(), b.len());
    let cols: Vec<(u64, u64)> =
        a.iter().zip(b).map(|(&x, &y)| (x, y)).filter(|&(x, y)| x + y > 0).collect();
    let na: u64 = cols.iter().map(|c| c.0).sum();
    let nb: u64 = cols.iter().map(|c| c.1).sum();
    let total = (na + nb) as f64;
    let mut statistic = 0.0;
    for &(x, y) in &cols {
        let col = (x + y) as f64;
        let ea = col * na as f64 / total;
        let eb = col * nb as f64 / total;
        statistic += (x as f64 - ea).powi(2) / ea + (y as f64 - eb).powi(2) / eb;
    }
    let dof = cols.len().saturating_sub(1) as f64;
    TestResult { statistic, dof, p_value: chi_square_sf(statistic, dof) }
}

fn chi_square_sf(statistic: f64, dof: f64) -> f64 {
    if dof <= 0.0 {
        return 1.0;
    }
    1.0 - ChiSquared::new(dof).expect("positive dof").cdf(statistic)
}

/// One-sided paired t-test of `H1: mean(a - b) < 0`.
pub fn paired_t_test_less(a: &[f64], b: &[f64]) -> TestResult {
    assert_eq!(a.len(), b.len());
    let diffs: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    one_sample_t_less(&diffs)
}

/// One-sided Welch t-test of `H1: mean(a) < mean(b)`.
pub fn welch_t_test_less(a: &[f64], b: &[f64]) -> TestResult {
    let (ma, mb) = (mean(a), mean(b));
    let (va, vb) = (sample_std(a).powi(2) / a.len() as f64, sample_std(b).powi(2) / b.len() as f64);
    let se = (va + vb).sqrt();
    let statistic = (ma - mb) / se;
    let dof = (va + vb).powi(2)
        / (va * va / (a.len() - 1) as f64 + vb * vb / (b.len() - 1) as f64);
    TestResult { statistic, dof, p_value: t_cdf(statistic, dof) }
}

fn one_sample_t_less(xs: &[f64]) -> TestResult {
    let n = xs.len() as f64;
    let sd = sample_std(xs);
    let dof = n - 1.0;
    let statistic = mean(xs) / (sd / n.sqrt());
    let p_value = if sd == 0.0 {
        if mean(xs) < 0.0 {
            0.0
        } else {
            1.0
        }
    } else {
        t_cdf(statistic, dof)
    };
    TestResult { statistic, dof, p_value }
}

fn t_cdf(t: f64, dof: f64) -> f64 {
    StudentsT::new(0.0, 1.0, dof).expect("valid t distribution").cdf(t)
}

/// Ranks starting at 1, ties sharing their average rank.
pub fn ranks(xs: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&i, &j| xs[i].total_cmp(&xs[j]));
    let mut out = vec![0.0; xs.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && xs[order[j + 1]] == xs[order[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            out[k] = avg;
        }
        i = j + 1;
    }
    out
}

fn pearson(xs: &[f64], ys: &[f64]) -> f64 {
    let (mx, my) = (mean(xs), mean(ys));
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    sxy / (sxx * syy).sqrt()
}

/// Spearman rank correlation (Pearson correlation of average ranks).
pub fn spearman(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    pearson(&ranks(xs), &ranks(ys))
}
