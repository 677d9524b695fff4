//! Small statistics helpers for the experiment harness.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Standard error of the mean (sample standard deviation / sqrt n).
pub fn std_err(xs: &[f64]) -> f64 {
    let n = xs.len();
    if n < 2 {
        return 0.0;
    }
    let m = mean(xs);
    let var = xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1) as f64;
    (var / n as f64).sqrt()
}

/// Least-squares line `y = slope * x + intercept`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mx = mean(xs);
    let my = mean(ys);
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 || n < 2.0 {
        return (0.0, my);
    }
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

pub fn sum_squared_residuals(xs: &[f64], ys: &[f64], slope: f64, intercept: f64) -> f64 {
    xs.iter()
        .zip(ys)
        .map(|(x, y)| {
            let e = y - (slope * x + intercept);
            e * e
        })
        .sum()
}

/// Slope of the log-log regression of `ys` on `ts`.
pub fn loglog_slope(ts: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = ts.iter().map(|t| t.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.max(1e-9).ln()).collect();
    linear_fit(&lx, &ly).0
}

/// Percentile confidence interval for the log-log slope, by resampling the
/// per-horizon trial counts with replacement.
pub fn bootstrap_slope_ci(
    ts: &[f64],
    per_t_counts: &[Vec<u64>],
    resamples: usize,
    seed: u64,
) -> (f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut slopes = Vec::with_capacity(resamples);
    for _ in 0..resamples {
        let means: Vec<f64> = per_t_counts
            .iter()
            .map(|counts| {
                let k = counts.len();
                let total: u64 = (0..k).map(|_| counts[rng.gen_range(0..k)]).sum();
                total as f64 / k as f64
            })
            .collect();
        slopes.push(loglog_slope(ts, &means));
    }
    slopes.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let lo = slopes[(resamples as f64 * 0.025) as usize];
    let hi = slopes[((resamples as f64 * 0.975) as usize).min(resamples - 1)];
    (lo, hi)
}
