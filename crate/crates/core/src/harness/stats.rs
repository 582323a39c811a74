use serde::Serialize;
use statrs::function::beta::inv_beta_reg;

use crate::ground::pairwise_sum;

/// Mean, standard error and range of a sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Summary {
    pub count: usize,
    pub mean: f64,
    /// Standard error of the mean (sample standard deviation over sqrt(count)).
    pub se: f64,
    pub min: f64,
    pub max: f64,
}

impl Summary {
    /// Summarises `values`; sums are pairwise, so the result depends only on
    /// the order of `values`.
    pub fn of(values: &[f64]) -> Self {
        let count = values.len();
        if count == 0 {
            return Self {
                count,
                mean: f64::NAN,
                se: f64::NAN,
                min: f64::NAN,
                max: f64::NAN,
            };
        }
        let mean = pairwise_sum(values) / count as f64;
        let se = if count > 1 {
            let sq: Vec<f64> = values.iter().map(|v| (v - mean) * (v - mean)).collect();
            (pairwise_sum(&sq) / (count - 1) as f64 / count as f64).sqrt()
        } else {
            0.0
        };
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Self {
            count,
            mean,
            se,
            min,
            max,
        }
    }
}

/// Exact (Clopper–Pearson) two-sided interval for a binomial proportion.
pub fn clopper_pearson(successes: u64, trials: u64, level: f64) -> (f64, f64) {
    assert!(successes <= trials && trials > 0);
    assert!(level > 0.0 && level < 1.0);
    let alpha = 1.0 - level;
    let (x, n) = (successes as f64, trials as f64);
    let lo = if successes == 0 {
        0.0
    } else {
        inv_beta_reg(x, n - x + 1.0, alpha / 2.0)
    };
    let hi = if successes == trials {
        1.0
    } else {
        inv_beta_reg(x + 1.0, n - x, 1.0 - alpha / 2.0)
    };
    (lo, hi)
}
