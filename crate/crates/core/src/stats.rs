//! Small summary statistics used by the Monte Carlo routines.

use alloc::vec::Vec;
use libm::sqrt;

/// Arithmetic mean; exact when all values are equal.
pub fn mean(values: &[f64]) -> f64 {
    let Some(&first) = values.first() else {
        return f64::NAN;
    };
    if values.iter().all(|&v| v == first) {
        return first;
    }
    values.iter().sum::<f64>() / values.len() as f64
}

/// Unbiased sample variance; 0 for fewer than two values.
pub fn variance(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let m = mean(values);
    values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (values.len() - 1) as f64
}

pub fn std_dev(values: &[f64]) -> f64 {
    sqrt(variance(values))
}

/// Standard error of the sample mean.
pub fn std_error(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    sqrt(variance(values) / values.len() as f64)
}

/// Binomial standard error of a Monte Carlo proportion.
pub fn proportion_se(p: f64, count: usize) -> f64 {
    sqrt(p * (1.0 - p) / count as f64)
}

/// Linear-interpolation quantile (type 7) of unsorted values.
pub fn quantile(values: &[f64], q: f64) -> f64 {
    let mut sorted: Vec<f64> = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    quantile_sorted(&sorted, q)
}

pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    let h = (sorted.len() - 1) as f64 * q.clamp(0.0, 1.0);
    let lo = libm::floor(h) as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn iqr(values: &[f64]) -> f64 {
    let mut sorted: Vec<f64> = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    quantile_sorted(&sorted, 0.75) - quantile_sorted(&sorted, 0.25)
}

/// A Monte Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
}

impl Estimate {
    pub fn from_samples(values: &[f64]) -> Self {
        Self { value: mean(values), std_error: std_error(values) }
    }

    /// `|value - target| <= k * std_error`
    pub fn within(&self, target: f64, k: f64) -> bool {
        libm::fabs(self.value - target) <= k * self.std_error
    }
}
