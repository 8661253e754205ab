//! Special functions on top of `libm`.

use libm::{exp, fabs, lgamma, log};

const EPS: f64 = 1e-15;
const MAX_ITER: usize = 10_000;
const TINY: f64 = 1e-300;

pub fn ln_gamma(x: f64) -> f64 {
    lgamma(x)
}

pub fn ln_beta(a: f64, b: f64) -> f64 {
    lgamma(a) + lgamma(b) - lgamma(a + b)
}

pub fn ln_factorial(k: f64) -> f64 {
    lgamma(k + 1.0)
}

/// `log C(n, k)` for real-valued counts.
pub fn ln_choose(n: f64, k: f64) -> f64 {
    lgamma(n + 1.0) - lgamma(k + 1.0) - lgamma(n - k + 1.0)
}

/// Numerically stable `log Σ exp(v)`. Returns `-inf` for an empty slice.
pub fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    let sum: f64 = values.iter().map(|v| exp(v - max)).sum();
    max + log(sum)
}

/// Regularized lower incomplete gamma `P(a, x)`.
pub fn gamma_p(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x.is_infinite() {
        return 1.0;
    }
    if x < a + 1.0 {
        gamma_p_series(a, x)
    } else {
        1.0 - gamma_q_fraction(a, x)
    }
}

/// Regularized upper incomplete gamma `Q(a, x) = 1 - P(a, x)`, accurate in the tail.
pub fn gamma_q(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    if x.is_infinite() {
        return 0.0;
    }
    if x < a + 1.0 {
        1.0 - gamma_p_series(a, x)
    } else {
        gamma_q_fraction(a, x)
    }
}

fn gamma_p_series(a: f64, x: f64) -> f64 {
    let mut denom = a;
    let mut term = 1.0 / a;
    let mut sum = term;
    for _ in 0..MAX_ITER {
        denom += 1.0;
        term *= x / denom;
        sum += term;
        if fabs(term) < fabs(sum) * EPS {
            break;
        }
    }
    (sum * exp(-x + a * log(x) - lgamma(a))).min(1.0)
}

// Modified Lentz evaluation of the continued fraction for Q(a, x).
fn gamma_q_fraction(a: f64, x: f64) -> f64 {
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if fabs(d) < TINY {
            d = TINY;
        }
        c = b + an / c;
        if fabs(c) < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if fabs(delta - 1.0) < EPS {
            break;
        }
    }
    (exp(-x + a * log(x) - lgamma(a)) * h).clamp(0.0, 1.0)
}

/// Chi-square cdf with `df` degrees of freedom; 0 for `x <= 0`.
pub fn chi2_cdf(df: u32, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    gamma_p(f64::from(df) / 2.0, x / 2.0)
}

/// Chi-square upper tail `Pr(X > x)`.
pub fn chi2_sf(df: u32, x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    gamma_q(f64::from(df) / 2.0, x / 2.0)
}

/// Standard normal cdf.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z / core::f64::consts::SQRT_2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::LN_2;

    #[test]
    fn chi2_one_df_matches_normal_tail() {
        // Pr(chi2_1 > x) = 2 Phi(-sqrt x)
        for &x in &[0.1, 1.0, 2.5, 10.0, 30.0] {
            let oracle = 2.0 * normal_cdf(-libm::sqrt(x));
            assert!((chi2_sf(1, x) - oracle).abs() < 1e-13, "x={x}");
            assert!((chi2_cdf(1, x) - (1.0 - oracle)).abs() < 1e-13);
        }
        assert!((chi2_cdf(1, 2.5) - 0.886_153_701_993_342).abs() < 1e-9);
    }

    #[test]
    fn chi2_two_df_is_exponential() {
        for &x in &[0.01, 0.5, 2.0 * LN_2, 3.0, 8.0, 40.0] {
            let oracle = 1.0 - libm::exp(-x / 2.0);
            assert!((chi2_cdf(2, x) - oracle).abs() < 1e-14, "x={x}");
        }
        assert!((chi2_cdf(2, 2.0 * LN_2) - 0.5).abs() < 1e-14);
    }

    #[test]
    fn chi2_nonpositive_is_zero() {
        for df in 1..6 {
            assert_eq!(chi2_cdf(df, 0.0), 0.0);
            assert_eq!(chi2_cdf(df, -3.0), 0.0);
        }
    }

    #[test]
    fn chi2_tail_at_ten() {
        // 2 Phi(-sqrt 10)
        assert!((chi2_sf(1, 10.0) - 0.001_565_402_258_002_549).abs() < 1e-15);
    }

    #[test]
    fn log_sum_exp_handles_extremes() {
        assert_eq!(log_sum_exp(&[]), f64::NEG_INFINITY);
        let v = log_sum_exp(&[1000.0, 1000.0]);
        assert!((v - (1000.0 + LN_2)).abs() < 1e-12);
        assert_eq!(log_sum_exp(&[f64::NEG_INFINITY, 0.0]), 0.0);
    }
}
