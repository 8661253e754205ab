//! Improper priors made meaningful through training samples.
//!
//! An improper prior `π` is first updated by a training subset `x⁽ˡ⁾` of the
//! data; if that intermediate posterior is proper it acts as the prior for
//! the remaining observations. For the conjugate families the final
//! hyperparameters do not depend on which subset was used.
//!
//! Minimal training samples per family, for `π ∝ θ^e` or `∝ (p(1-p))^e`:
//!
//! * Poisson: `e + 1 + Σx > 0`, so one positive count suffices for `1/λ`.
//! * Binomial: `e + 1 + Σx > 0` and `e + 1 + Σ(m - x) > 0`; under the Haldane
//!   prior one observation strictly between 0 and `m` suffices.
//! * Gaussian with a flat prior: any single observation.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use libm::{exp, sqrt};

use crate::math::{ln_gamma, normal_cdf};
use crate::model::{check_pairing, formal_update};
use crate::{DataSet, Error, Family, PriorSpec, Result};

/// Partition of observation indices into a training sample and the remainder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrainingSplit {
    training: Vec<usize>,
    remainder: Vec<usize>,
}

impl TrainingSplit {
    /// Splits `0..n` with `training` as the training sample.
    ///
    /// The training sample may be the whole data set, leaving an empty
    /// remainder; that is how the formal single-stage update is expressed.
    pub fn new(mut training: Vec<usize>, n: usize) -> Result<Self> {
        training.sort_unstable();
        training.dedup();
        if training.is_empty() {
            return Err(Error::InvalidArgument("training sample must be nonempty".into()));
        }
        if let Some(&bad) = training.iter().find(|&&i| i >= n) {
            return Err(Error::InvalidArgument(format!("training index {bad} out of range for {n} observations")));
        }
        let remainder = (0..n).filter(|i| training.binary_search(i).is_err()).collect();
        Ok(Self { training, remainder })
    }

    pub fn singleton(index: usize, n: usize) -> Result<Self> {
        Self::new(alloc::vec![index], n)
    }

    /// All singleton splits, left to right.
    pub fn singletons(n: usize) -> Vec<Self> {
        (0..n).map(|i| Self::singleton(i, n).expect("index in range")).collect()
    }

    pub fn training(&self) -> &[usize] {
        &self.training
    }

    pub fn remainder(&self) -> &[usize] {
        &self.remainder
    }

    fn len(&self) -> usize {
        self.training.len() + self.remainder.len()
    }
}

/// Two-stage update: prior by the training sample, then by the remainder.
pub fn training_posterior(prior: PriorSpec, family: Family, data: &DataSet, split: &TrainingSplit) -> Result<PriorSpec> {
    if split.len() != data.len() {
        return Err(Error::InvalidArgument(format!("split covers {} observations, data has {}", split.len(), data.len())));
    }
    let training = data.subset(split.training())?;
    let intermediate = formal_update(family, prior, &training)?;
    if !intermediate.is_proper() {
        return Err(Error::ImproperIntermediate(format!(
            "training sample {:?} leaves {intermediate} not integrable",
            split.training()
        )));
    }
    formal_update(family, intermediate, &data.subset(split.remainder())?)
}

fn hyperparameters(p: &PriorSpec) -> [f64; 2] {
    match *p {
        PriorSpec::Gamma { shape, rate } => [shape, rate],
        PriorSpec::Beta { a, b } => [a, b],
        PriorSpec::Gaussian { mean, variance } => [mean, variance],
        PriorSpec::PointMass { value } => [value, 0.0],
        PriorSpec::ImproperPower { exponent } => [exponent, 0.0],
    }
}

/// Largest absolute hyperparameter difference between the posteriors of the
/// given splits (singletons when `splits` is `None`). A single split gives 0.
pub fn training_invariance_check(
    prior: PriorSpec,
    family: Family,
    data: &DataSet,
    splits: Option<&[TrainingSplit]>,
) -> Result<f64> {
    let default;
    let splits = match splits {
        Some(s) => s,
        None => {
            default = TrainingSplit::singletons(data.len());
            &default
        }
    };
    let posteriors = splits
        .iter()
        .map(|s| training_posterior(prior, family, data, s).map(|p| hyperparameters(&p)))
        .collect::<Result<Vec<_>>>()?;
    let Some(first) = posteriors.first() else {
        return Err(Error::InvalidArgument("no training splits".into()));
    };
    Ok(posteriors
        .iter()
        .flat_map(|h| h.iter().zip(first).map(|(a, b)| (a - b).abs()))
        .fold(0.0, f64::max))
}

/// Partial sums of the unnormalized prior predictive over growing data truncations.
#[derive(Debug, Clone, PartialEq)]
pub struct PredictiveMassReport {
    pub prior: PriorSpec,
    pub family: Family,
    pub truncations: Vec<u64>,
    pub partial_sums: Vec<f64>,
}

/// `∫ f(x|θ) π(θ) dθ` accumulated over a single observation `x` in a truncated data space.
///
/// Poisson sums over `x ∈ {1,…,K}`, binomial over `x ∈ {0,…,min(K,m)}` and
/// gaussian integrates `x` over `[-K, K]`. Under an improper prior the sums
/// grow without bound (or are infinite term by term); under a proper prior
/// they converge.
pub fn no_joint_distribution_demo(prior: PriorSpec, family: Family, truncations: &[u64]) -> Result<PredictiveMassReport> {
    prior.validate()?;
    family.validate()?;
    check_pairing(family, prior)?;
    if truncations.is_empty() || truncations[0] == 0 || truncations.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(format!("truncations {truncations:?} must be positive and strictly increasing")));
    }
    let term = |x: f64| predictive_term(prior, family, x);
    let partial_sums = match family {
        Family::Gaussian { variance } => truncations.iter().map(|&k| gaussian_mass(prior, variance, k as f64)).collect(),
        Family::Poisson | Family::Binomial { .. } => {
            let (start, cap) = match family {
                Family::Binomial { trials } => (0, u64::from(trials)),
                _ => (1, u64::MAX),
            };
            let mut sums = Vec::with_capacity(truncations.len());
            let mut total = 0.0;
            let mut x = start;
            for &k in truncations {
                while x <= k.min(cap) {
                    total += term(x as f64);
                    x += 1;
                }
                sums.push(total);
            }
            sums
        }
    };
    Ok(PredictiveMassReport { prior, family, truncations: truncations.to_vec(), partial_sums })
}

fn predictive_term(prior: PriorSpec, family: Family, x: f64) -> f64 {
    let data = DataSet::new(alloc::vec![x]).expect("finite");
    let post = match formal_update(family, prior, &data) {
        Ok(p) => p,
        Err(_) => return f64::NAN,
    };
    if !post.is_proper() {
        return f64::INFINITY;
    }
    match (family, prior, post) {
        (_, PriorSpec::PointMass { value }, _) => family.distribution(value).map_or(0.0, |d| exp(d.ln_prob(x))),
        (Family::Poisson, _, PriorSpec::Gamma { shape, rate }) => {
            // ∫ e^{-λ} λ^x / x! · c λ^{α-1} e^{-βλ} dλ with α = shape - x, β = rate - 1
            let (alpha, beta) = (shape - x, rate - 1.0);
            let ln_norm = if prior.is_proper() { alpha * libm::log(beta) - ln_gamma(alpha) } else { 0.0 };
            exp(ln_norm + ln_gamma(shape) - shape * libm::log(rate) - ln_gamma(x + 1.0))
        }
        (Family::Binomial { trials }, _, PriorSpec::Beta { a, b }) => {
            let m = f64::from(trials);
            let (a0, b0) = (a - x, b - (m - x));
            let ln_norm = if prior.is_proper() { -crate::math::ln_beta(a0, b0) } else { 0.0 };
            exp(ln_norm + crate::math::ln_choose(m, x) + crate::math::ln_beta(a, b))
        }
        _ => f64::NAN,
    }
}

fn gaussian_mass(prior: PriorSpec, variance: f64, k: f64) -> f64 {
    match prior {
        // ∫∫_{|x|≤K} N(x|θ,σ²) dθ dx = 2K
        PriorSpec::ImproperPower { .. } => 2.0 * k,
        PriorSpec::Gaussian { mean, variance: tau2 } => {
            let s = sqrt(variance + tau2);
            normal_cdf((k - mean) / s) - normal_cdf((-k - mean) / s)
        }
        PriorSpec::PointMass { value } => {
            let s = sqrt(variance);
            normal_cdf((k - value) / s) - normal_cdf((-k - value) / s)
        }
        _ => f64::NAN,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProprietyReport {
    pub proper: bool,
    pub reason: String,
}

/// Whether the formal posterior `π(θ) f(x|θ)` is integrable.
pub fn propriety_check(prior: PriorSpec, family: Family, data: &DataSet) -> Result<ProprietyReport> {
    if prior.is_proper() {
        check_pairing(family, prior)?;
        return Ok(ProprietyReport { proper: true, reason: format!("prior {prior} is proper") });
    }
    let post = formal_update(family, prior, data)?;
    Ok(if post.is_proper() {
        ProprietyReport { proper: true, reason: format!("posterior {post} is proper") }
    } else {
        ProprietyReport { proper: false, reason: format!("posterior {post} not integrable") }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    const INV_LAMBDA: PriorSpec = PriorSpec::ImproperPower { exponent: -1.0 };
    const HALDANE: PriorSpec = PriorSpec::Beta { a: 0.0, b: 0.0 };

    #[test]
    fn poisson_training_posteriors() {
        let data = DataSet::from_counts(&[3, 5, 2]);
        for i in [0, 2] {
            let post = training_posterior(INV_LAMBDA, Family::Poisson, &data, &TrainingSplit::singleton(i, 3).unwrap()).unwrap();
            assert_eq!(post, PriorSpec::Gamma { shape: 10.0, rate: 3.0 });
        }
        let zeros = DataSet::from_counts(&[0, 0, 0]);
        for split in TrainingSplit::singletons(3) {
            assert!(matches!(training_posterior(INV_LAMBDA, Family::Poisson, &zeros, &split), Err(Error::ImproperIntermediate(_))));
        }
    }

    #[test]
    fn invariance_is_exact() {
        let data = DataSet::from_counts(&[3, 5, 2]);
        assert_eq!(training_invariance_check(INV_LAMBDA, Family::Poisson, &data, None).unwrap(), 0.0);
        let data = DataSet::from_counts(&[3, 2]);
        assert_eq!(training_invariance_check(HALDANE, Family::Binomial { trials: 5 }, &data, None).unwrap(), 0.0);
        let one = [TrainingSplit::singleton(1, 3).unwrap()];
        let data = DataSet::from_counts(&[0, 4, 0]);
        assert_eq!(training_invariance_check(INV_LAMBDA, Family::Poisson, &data, Some(&one)).unwrap(), 0.0);
    }

    #[test]
    fn split_validation() {
        assert!(TrainingSplit::new(vec![], 3).is_err());
        assert!(TrainingSplit::new(vec![3], 3).is_err());
        let s = TrainingSplit::new(vec![2, 0, 2], 4).unwrap();
        assert_eq!(s.training(), &[0, 2]);
        assert_eq!(s.remainder(), &[1, 3]);
    }

    #[test]
    fn inverse_lambda_predictive_is_harmonic() {
        let r = no_joint_distribution_demo(INV_LAMBDA, Family::Poisson, &[1, 10, 1000]).unwrap();
        assert!((r.partial_sums[0] - 1.0).abs() < 1e-12);
        let h10: f64 = (1..=10).map(|x| 1.0 / f64::from(x)).sum();
        assert!((r.partial_sums[1] - h10).abs() < 1e-10);
        assert!(r.partial_sums[2] > 7.0);
    }

    #[test]
    fn proper_control_converges() {
        let r = no_joint_distribution_demo(PriorSpec::Gamma { shape: 1.0, rate: 1.0 }, Family::Poisson, &[1, 5, 60]).unwrap();
        // geometric 2^{-(x+1)}
        assert!((r.partial_sums[0] - 0.25).abs() < 1e-12);
        assert!((r.partial_sums[1] - (0.5 - 1.0 / 64.0)).abs() < 1e-12);
        assert!((r.partial_sums[2] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn gaussian_flat_and_binomial_haldane_diverge() {
        let flat = PriorSpec::ImproperPower { exponent: 0.0 };
        let r = no_joint_distribution_demo(flat, Family::Gaussian { variance: 1.0 }, &[1, 100]).unwrap();
        assert_eq!(r.partial_sums, vec![2.0, 200.0]);
        let r = no_joint_distribution_demo(HALDANE, Family::Binomial { trials: 5 }, &[3]).unwrap();
        assert_eq!(r.partial_sums[0], f64::INFINITY);
        let r = no_joint_distribution_demo(PriorSpec::Beta { a: 1.0, b: 1.0 }, Family::Binomial { trials: 5 }, &[5]).unwrap();
        assert!((r.partial_sums[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn haldane_propriety() {
        let fam = Family::Binomial { trials: 5 };
        let r = propriety_check(HALDANE, fam, &DataSet::from_counts(&[0])).unwrap();
        assert!(!r.proper);
        assert_eq!(r.reason, "posterior beta(0,5) not integrable");
        let r = propriety_check(HALDANE, fam, &DataSet::from_counts(&[3])).unwrap();
        assert!(r.proper);
        assert_eq!(r.reason, "posterior beta(3,2) is proper");
        assert!(propriety_check(PriorSpec::Beta { a: 2.0, b: 2.0 }, fam, &DataSet::from_counts(&[0])).unwrap().proper);
    }

    #[test]
    fn improper_verdict_matches_full_training_sample() {
        let fam = Family::Binomial { trials: 5 };
        let data = DataSet::from_counts(&[0, 0]);
        assert!(!propriety_check(HALDANE, fam, &data).unwrap().proper);
        let full = TrainingSplit::new(vec![0, 1], 2).unwrap();
        assert!(matches!(training_posterior(HALDANE, fam, &data, &full), Err(Error::ImproperIntermediate(_))));
    }
}
