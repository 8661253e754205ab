//! Posterior summaries of the likelihood function.
//!
//! These treat `L(θ, x)` as a random quantity under the posterior: its
//! survival function, its mean, the deviance summaries behind DIC, and
//! likelihood ratios formed from independent posterior draws of two models.
//! The marginal-likelihood estimators here (harmonic mean, prior sampling)
//! exist to be compared against the closed forms.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use libm::{exp, log};

use crate::math::{ln_beta, ln_choose, log_sum_exp};
use crate::model::{self, Family, LogLikelihood, ModelSpec, ParamDraws, PriorSpec, Sampler};
use crate::rng;
use crate::stats::Estimate;
use crate::{DataSet, Error, Result};

fn log_likelihoods(model: &ModelSpec, data: &DataSet, draws: &ParamDraws) -> Result<Vec<f64>> {
    if draws.is_empty() {
        return Err(Error::EmptyDraws);
    }
    let loglik = LogLikelihood::new(model.family, data)?;
    draws.values.iter().map(|&t| loglik.eval(t)).collect()
}

/// `F(z) = Pr(L(θ, x) > z | x)` estimated from posterior draws.
pub fn likelihood_cdf_complement(model: &ModelSpec, data: &DataSet, draws: &ParamDraws, z: f64) -> Result<f64> {
    if !(z >= 0.0) {
        return Err(Error::InvalidArgument(format!("likelihood threshold must be nonnegative, got {z}")));
    }
    let ls = log_likelihoods(model, data, draws)?;
    let log_z = log(z);
    let above = ls.iter().filter(|&&l| l > log_z).count();
    Ok(above as f64 / ls.len() as f64)
}

/// Monte Carlo `E[L(θ, x) | x]` with its standard error.
pub fn posterior_expected_likelihood(model: &ModelSpec, data: &DataSet, draws: &ParamDraws) -> Result<Estimate> {
    let ls: Vec<f64> = log_likelihoods(model, data, draws)?.into_iter().map(exp).collect();
    Ok(Estimate::from_samples(&ls))
}

/// `m(x, x) / m(x)`: the marginal of the data observed twice over the marginal of the data.
pub fn posterior_expected_likelihood_exact(model: &ModelSpec, data: &DataSet) -> Result<f64> {
    let twice = data.concat(data);
    Ok(exp(model::ln_marginal_likelihood(model, &twice)? - model::ln_marginal_likelihood(model, data)?))
}

/// Point estimate plugged into `D(θ̂)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DicEstimator {
    #[default]
    PosteriorMean,
    PosteriorMode,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DicReport {
    /// Posterior mean deviance.
    pub d_bar: f64,
    /// Monte Carlo standard error of `d_bar`.
    pub d_bar_std_error: f64,
    /// Deviance at the point estimate.
    pub d_hat: f64,
    pub p_d: f64,
    pub dic: f64,
    pub theta_hat: f64,
    pub estimator_used: DicEstimator,
}

/// Deviance information criterion with `D(θ) = -2 log f(x|θ)`.
///
/// The point estimate comes from the conjugate posterior, so it carries no
/// Monte Carlo error; `d_bar` is averaged over `draws`.
pub fn dic(model: &ModelSpec, data: &DataSet, draws: &ParamDraws, estimator: DicEstimator) -> Result<DicReport> {
    let deviances: Vec<f64> = log_likelihoods(model, data, draws)?.into_iter().map(|l| -2.0 * l).collect();
    let post = model::posterior_update(model, data)?;
    let theta_hat = match estimator {
        DicEstimator::PosteriorMean => post.mean(),
        DicEstimator::PosteriorMode => post.mode(),
    }
    .expect("posterior is proper");
    let d_hat = -2.0 * model::log_likelihood(model, theta_hat, data)?;
    let est = Estimate::from_samples(&deviances);
    let d_bar = est.value;
    let p_d = d_bar - d_hat;
    Ok(DicReport { d_bar, d_bar_std_error: est.std_error, d_hat, p_d, dic: p_d + d_bar, theta_hat, estimator_used: estimator })
}

/// How the parameter pairs behind a likelihood-ratio sample were drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    /// Independent draws from each model's own posterior.
    Product,
    /// Draws from the joint pseudo-prior posterior over both parameters.
    Joint,
}

impl Construction {
    pub fn label(&self) -> &'static str {
        match self {
            Construction::Product => "product",
            Construction::Joint => "joint",
        }
    }
}

/// Draws of `log L₁(θ₁, x) - log L₂(θ₂, x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LrSample {
    pub log_ratios: Vec<f64>,
    pub construction: Construction,
    pub model_pair: (ModelSpec, ModelSpec),
    pub seed: u64,
}

impl LrSample {
    pub fn len(&self) -> usize {
        self.log_ratios.len()
    }

    pub fn is_empty(&self) -> bool {
        self.log_ratios.is_empty()
    }

    /// Fraction of draws with likelihood ratio strictly above 1 (ties count as not exceeding).
    pub fn prob_exceeds_one(&self) -> f64 {
        if self.log_ratios.is_empty() {
            return f64::NAN;
        }
        self.log_ratios.iter().filter(|&&r| r > 0.0).count() as f64 / self.log_ratios.len() as f64
    }

    pub fn prob_exceeds_one_se(&self) -> f64 {
        crate::stats::proportion_se(self.prob_exceeds_one(), self.len())
    }
}

fn model_key(m: &ModelSpec) -> [f64; 5] {
    let (ftag, fpar) = match m.family {
        Family::Poisson => (0.0, 0.0),
        Family::Binomial { trials } => (1.0, f64::from(trials)),
        Family::Gaussian { variance } => (2.0, variance),
    };
    let (ptag, p1, p2) = match m.prior {
        PriorSpec::Gamma { shape, rate } => (0.0, shape, rate),
        PriorSpec::Beta { a, b } => (1.0, a, b),
        PriorSpec::Gaussian { mean, variance } => (2.0, mean, variance),
        PriorSpec::PointMass { value } => (3.0, value, 0.0),
        PriorSpec::ImproperPower { exponent } => (4.0, exponent, 0.0),
    };
    [ftag, fpar, ptag, p1, p2]
}

fn canonical_cmp(a: &ModelSpec, b: &ModelSpec) -> Ordering {
    model_key(a).iter().zip(model_key(b).iter()).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
}

/// Random stream ids for the two models of a product construction.
///
/// Streams follow a canonical ordering of the models rather than their
/// position, so swapping distinct models swaps the draws with them.
fn product_streams(model1: &ModelSpec, model2: &ModelSpec) -> (u64, u64) {
    match canonical_cmp(model1, model2) {
        Ordering::Greater => (2, 1),
        _ => (1, 2),
    }
}

/// Likelihood ratios from independent draws of the two separate posteriors.
pub fn lr_product_draws(model1: &ModelSpec, model2: &ModelSpec, data: &DataSet, count: usize, seed: u64) -> Result<LrSample> {
    let s1 = Sampler::new(model1.family, model::posterior_update(model1, data)?)?;
    let s2 = Sampler::new(model2.family, model::posterior_update(model2, data)?)?;
    let l1 = LogLikelihood::new(model1.family, data)?;
    let l2 = LogLikelihood::new(model2.family, data)?;
    let (id1, id2) = product_streams(model1, model2);
    let mut r1 = rng::stream(seed, id1);
    let mut r2 = rng::stream(seed, id2);
    let log_ratios = (0..count)
        .map(|_| l1.eval_unchecked(s1.draw(&mut r1)) - l2.eval_unchecked(s2.draw(&mut r2)))
        .collect();
    Ok(LrSample { log_ratios, construction: Construction::Product, model_pair: (*model1, *model2), seed })
}

/// Per-draw weights `ρᵢ Lᵢ(θᵢ) / Σ ρₖ Lₖ(θₖ)` over independently drawn posteriors.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightDraws {
    models: usize,
    values: Vec<f64>,
}

impl WeightDraws {
    pub fn models(&self) -> usize {
        self.models
    }

    pub fn len(&self) -> usize {
        if self.models == 0 {
            0
        } else {
            self.values.len() / self.models
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Weights of all models at draw `i`.
    pub fn draw(&self, i: usize) -> &[f64] {
        &self.values[i * self.models..(i + 1) * self.models]
    }

    /// Weight of model `k` across all draws.
    pub fn model_weights(&self, k: usize) -> Vec<f64> {
        self.values.iter().skip(k).step_by(self.models).copied().collect()
    }

    pub fn mean_weight(&self, k: usize) -> Estimate {
        Estimate::from_samples(&self.model_weights(k))
    }
}

pub fn scott_congdon_weights(models: &[ModelSpec], rho: &[f64], data: &DataSet, count: usize, seed: u64) -> Result<WeightDraws> {
    if models.is_empty() || models.len() != rho.len() {
        return Err(Error::InvalidArgument("need one prior weight per model".into()));
    }
    if rho.iter().any(|r| !(0.0..=1.0).contains(r)) || libm::fabs(rho.iter().sum::<f64>() - 1.0) > 1e-12 {
        return Err(Error::InvalidArgument(format!("model weights {rho:?} must be probabilities summing to 1")));
    }
    let mut samplers = Vec::with_capacity(models.len());
    for m in models {
        let post = model::posterior_update(m, data)?;
        samplers.push((Sampler::new(m.family, post)?, LogLikelihood::new(m.family, data)?));
    }
    let mut streams: Vec<_> = (0..models.len()).map(|k| rng::stream(seed, k as u64 + 1)).collect();
    let log_rho: Vec<f64> = rho.iter().map(|&r| log(r)).collect();
    let mut values = Vec::with_capacity(count * models.len());
    let mut terms = alloc::vec![0.0; models.len()];
    for _ in 0..count {
        for (k, ((sampler, loglik), stream)) in samplers.iter().zip(streams.iter_mut()).enumerate() {
            terms[k] = log_rho[k] + loglik.eval_unchecked(sampler.draw(stream));
        }
        let total = log_sum_exp(&terms);
        values.extend(terms.iter().map(|t| exp(t - total)));
    }
    Ok(WeightDraws { models: models.len(), values })
}

/// Harmonic-mean estimate `[mean 1/L(θᵢ, x)]⁻¹` over posterior draws.
pub fn harmonic_mean_marginal(model: &ModelSpec, data: &DataSet, draws: &ParamDraws) -> Result<f64> {
    let neg: Vec<f64> = log_likelihoods(model, data, draws)?.into_iter().map(|l| -l).collect();
    Ok(exp(log(neg.len() as f64) - log_sum_exp(&neg)))
}

/// Plain Monte Carlo `mean L(θᵢ, x)` over prior draws.
pub fn prior_sampling_marginal(model: &ModelSpec, data: &DataSet, draws: &ParamDraws) -> Result<f64> {
    let ls = log_likelihoods(model, data, draws)?;
    Ok(exp(log_sum_exp(&ls) - log(ls.len() as f64)))
}

/// Exact `Pr(Y ≤ threshold)` for `future_trials` further Bernoulli trials after
/// observing `successes` out of `trials` under a beta prior.
pub fn beta_binomial_predictive(successes: u64, trials: u64, future_trials: u64, threshold: u64, prior: PriorSpec) -> Result<f64> {
    let PriorSpec::Beta { a, b } = prior else {
        return Err(Error::Incompatible { family: "binomial", prior: format!("{prior}") });
    };
    prior.validate()?;
    if successes > trials {
        return Err(Error::InvalidData(format!("{successes} successes in {trials} trials")));
    }
    if threshold > future_trials {
        return Err(Error::InvalidArgument(format!("threshold {threshold} exceeds {future_trials} future trials")));
    }
    let post_a = a + successes as f64;
    let post_b = b + (trials - successes) as f64;
    let post = PriorSpec::Beta { a: post_a, b: post_b };
    if !post.is_proper() {
        return Err(Error::ImproperPosterior(format!("posterior {post} not integrable")));
    }
    if threshold == future_trials {
        return Ok(1.0);
    }
    let n = future_trials as f64;
    let ln_norm = ln_beta(post_a, post_b);
    let terms: Vec<f64> = (0..=threshold)
        .map(|y| {
            let y = y as f64;
            ln_choose(n, y) + ln_beta(y + post_a, n - y + post_b) - ln_norm
        })
        .collect();
    Ok(exp(log_sum_exp(&terms)).min(1.0))
}
