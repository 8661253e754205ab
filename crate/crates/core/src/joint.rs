//! Joint posterior over both models' parameters, built with pseudo-priors.
//!
//! Draws come from the mixture
//!
//! ```text
//! p₁ m₁(x) π₁(θ₁|x) π̃₂(θ₂)  +  p₂ m₂(x) π̃₁(θ₁) π₂(θ₂|x)
//! ```
//!
//! where `π̃ⱼ` is the pseudo-prior of model `j`. Likelihood ratios evaluated at
//! these draws, rather than at independent posterior draws, give the
//! probability that drives the 0-1 model-index decision rule.

use alloc::format;
use alloc::vec::Vec;

use libm::{exp, log, sqrt};
use rand::Rng;

use crate::aitkin::{Construction, LrSample};
use crate::model::{self, Family, LogLikelihood, ModelSpec, PriorSpec, Sampler};
use crate::rng::{self, Stream};
use crate::stats::{self, Estimate};
use crate::{DataSet, Error, ParamDraws, Result};

/// Two competing models with prior model probabilities and pseudo-priors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelPairConfig {
    pub model1: ModelSpec,
    pub model2: ModelSpec,
    pub prior_prob1: f64,
    pub prior_prob2: f64,
    pub pseudo_prior1: PriorSpec,
    pub pseudo_prior2: PriorSpec,
}

impl ModelPairConfig {
    /// Equal prior model probabilities; each pseudo-prior is the model's own prior.
    pub fn new(model1: ModelSpec, model2: ModelSpec) -> Result<Self> {
        Self::with_options(model1, model2, 0.5, None, None)
    }

    pub fn with_options(
        model1: ModelSpec,
        model2: ModelSpec,
        prior_prob1: f64,
        pseudo_prior1: Option<PriorSpec>,
        pseudo_prior2: Option<PriorSpec>,
    ) -> Result<Self> {
        let config = Self {
            model1,
            model2,
            prior_prob1,
            prior_prob2: 1.0 - prior_prob1,
            pseudo_prior1: pseudo_prior1.unwrap_or(model1.prior),
            pseudo_prior2: pseudo_prior2.unwrap_or(model2.prior),
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        let (p1, p2) = (self.prior_prob1, self.prior_prob2);
        if !(p1 > 0.0 && p2 > 0.0 && libm::fabs(p1 + p2 - 1.0) <= 1e-12) {
            return Err(Error::InvalidArgument(format!("prior model probabilities ({p1}, {p2}) must be positive and sum to 1")));
        }
        for (m, pseudo) in [(&self.model1, self.pseudo_prior1), (&self.model2, self.pseudo_prior2)] {
            pseudo.validate()?;
            model::check_pairing(m.family, pseudo)?;
            if !pseudo.is_proper() {
                return Err(Error::ImproperDistribution(format!("pseudo-prior {pseudo}")));
            }
        }
        Ok(())
    }

    /// The same pair with the models (and their settings) exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            model1: self.model2,
            model2: self.model1,
            prior_prob1: self.prior_prob2,
            prior_prob2: self.prior_prob1,
            pseudo_prior1: self.pseudo_prior2,
            pseudo_prior2: self.pseudo_prior1,
        }
    }
}

/// A proper pseudo-prior concentrated around the data: the posterior from a
/// flat-ish start, widened by `inflation` in variance.
pub fn data_centered_pseudo_prior(model: &ModelSpec, data: &DataSet, inflation: f64) -> Result<PriorSpec> {
    if !(inflation >= 1.0) {
        return Err(Error::InvalidArgument(format!("variance inflation {inflation} must be at least 1")));
    }
    let mle = model.family.mle(data)?;
    let n = data.len() as f64;
    Ok(match model.family {
        Family::Poisson => {
            // gamma with mean λ̂ and variance inflation·λ̂/n
            let mean = mle.max(0.5 / n);
            let var = inflation * mean / n;
            PriorSpec::Gamma { shape: mean * mean / var, rate: mean / var }
        }
        Family::Binomial { trials } => {
            let m = n * f64::from(trials);
            let p = mle.clamp(0.5 / m, 1.0 - 0.5 / m);
            // beta with mean p and variance inflation·p(1-p)/m
            let var = (inflation * p * (1.0 - p) / m).min(0.9 * p * (1.0 - p));
            let k = p * (1.0 - p) / var - 1.0;
            PriorSpec::Beta { a: p * k, b: (1.0 - p) * k }
        }
        Family::Gaussian { variance } => PriorSpec::Gaussian { mean: mle, variance: inflation * variance / n },
    })
}

/// `(π(M₁|x), π(M₂|x))` from the closed-form marginals.
pub fn posterior_model_probs(config: &ModelPairConfig, data: &DataSet) -> Result<(f64, f64)> {
    config.validate()?;
    let a = log(config.prior_prob1) + model::ln_marginal_likelihood(&config.model1, data)?;
    let b = log(config.prior_prob2) + model::ln_marginal_likelihood(&config.model2, data)?;
    let p1 = 1.0 / (1.0 + exp(b - a));
    let p2 = 1.0 / (1.0 + exp(a - b));
    Ok((p1, p2))
}

/// `m₁(x) / m₂(x)`.
pub fn bayes_factor(model1: &ModelSpec, model2: &ModelSpec, data: &DataSet) -> Result<f64> {
    Ok(exp(model::ln_marginal_likelihood(model1, data)? - model::ln_marginal_likelihood(model2, data)?))
}

#[derive(Debug, Clone, PartialEq)]
pub struct JointDraws {
    /// Model index (1 or 2) of each draw.
    pub indicators: Vec<u8>,
    pub theta1: Vec<f64>,
    pub theta2: Vec<f64>,
    pub seed: u64,
}

impl JointDraws {
    pub fn len(&self) -> usize {
        self.indicators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indicators.is_empty()
    }

    /// Fraction of draws indexing model 1.
    pub fn model1_frequency(&self) -> f64 {
        self.indicators.iter().filter(|&&i| i == 1).count() as f64 / self.len() as f64
    }
}

struct JointSampler {
    weight1: f64,
    post1: Sampler,
    post2: Sampler,
    pseudo1: Sampler,
    pseudo2: Sampler,
}

impl JointSampler {
    fn new(config: &ModelPairConfig, data: &DataSet) -> Result<Self> {
        let (weight1, _) = posterior_model_probs(config, data)?;
        Ok(Self {
            weight1,
            post1: Sampler::new(config.model1.family, model::posterior_update(&config.model1, data)?)?,
            post2: Sampler::new(config.model2.family, model::posterior_update(&config.model2, data)?)?,
            pseudo1: Sampler::new(config.model1.family, config.pseudo_prior1)?,
            pseudo2: Sampler::new(config.model2.family, config.pseudo_prior2)?,
        })
    }

    fn draw(&self, rng: &mut Stream) -> (u8, f64, f64) {
        let u: f64 = rng.random();
        if u < self.weight1 {
            (1, self.post1.draw(rng), self.pseudo2.draw(rng))
        } else {
            let t2 = self.post2.draw(rng);
            (2, self.pseudo1.draw(rng), t2)
        }
    }
}

pub fn joint_posterior_draws(config: &ModelPairConfig, data: &DataSet, count: usize, seed: u64) -> Result<JointDraws> {
    let sampler = JointSampler::new(config, data)?;
    let mut rng = rng::stream(seed, 0);
    let mut draws = JointDraws {
        indicators: Vec::with_capacity(count),
        theta1: Vec::with_capacity(count),
        theta2: Vec::with_capacity(count),
        seed,
    };
    for _ in 0..count {
        let (i, t1, t2) = sampler.draw(&mut rng);
        draws.indicators.push(i);
        draws.theta1.push(t1);
        draws.theta2.push(t2);
    }
    Ok(draws)
}

/// Likelihood ratios `log L₁(θ₁) - log L₂(θ₂)` at joint posterior draws.
pub fn lr_joint_draws(config: &ModelPairConfig, data: &DataSet, count: usize, seed: u64) -> Result<LrSample> {
    let draws = joint_posterior_draws(config, data, count, seed)?;
    let l1 = LogLikelihood::new(config.model1.family, data)?;
    let l2 = LogLikelihood::new(config.model2.family, data)?;
    let log_ratios = draws
        .theta1
        .iter()
        .zip(&draws.theta2)
        .map(|(&a, &b)| l1.eval_unchecked(a) - l2.eval_unchecked(b))
        .collect();
    Ok(LrSample { log_ratios, construction: Construction::Joint, model_pair: (config.model1, config.model2), seed })
}

/// Outer and inner Monte Carlo sizes for the mixture decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecompositionBudget {
    /// Outer draws per mixture component.
    pub outer: usize,
    /// Inner conditional draws per outer draw.
    pub inner: usize,
}

impl Default for DecompositionBudget {
    fn default() -> Self {
        Self { outer: 2_000, inner: 1_000 }
    }
}

/// `Pr[f₂(x|θ₂) < f₁(x|θ₁) | x]` estimated two ways.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecisionProbability {
    /// Fraction of joint posterior draws with `l¹ > l²`.
    pub direct: Estimate,
    /// `π(M₁|x) E_{π̃₂}[Pr_{π₁(·|x)}(l¹ > l²)] + π(M₂|x) E_{π̃₁}[Pr_{π₂(·|x)}(l¹ > l²)]`.
    pub decomposed: Estimate,
    pub model_probs: (f64, f64),
}

impl DecisionProbability {
    pub fn combined_std_error(&self) -> f64 {
        sqrt(self.direct.std_error * self.direct.std_error + self.decomposed.std_error * self.decomposed.std_error)
    }

    /// Direct and decomposed estimates within `k` combined standard errors.
    pub fn agree(&self, k: f64) -> bool {
        libm::fabs(self.direct.value - self.decomposed.value) <= k * self.combined_std_error()
    }
}

/// Direct estimate only: fraction of `count` joint draws where model 1's likelihood is larger.
pub fn prob_f1_beats_f2_direct(config: &ModelPairConfig, data: &DataSet, count: usize, seed: u64) -> Result<Estimate> {
    if count == 0 {
        return Err(Error::EmptyDraws);
    }
    let sample = lr_joint_draws(config, data, count, seed)?;
    let p = sample.prob_exceeds_one();
    Ok(Estimate { value: p, std_error: stats::proportion_se(p, count) })
}

pub fn prob_f1_beats_f2(config: &ModelPairConfig, data: &DataSet, count: usize, seed: u64) -> Result<DecisionProbability> {
    prob_f1_beats_f2_with_budget(config, data, count, seed, DecompositionBudget::default())
}

pub fn prob_f1_beats_f2_with_budget(
    config: &ModelPairConfig,
    data: &DataSet,
    count: usize,
    seed: u64,
    budget: DecompositionBudget,
) -> Result<DecisionProbability> {
    if budget.outer == 0 || budget.inner == 0 {
        return Err(Error::InvalidArgument("decomposition budget must be positive".into()));
    }
    let direct = prob_f1_beats_f2_direct(config, data, count, seed)?;
    let model_probs = posterior_model_probs(config, data)?;
    let l1 = LogLikelihood::new(config.model1.family, data)?;
    let l2 = LogLikelihood::new(config.model2.family, data)?;
    let post1 = Sampler::new(config.model1.family, model::posterior_update(&config.model1, data)?)?;
    let post2 = Sampler::new(config.model2.family, model::posterior_update(&config.model2, data)?)?;
    let pseudo1 = Sampler::new(config.model1.family, config.pseudo_prior1)?;
    let pseudo2 = Sampler::new(config.model2.family, config.pseudo_prior2)?;

    // Under M₁: θ₂ from its pseudo-prior, inner Pr over θ₁ ~ π₁(·|x).
    let mut rng = rng::stream(seed, 1);
    let under1: Vec<f64> = (0..budget.outer)
        .map(|_| {
            let level = l2.eval_unchecked(pseudo2.draw(&mut rng));
            let hits = (0..budget.inner).filter(|_| l1.eval_unchecked(post1.draw(&mut rng)) > level).count();
            hits as f64 / budget.inner as f64
        })
        .collect();
    // Under M₂: θ₁ from its pseudo-prior, inner Pr over θ₂ ~ π₂(·|x).
    let mut rng = rng::stream(seed, 2);
    let under2: Vec<f64> = (0..budget.outer)
        .map(|_| {
            let level = l1.eval_unchecked(pseudo1.draw(&mut rng));
            let hits = (0..budget.inner).filter(|_| level > l2.eval_unchecked(post2.draw(&mut rng))).count();
            hits as f64 / budget.inner as f64
        })
        .collect();
    let (w1, w2) = model_probs;
    let a = Estimate::from_samples(&under1);
    let b = Estimate::from_samples(&under2);
    let decomposed = Estimate {
        value: w1 * a.value + w2 * b.value,
        std_error: sqrt(w1 * w1 * a.std_error * a.std_error + w2 * w2 * b.std_error * b.std_error),
    };
    Ok(DecisionProbability { direct, decomposed, model_probs })
}

/// Outcome of the Bayes rule under the model-index loss.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecisionOutcome {
    pub chosen_model: u8,
    pub prob_f1_beats_f2: f64,
    pub threshold: f64,
}

/// Picks model 1 iff `Pr[f₂ < f₁ | x] > 1/2`; a tie goes to model 2.
pub fn decide(prob_f1_beats_f2: f64) -> DecisionOutcome {
    let chosen_model = if prob_f1_beats_f2 > 0.5 { 1 } else { 2 };
    DecisionOutcome { chosen_model, prob_f1_beats_f2, threshold: 0.5 }
}

pub fn bayes_decision(config: &ModelPairConfig, data: &DataSet, count: usize, seed: u64) -> Result<DecisionOutcome> {
    Ok(decide(prob_f1_beats_f2_direct(config, data, count, seed)?.value))
}

/// Monte Carlo posterior mean of `f(x|θ₀) / f(x|θ)` under the full model.
pub fn posterior_mean_lr_point_null(null_value: f64, full_model: &ModelSpec, data: &DataSet, draws: &ParamDraws) -> Result<Estimate> {
    if draws.is_empty() {
        return Err(Error::EmptyDraws);
    }
    let loglik = LogLikelihood::new(full_model.family, data)?;
    let null = loglik.eval(null_value)?;
    let ratios = draws
        .values
        .iter()
        .map(|&t| loglik.eval(t).map(|l| exp(null - l)))
        .collect::<Result<Vec<f64>>>()?;
    Ok(Estimate::from_samples(&ratios))
}

/// `f(x|θ₀) / m(x)`: the Bayes factor of the point null against the full model.
pub fn point_null_bayes_factor(null_value: f64, full_model: &ModelSpec, data: &DataSet) -> Result<f64> {
    let null = full_model.with_prior(PriorSpec::PointMass { value: null_value })?;
    bayes_factor(&null, full_model, data)
}

/// Closed-form `BF₀₁(τ)` for `H₀: θ = θ₀` against `θ ~ N(θ₀, τ²)` with
/// gaussian data of known variance.
pub fn lindley_sweep(null_value: f64, variance: f64, data: &DataSet, tau_grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    Family::Gaussian { variance }.validate()?;
    if tau_grid.is_empty() {
        return Err(Error::InvalidArgument("empty prior scale grid".into()));
    }
    if data.is_empty() {
        return Err(Error::InvalidData("need at least one observation".into()));
    }
    if let Some(t) = tau_grid.iter().find(|t| !(**t > 0.0 && t.is_finite())) {
        return Err(Error::InvalidArgument(format!("prior scale {t} must be positive")));
    }
    let n = data.len() as f64;
    let d = data.mean() - null_value;
    Ok(tau_grid
        .iter()
        .map(|&tau| {
            let t2 = tau * tau;
            let bf = sqrt(1.0 + n * t2 / variance) * exp(-(n * n * d * d * t2) / (2.0 * variance * (variance + n * t2)));
            (tau, bf)
        })
        .collect())
}
