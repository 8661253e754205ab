//! Conjugate one-parameter families, their priors, data sets and draws.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use libm::{exp, log, sqrt};
use rand::Rng;
use rand_distr::{Beta, Distribution as _, Gamma, Normal};

use crate::math::{ln_beta, ln_choose, ln_factorial, ln_gamma};
use crate::rng::{self, Stream};
use crate::{Error, Result};

const LN_2PI: f64 = 1.837_877_066_409_345_5;

/// Likelihood family of a one-parameter model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// Poisson counts with rate `λ > 0`.
    Poisson,
    /// Binomial counts out of `trials` with success probability `p`.
    Binomial { trials: u32 },
    /// Gaussian observations with unknown mean and known variance.
    Gaussian { variance: f64 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Poisson => "poisson",
            Family::Binomial { .. } => "binomial",
            Family::Gaussian { .. } => "gaussian",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Family::Binomial { trials: 0 } => {
                Err(Error::InvalidModel("binomial trial count must be at least 1".into()))
            }
            Family::Gaussian { variance } if !(variance > 0.0 && variance.is_finite()) => Err(
                Error::InvalidModel(format!("gaussian known variance must be positive, got {variance}")),
            ),
            _ => Ok(()),
        }
    }

    /// Whether `theta` is a valid argument of the likelihood.
    ///
    /// The binomial space is closed, the Poisson rate must be strictly positive.
    pub fn in_space(&self, theta: f64) -> bool {
        match self {
            Family::Poisson => theta > 0.0 && theta.is_finite(),
            Family::Binomial { .. } => (0.0..=1.0).contains(&theta),
            Family::Gaussian { .. } => theta.is_finite(),
        }
    }

    /// Open interior used to reject boundary draws.
    fn in_interior(&self, theta: f64) -> bool {
        match self {
            Family::Binomial { .. } => theta > 0.0 && theta < 1.0,
            _ => self.in_space(theta),
        }
    }

    pub fn check_param(&self, theta: f64) -> Result<()> {
        if self.in_space(theta) {
            Ok(())
        } else {
            Err(Error::Domain { family: self.name(), value: theta })
        }
    }

    pub fn check_data(&self, data: &DataSet) -> Result<()> {
        for &x in data.observations() {
            let ok = match *self {
                Family::Poisson => x >= 0.0 && x.fract() == 0.0,
                Family::Binomial { trials } => x >= 0.0 && x <= f64::from(trials) && x.fract() == 0.0,
                Family::Gaussian { .. } => true,
            };
            if !ok {
                return Err(Error::InvalidData(format!(
                    "observation {x} is not valid for the {} family",
                    self.name()
                )));
            }
        }
        Ok(())
    }

    /// Sampling distribution of one observation at parameter `theta`.
    pub fn distribution(&self, theta: f64) -> Result<Distribution> {
        self.check_param(theta)?;
        Ok(match *self {
            Family::Poisson => Distribution::Poisson { rate: theta },
            Family::Binomial { trials } => Distribution::Binomial { trials, p: theta },
            Family::Gaussian { variance } => Distribution::Gaussian { mean: theta, variance },
        })
    }

    /// Closed-form maximum likelihood estimate.
    pub fn mle(&self, data: &DataSet) -> Result<f64> {
        self.check_data(data)?;
        if data.is_empty() {
            return Err(Error::InvalidData("maximum likelihood needs at least one observation".into()));
        }
        Ok(match *self {
            Family::Poisson | Family::Gaussian { .. } => data.mean(),
            Family::Binomial { trials } => data.sum() / (data.len() as f64 * f64::from(trials)),
        })
    }

    /// Prepares a log-likelihood evaluator for repeated use on the same data.
    pub fn log_likelihood_fn(&self, data: &DataSet) -> Result<LogLikelihood> {
        LogLikelihood::new(*self, data)
    }
}

/// A prior (or posterior, or pseudo-prior) on the scalar parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PriorSpec {
    /// Gamma with shape and rate; improper when either is zero.
    Gamma { shape: f64, rate: f64 },
    /// Beta; `Beta { a: 0, b: 0 }` is the Haldane prior.
    Beta { a: f64, b: f64 },
    Gaussian { mean: f64, variance: f64 },
    PointMass { value: f64 },
    /// `π(θ) ∝ θ^exponent` (Poisson), `∝ (p(1-p))^exponent` (binomial) or flat (gaussian, exponent 0).
    ImproperPower { exponent: f64 },
}

impl PriorSpec {
    pub fn is_proper(&self) -> bool {
        match *self {
            PriorSpec::Gamma { shape, rate } => shape > 0.0 && rate > 0.0,
            PriorSpec::Beta { a, b } => a > 0.0 && b > 0.0,
            PriorSpec::Gaussian { variance, .. } => variance > 0.0,
            PriorSpec::PointMass { .. } => true,
            PriorSpec::ImproperPower { .. } => false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidModel(msg));
        match *self {
            PriorSpec::Gamma { shape, rate } if !(shape >= 0.0 && rate >= 0.0) => {
                bad(format!("gamma hyperparameters must be nonnegative, got {self}"))
            }
            PriorSpec::Beta { a, b } if !(a >= 0.0 && b >= 0.0) => {
                bad(format!("beta hyperparameters must be nonnegative, got {self}"))
            }
            PriorSpec::Gaussian { mean, variance } if !(variance > 0.0 && variance.is_finite() && mean.is_finite()) => {
                bad(format!("gaussian prior needs finite mean and positive variance, got {self}"))
            }
            PriorSpec::PointMass { value } if !value.is_finite() => bad(format!("point mass at {value}")),
            PriorSpec::ImproperPower { exponent } if !exponent.is_finite() => {
                bad(format!("improper power exponent {exponent}"))
            }
            _ => Ok(()),
        }
    }

    pub fn is_point_mass(&self) -> bool {
        matches!(self, PriorSpec::PointMass { .. })
    }

    pub fn mean(&self) -> Option<f64> {
        if !self.is_proper() {
            return None;
        }
        Some(match *self {
            PriorSpec::Gamma { shape, rate } => shape / rate,
            PriorSpec::Beta { a, b } => a / (a + b),
            PriorSpec::Gaussian { mean, .. } => mean,
            PriorSpec::PointMass { value } => value,
            PriorSpec::ImproperPower { .. } => unreachable!(),
        })
    }

    /// Mode of the density, clamped to the boundary when the density is monotone.
    pub fn mode(&self) -> Option<f64> {
        if !self.is_proper() {
            return None;
        }
        Some(match *self {
            PriorSpec::Gamma { shape, rate } => ((shape - 1.0) / rate).max(0.0),
            PriorSpec::Beta { a, b } => {
                if a >= 1.0 && b >= 1.0 && a + b > 2.0 {
                    (a - 1.0) / (a + b - 2.0)
                } else if a < b {
                    0.0
                } else if a > b {
                    1.0
                } else {
                    0.5
                }
            }
            PriorSpec::Gaussian { mean, .. } => mean,
            PriorSpec::PointMass { value } => value,
            PriorSpec::ImproperPower { .. } => unreachable!(),
        })
    }

    /// Normalized log density; only defined for proper continuous priors.
    pub fn ln_density(&self, theta: f64) -> Result<f64> {
        match *self {
            _ if !self.is_proper() => Err(Error::ImproperPrior(self.to_string())),
            PriorSpec::PointMass { .. } => {
                Err(Error::InvalidArgument(format!("{self} has no density")))
            }
            PriorSpec::Gamma { shape, rate } => {
                if theta <= 0.0 {
                    return Ok(f64::NEG_INFINITY);
                }
                Ok(shape * log(rate) - ln_gamma(shape) + (shape - 1.0) * log(theta) - rate * theta)
            }
            PriorSpec::Beta { a, b } => {
                if !(0.0..=1.0).contains(&theta) {
                    return Ok(f64::NEG_INFINITY);
                }
                Ok(xlogy(a - 1.0, theta) + xlogy(b - 1.0, 1.0 - theta) - ln_beta(a, b))
            }
            PriorSpec::Gaussian { mean, variance } => {
                let d = theta - mean;
                Ok(-0.5 * (LN_2PI + log(variance)) - d * d / (2.0 * variance))
            }
            PriorSpec::ImproperPower { .. } => unreachable!(),
        }
    }
}

impl fmt::Display for PriorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PriorSpec::Gamma { shape, rate } => write!(f, "gamma({shape},{rate})"),
            PriorSpec::Beta { a, b } => write!(f, "beta({a},{b})"),
            PriorSpec::Gaussian { mean, variance } => write!(f, "gaussian({mean},{variance})"),
            PriorSpec::PointMass { value } => write!(f, "point_mass({value})"),
            PriorSpec::ImproperPower { exponent } => write!(f, "improper_power({exponent})"),
        }
    }
}

/// `x * log(y)` with `0 * log(0) = 0`.
pub(crate) fn xlogy(x: f64, y: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * log(y)
    }
}

/// A likelihood family with its prior: the unit of comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelSpec {
    pub family: Family,
    pub prior: PriorSpec,
}

impl ModelSpec {
    pub fn new(family: Family, prior: PriorSpec) -> Result<Self> {
        family.validate()?;
        prior.validate()?;
        check_pairing(family, prior)?;
        if let PriorSpec::PointMass { value } = prior {
            family.check_param(value)?;
        }
        Ok(Self { family, prior })
    }

    pub fn poisson(prior: PriorSpec) -> Result<Self> {
        Self::new(Family::Poisson, prior)
    }

    pub fn binomial(trials: u32, prior: PriorSpec) -> Result<Self> {
        Self::new(Family::Binomial { trials }, prior)
    }

    pub fn gaussian(variance: f64, prior: PriorSpec) -> Result<Self> {
        Self::new(Family::Gaussian { variance }, prior)
    }

    /// Same family, different prior.
    pub fn with_prior(&self, prior: PriorSpec) -> Result<Self> {
        Self::new(self.family, prior)
    }
}

pub(crate) fn check_pairing(family: Family, prior: PriorSpec) -> Result<()> {
    let ok = match (family, prior) {
        (_, PriorSpec::PointMass { .. }) => true,
        (Family::Poisson, PriorSpec::Gamma { .. } | PriorSpec::ImproperPower { .. }) => true,
        (Family::Binomial { .. }, PriorSpec::Beta { .. } | PriorSpec::ImproperPower { .. }) => true,
        (Family::Gaussian { .. }, PriorSpec::Gaussian { .. }) => true,
        (Family::Gaussian { .. }, PriorSpec::ImproperPower { exponent }) => exponent == 0.0,
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Incompatible { family: family.name(), prior: prior.to_string() })
    }
}

/// Observed data: iid counts or reals.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DataSet {
    observations: Vec<f64>,
    sum: f64,
    mean: f64,
    centered_ss: f64,
}

impl DataSet {
    pub fn new(observations: Vec<f64>) -> Result<Self> {
        if let Some(bad) = observations.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidData(format!("non-finite observation {bad}")));
        }
        let sum: f64 = observations.iter().sum();
        let mean = if observations.is_empty() { 0.0 } else { sum / observations.len() as f64 };
        let centered_ss = observations.iter().map(|x| (x - mean) * (x - mean)).sum();
        Ok(Self { observations, sum, mean, centered_ss })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_counts(counts: &[u64]) -> Self {
        Self::new(counts.iter().map(|&c| c as f64).collect()).expect("counts are finite")
    }

    pub fn observations(&self) -> &[f64] {
        &self.observations
    }

    pub fn len(&self) -> usize {
        self.observations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observations.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.sum
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// `Σ (x - x̄)²`
    pub fn centered_ss(&self) -> f64 {
        self.centered_ss
    }

    /// Observations at the given (0-based) indices.
    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        let obs = indices
            .iter()
            .map(|&i| {
                self.observations
                    .get(i)
                    .copied()
                    .ok_or_else(|| Error::InvalidArgument(format!("index {i} out of range")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(obs)
    }

    /// Union of two data sets (concatenation).
    pub fn concat(&self, other: &DataSet) -> Self {
        let mut obs = self.observations.clone();
        obs.extend_from_slice(&other.observations);
        Self::new(obs).expect("finite")
    }
}

/// Log-likelihood `Σ log f(x_i|θ)` reduced to sufficient statistics.
#[derive(Debug, Clone, Copy)]
pub struct LogLikelihood {
    family: Family,
    n: f64,
    sum: f64,
    mean: f64,
    centered_ss: f64,
    constant: f64,
}

impl LogLikelihood {
    pub fn new(family: Family, data: &DataSet) -> Result<Self> {
        family.validate()?;
        family.check_data(data)?;
        let n = data.len() as f64;
        let constant = match family {
            Family::Poisson => -data.observations().iter().map(|&x| ln_factorial(x)).sum::<f64>(),
            Family::Binomial { trials } => {
                let m = f64::from(trials);
                data.observations().iter().map(|&x| ln_choose(m, x)).sum()
            }
            Family::Gaussian { variance } => -0.5 * n * (LN_2PI + log(variance)),
        };
        Ok(Self { family, n, sum: data.sum(), mean: data.mean(), centered_ss: data.centered_ss(), constant })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn eval(&self, theta: f64) -> Result<f64> {
        self.family.check_param(theta)?;
        Ok(self.eval_unchecked(theta))
    }

    #[inline]
    pub(crate) fn eval_unchecked(&self, theta: f64) -> f64 {
        if self.n == 0.0 {
            return 0.0;
        }
        match self.family {
            Family::Poisson => xlogy(self.sum, theta) - self.n * theta + self.constant,
            Family::Binomial { trials } => {
                let failures = self.n * f64::from(trials) - self.sum;
                xlogy(self.sum, theta) + xlogy(failures, 1.0 - theta) + self.constant
            }
            Family::Gaussian { variance } => {
                let d = self.mean - theta;
                self.constant - (self.centered_ss + self.n * d * d) / (2.0 * variance)
            }
        }
    }
}

fn invalid(dist: PriorSpec) -> Error {
    Error::InvalidModel(format!("cannot sample from {dist}"))
}

/// `Σ log f(x_i|θ)`; 0 for empty data.
pub fn log_likelihood(model: &ModelSpec, theta: f64, data: &DataSet) -> Result<f64> {
    LogLikelihood::new(model.family, data)?.eval(theta)
}

fn not_integrable(dist: PriorSpec) -> String {
    format!("posterior {dist} not integrable")
}

/// Formal conjugate update of `prior` by `data`, without the propriety check.
pub(crate) fn formal_update(family: Family, prior: PriorSpec, data: &DataSet) -> Result<PriorSpec> {
    check_pairing(family, prior)?;
    family.check_data(data)?;
    let n = data.len() as f64;
    let s = data.sum();
    Ok(match (family, prior) {
        (_, PriorSpec::PointMass { .. }) => prior,
        (Family::Poisson, PriorSpec::Gamma { shape, rate }) => PriorSpec::Gamma { shape: shape + s, rate: rate + n },
        (Family::Poisson, PriorSpec::ImproperPower { exponent }) => {
            PriorSpec::Gamma { shape: exponent + 1.0 + s, rate: n }
        }
        (Family::Binomial { trials }, PriorSpec::Beta { a, b }) => {
            PriorSpec::Beta { a: a + s, b: b + n * f64::from(trials) - s }
        }
        (Family::Binomial { trials }, PriorSpec::ImproperPower { exponent }) => PriorSpec::Beta {
            a: exponent + 1.0 + s,
            b: exponent + 1.0 + n * f64::from(trials) - s,
        },
        (Family::Gaussian { variance }, PriorSpec::Gaussian { mean, variance: tau2 }) => {
            let precision = 1.0 / tau2 + n / variance;
            let post_var = 1.0 / precision;
            PriorSpec::Gaussian { mean: post_var * (mean / tau2 + s / variance), variance: post_var }
        }
        (Family::Gaussian { variance }, PriorSpec::ImproperPower { .. }) => {
            if n == 0.0 {
                // flat prior carried through unchanged
                prior
            } else {
                PriorSpec::Gaussian { mean: data.mean(), variance: variance / n }
            }
        }
        _ => unreachable!("pairing checked above"),
    })
}

/// Conjugate posterior of `model` given `data`.
pub fn posterior_update(model: &ModelSpec, data: &DataSet) -> Result<PriorSpec> {
    let post = formal_update(model.family, model.prior, data)?;
    if post.is_proper() {
        Ok(post)
    } else {
        Err(Error::ImproperPosterior(not_integrable(post)))
    }
}

/// Log marginal likelihood `log ∫ L(θ,x) π(θ) dθ` in closed form.
pub fn ln_marginal_likelihood(model: &ModelSpec, data: &DataSet) -> Result<f64> {
    if !model.prior.is_proper() {
        return Err(Error::ImproperPrior(model.prior.to_string()));
    }
    let loglik = LogLikelihood::new(model.family, data)?;
    let n = data.len() as f64;
    let s = data.sum();
    Ok(match (model.family, model.prior) {
        (_, PriorSpec::PointMass { value }) => loglik.eval(value)?,
        (Family::Poisson, PriorSpec::Gamma { shape, rate }) => {
            shape * log(rate) - ln_gamma(shape) + ln_gamma(shape + s) - (shape + s) * log(rate + n)
                + loglik.constant
        }
        (Family::Binomial { trials }, PriorSpec::Beta { a, b }) => {
            let failures = n * f64::from(trials) - s;
            loglik.constant + ln_beta(a + s, b + failures) - ln_beta(a, b)
        }
        (Family::Gaussian { .. }, PriorSpec::Gaussian { .. }) => {
            // candidate's identity: m(x) = f(x|θ) π(θ) / π(θ|x) at any θ
            let post = formal_update(model.family, model.prior, data)?;
            let theta = post.mean().expect("gaussian posterior is proper");
            loglik.eval_unchecked(theta) + model.prior.ln_density(theta)? - post.ln_density(theta)?
        }
        _ => unreachable!("pairing checked at construction"),
    })
}

/// Marginal likelihood `m(x)`.
pub fn marginal_likelihood(model: &ModelSpec, data: &DataSet) -> Result<f64> {
    ln_marginal_likelihood(model, data).map(exp)
}

/// Where a set of parameter draws came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Posterior,
    Prior,
    PseudoPrior,
}

/// Seeded parameter draws for one model.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamDraws {
    pub values: Vec<f64>,
    pub source: Source,
    pub seed: u64,
    pub model: ModelSpec,
}

impl ParamDraws {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Draws one parameter at a time from a proper conjugate distribution.
#[derive(Debug, Clone, Copy)]
pub struct Sampler {
    family: Family,
    kind: SamplerKind,
}

#[derive(Debug, Clone, Copy)]
enum SamplerKind {
    Gamma(Gamma<f64>),
    Beta(Beta<f64>),
    Normal(Normal<f64>),
    Fixed(f64),
}

impl Sampler {
    pub fn new(family: Family, dist: PriorSpec) -> Result<Self> {
        if !dist.is_proper() {
            return Err(Error::ImproperDistribution(dist.to_string()));
        }
        check_pairing(family, dist)?;
                let kind = match dist {
            PriorSpec::Gamma { shape, rate } => SamplerKind::Gamma(Gamma::new(shape, 1.0 / rate).map_err(|_| invalid(dist))?),
            PriorSpec::Beta { a, b } => SamplerKind::Beta(Beta::new(a, b).map_err(|_| invalid(dist))?),
            PriorSpec::Gaussian { mean, variance } => {
                SamplerKind::Normal(Normal::new(mean, sqrt(variance)).map_err(|_| invalid(dist))?)
            }
            PriorSpec::PointMass { value } => {
                family.check_param(value)?;
                SamplerKind::Fixed(value)
            }
            PriorSpec::ImproperPower { .. } => unreachable!(),
        };
        Ok(Self { family, kind })
    }

    /// One draw from the open parameter space; boundary values are redrawn.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self.kind {
            SamplerKind::Fixed(v) => v,
            kind => loop {
                let v = match kind {
                    SamplerKind::Gamma(d) => d.sample(rng),
                    SamplerKind::Beta(d) => d.sample(rng),
                    SamplerKind::Normal(d) => d.sample(rng),
                    SamplerKind::Fixed(_) => unreachable!(),
                };
                if self.family.in_interior(v) {
                    break v;
                }
            },
        }
    }

    pub fn is_fixed(&self) -> bool {
        matches!(self.kind, SamplerKind::Fixed(_))
    }
}

/// `count` iid draws from `dist`, reproducible from `seed`.
pub fn sample(model: &ModelSpec, dist: &PriorSpec, source: Source, count: usize, seed: u64) -> Result<ParamDraws> {
    let sampler = Sampler::new(model.family, *dist)?;
    let mut rng = rng::stream(seed, 0);
    let values = (0..count).map(|_| sampler.draw(&mut rng)).collect();
    Ok(ParamDraws { values, source, seed, model: *model })
}

/// Draws from the conjugate posterior of `model` given `data`.
pub fn sample_posterior(model: &ModelSpec, data: &DataSet, count: usize, seed: u64) -> Result<ParamDraws> {
    let post = posterior_update(model, data)?;
    sample(model, &post, Source::Posterior, count, seed)
}

/// Draws from the prior of `model`.
pub fn sample_prior(model: &ModelSpec, count: usize, seed: u64) -> Result<ParamDraws> {
    sample(model, &model.prior, Source::Prior, count, seed)
}

/// A fully specified data-generating distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Distribution {
    Poisson { rate: f64 },
    Binomial { trials: u32, p: f64 },
    Gaussian { mean: f64, variance: f64 },
}

impl Distribution {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            Distribution::Poisson { rate } => rate > 0.0 && rate.is_finite(),
            Distribution::Binomial { trials, p } => trials >= 1 && (0.0..=1.0).contains(&p),
            Distribution::Gaussian { mean, variance } => mean.is_finite() && variance > 0.0 && variance.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidModel(format!("invalid distribution {self:?}")))
        }
    }

    /// `(family, parameter)` view of the distribution.
    pub fn as_family(&self) -> (Family, f64) {
        match *self {
            Distribution::Poisson { rate } => (Family::Poisson, rate),
            Distribution::Binomial { trials, p } => (Family::Binomial { trials }, p),
            Distribution::Gaussian { mean, variance } => (Family::Gaussian { variance }, mean),
        }
    }

    pub fn is_discrete(&self) -> bool {
        !matches!(self, Distribution::Gaussian { .. })
    }

    /// Log mass (discrete) or log density (gaussian) at `x`.
    pub fn ln_prob(&self, x: f64) -> f64 {
        match *self {
            Distribution::Poisson { rate } => {
                if x < 0.0 || x.fract() != 0.0 {
                    f64::NEG_INFINITY
                } else {
                    xlogy(x, rate) - rate - ln_factorial(x)
                }
            }
            Distribution::Binomial { trials, p } => {
                let m = f64::from(trials);
                if x < 0.0 || x > m || x.fract() != 0.0 {
                    f64::NEG_INFINITY
                } else {
                    ln_choose(m, x) + xlogy(x, p) + xlogy(m - x, 1.0 - p)
                }
            }
            Distribution::Gaussian { mean, variance } => {
                let d = x - mean;
                -0.5 * (LN_2PI + log(variance)) - d * d / (2.0 * variance)
            }
        }
    }

    /// `n` iid observations.
    pub fn sample_data(&self, n: usize, rng: &mut Stream) -> Result<DataSet> {
        self.validate()?;
        let obs: Vec<f64> = match *self {
            Distribution::Poisson { rate } => {
                let d = rand_distr::Poisson::new(rate).map_err(|_| Error::InvalidModel("poisson rate".into()))?;
                (0..n).map(|_| d.sample(rng)).collect()
            }
            Distribution::Binomial { trials, p } => {
                let d = rand_distr::Binomial::new(u64::from(trials), p)
                    .map_err(|_| Error::InvalidModel("binomial probability".into()))?;
                (0..n).map(|_| d.sample(rng) as f64).collect()
            }
            Distribution::Gaussian { mean, variance } => {
                let d = Normal::new(mean, sqrt(variance)).map_err(|_| Error::InvalidModel("gaussian".into()))?;
                (0..n).map(|_| d.sample(rng)).collect()
            }
        };
        DataSet::new(obs)
    }
}
