//! Large-sample behaviour: chi-square calibration of posterior likelihood
//! ratios, the likelihood ratio test for embedded models, KL projections and
//! consistency of the joint decision rule.
//!
//! Log-likelihood gaps are mapped to the deviance scale (twice the gap)
//! before any chi-square comparison, so statistics follow the usual Wilks
//! calibration.

use alloc::format;
use alloc::vec::Vec;

use libm::{log, sqrt};
use rand_distr::{ChiSquared, Distribution as _};

use crate::joint::{self, ModelPairConfig};
use crate::math;
use crate::model::{Family, LogLikelihood, ModelSpec, PriorSpec};
use crate::rng;
use crate::stats::{self, Estimate};
use crate::{DataSet, Distribution, Error, ParamDraws, Result};

pub use crate::math::{chi2_cdf, chi2_sf};

/// A null model obtained by fixing the parameter of `full_model` at `null_value`.
///
/// All shipped families are one-dimensional, so the null has no free
/// parameters and the full model has one: `dims = (0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbeddedPair {
    pub full_model: ModelSpec,
    pub null_value: f64,
    pub dims: (u32, u32),
}

impl EmbeddedPair {
    pub fn new(full_model: ModelSpec, null_value: f64) -> Result<Self> {
        full_model.family.check_param(null_value)?;
        Ok(Self { full_model, null_value, dims: (0, 1) })
    }

    pub fn df(&self) -> u32 {
        self.dims.1 - self.dims.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LrtResult {
    /// `2 (l(θ̂) - l(ψ₀))`
    pub statistic: f64,
    pub df: u32,
    pub p_value: f64,
}

/// Wilks likelihood ratio test of `ψ = ψ₀` with closed-form MLEs.
pub fn lrt_pvalue(pair: &EmbeddedPair, data: &DataSet) -> Result<LrtResult> {
    let family = pair.full_model.family;
    let mle = family.mle(data)?;
    let on_boundary = match family {
        Family::Poisson => mle <= 0.0,
        Family::Binomial { .. } => mle <= 0.0 || mle >= 1.0,
        Family::Gaussian { .. } => false,
    };
    if on_boundary {
        return Err(Error::DegenerateMle(format!("{} MLE {mle}", family.name())));
    }
    let loglik = LogLikelihood::new(family, data)?;
    let statistic = (2.0 * (loglik.eval(mle)? - loglik.eval(pair.null_value)?)).max(0.0);
    let df = pair.df();
    Ok(LrtResult { statistic, df, p_value: math::chi2_sf(df, statistic) })
}

/// Posterior probability, under the full model, that the null-fixed
/// log-likelihood exceeds the log-likelihood at the drawn parameter.
pub fn embedded_posterior_lr_prob(pair: &EmbeddedPair, data: &DataSet, draws: &ParamDraws) -> Result<Estimate> {
    if draws.is_empty() {
        return Err(Error::EmptyDraws);
    }
    let loglik = LogLikelihood::new(pair.full_model.family, data)?;
    let null = loglik.eval(pair.null_value)?;
    let mut hits = 0usize;
    for &t in &draws.values {
        if null > loglik.eval(t)? {
            hits += 1;
        }
    }
    let p = hits as f64 / draws.len() as f64;
    Ok(Estimate { value: p, std_error: stats::proportion_se(p, draws.len()) })
}

/// Monte Carlo `Pr[χ²_{p₂} − χ²_{p₁} > deviance_gap]` with independent chi-squares.
///
/// `deviance_gap` is on the deviance scale, `2 (l²(θ̂₂) − l¹(θ̂₁))`.
pub fn aitkin_asymptotic_prob(p1: u32, p2: u32, deviance_gap: f64, count: usize, seed: u64) -> Result<Estimate> {
    if count == 0 {
        return Err(Error::EmptyDraws);
    }
    let chi = |df: u32| -> Result<Option<ChiSquared<f64>>> {
        if df == 0 {
            return Ok(None);
        }
        ChiSquared::new(f64::from(df)).map(Some).map_err(|_| Error::InvalidArgument(format!("df {df}")))
    };
    let (c1, c2) = (chi(p1)?, chi(p2)?);
    let mut rng = rng::stream(seed, 0);
    let mut hits = 0usize;
    for _ in 0..count {
        let a = c2.map_or(0.0, |d| d.sample(&mut rng));
        let b = c1.map_or(0.0, |d| d.sample(&mut rng));
        if a - b > deviance_gap {
            hits += 1;
        }
    }
    let p = hits as f64 / count as f64;
    Ok(Estimate { value: p, std_error: stats::proportion_se(p, count) })
}

/// `KL(truth ‖ candidate)`; `+∞` when the truth puts mass where the candidate has none.
pub fn kl_divergence(truth: &Distribution, candidate: &Distribution) -> f64 {
    match (*truth, *candidate) {
        (Distribution::Gaussian { mean: m1, variance: v1 }, Distribution::Gaussian { mean: m2, variance: v2 }) => {
            0.5 * log(v2 / v1) + (v1 + (m1 - m2) * (m1 - m2)) / (2.0 * v2) - 0.5
        }
        (t, c) if t.is_discrete() && c.is_discrete() => {
            let mut total = 0.0;
            for k in discrete_support(&t) {
                let lp = t.ln_prob(k);
                if lp == f64::NEG_INFINITY {
                    continue;
                }
                let lq = c.ln_prob(k);
                if lq == f64::NEG_INFINITY {
                    return f64::INFINITY;
                }
                total += libm::exp(lp) * (lp - lq);
            }
            total.max(0.0)
        }
        _ => f64::INFINITY,
    }
}

fn discrete_support(d: &Distribution) -> impl Iterator<Item = f64> {
    let upper = match *d {
        Distribution::Binomial { trials, .. } => f64::from(trials),
        // mass beyond rate + 40 sd + 50 is far below double precision
        Distribution::Poisson { rate } => libm::ceil(rate + 40.0 * sqrt(rate) + 50.0),
        Distribution::Gaussian { .. } => 0.0,
    };
    (0..=upper as u64).map(|k| k as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KlProjection {
    pub parameter: f64,
    pub divergence: f64,
}

/// Golden-section minimization of `θ ↦ KL(truth ‖ family(θ))` over `bracket`.
pub fn kl_projection(truth: &Distribution, family: Family, bracket: (f64, f64), tol: f64) -> Result<KlProjection> {
    truth.validate()?;
    family.validate()?;
    let (mut lo, mut hi) = bracket;
    if !(lo < hi) || !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("bad bracket {bracket:?} or tolerance {tol}")));
    }
    let objective = |theta: f64| family.distribution(theta).map_or(f64::INFINITY, |c| kl_divergence(truth, &c));
    const PROBES: usize = 64;
    let any_finite = (0..=PROBES).any(|i| objective(lo + (hi - lo) * i as f64 / PROBES as f64).is_finite());
    if !any_finite {
        return Err(Error::AllInfinite);
    }
    let inv_phi = (sqrt(5.0) - 1.0) / 2.0;
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let (mut fc, mut fd) = (objective(c), objective(d));
    while hi - lo > tol {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = objective(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = objective(d);
        }
    }
    let parameter = 0.5 * (lo + hi);
    Ok(KlProjection { parameter, divergence: objective(parameter) })
}

/// Repeated data sets from a known truth, scored by the joint decision probability.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticScenario {
    pub truth: Distribution,
    pub pair: ModelPairConfig,
    pub n_grid: Vec<usize>,
    pub replications: usize,
    pub seed: u64,
    /// Joint posterior draws per cell.
    pub draws: usize,
}

impl AsymptoticScenario {
    pub fn validate(&self) -> Result<()> {
        self.truth.validate()?;
        self.pair.validate()?;
        if self.n_grid.is_empty() {
            return Err(Error::InvalidArgument("empty sample-size grid".into()));
        }
        if self.n_grid[0] == 0 || self.n_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(format!("sample sizes {:?} must be positive and strictly increasing", self.n_grid)));
        }
        if self.replications == 0 || self.draws == 0 {
            return Err(Error::InvalidArgument("replications and draws must be at least 1".into()));
        }
        Ok(())
    }

    /// Index (1 or 2) of the model containing the truth; the point-mass model wins when both do.
    pub fn true_model(&self) -> Result<u8> {
        let (family, theta) = self.truth.as_family();
        let contains = |m: &ModelSpec| {
            m.family == family
                && match m.prior {
                    PriorSpec::PointMass { value } => value == theta,
                    _ => m.family.in_space(theta),
                }
        };
        let (c1, c2) = (contains(&self.pair.model1), contains(&self.pair.model2));
        match (c1, c2) {
            (true, true) if self.pair.model2.prior.is_point_mass() && !self.pair.model1.prior.is_point_mass() => Ok(2),
            (true, _) => Ok(1),
            (false, true) => Ok(2),
            (false, false) => Err(Error::InvalidArgument("truth lies in neither model".into())),
        }
    }

    /// Seed of the cell `(n_index, replication)`, independent of execution order.
    pub fn cell_seed(&self, n_index: usize, replication: usize) -> u64 {
        rng::derive_seed(self.seed, &[n_index as u64, replication as u64])
    }
}

/// `Pr^π[f(xⁿ|θ₂) < f(xⁿ|θ₁) | xⁿ]` for one simulated data set.
pub fn consistency_cell(scenario: &AsymptoticScenario, n_index: usize, replication: usize) -> Result<f64> {
    let n = *scenario
        .n_grid
        .get(n_index)
        .ok_or_else(|| Error::InvalidArgument(format!("grid index {n_index} out of range")))?;
    let cell_seed = scenario.cell_seed(n_index, replication);
    let mut data_rng = rng::stream(cell_seed, 0);
    let data = scenario.truth.sample_data(n, &mut data_rng)?;
    let draw_seed = rng::derive_seed(cell_seed, &[1]);
    Ok(joint::prob_f1_beats_f2_direct(&scenario.pair, &data, scenario.draws, draw_seed)?.value)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConsistencyRow {
    pub n: usize,
    /// Mean over replications of the probability that model 1 beats model 2.
    pub mean_pr_model1: f64,
    /// Mean probability that the true model beats the false one.
    pub mean_pr_true: f64,
    /// Sample standard deviation of the latter (0 for a single replication).
    pub std_pr_true: f64,
}

/// Summarizes `cells[n_index][replication]` probabilities of model 1 beating model 2.
pub fn summarize_consistency(scenario: &AsymptoticScenario, cells: &[Vec<f64>]) -> Result<Vec<ConsistencyRow>> {
    let true_model = scenario.true_model()?;
    Ok(scenario
        .n_grid
        .iter()
        .zip(cells)
        .map(|(&n, row)| {
            let truthful: Vec<f64> = row.iter().map(|&p| if true_model == 1 { p } else { 1.0 - p }).collect();
            ConsistencyRow {
                n,
                mean_pr_model1: stats::mean(row),
                mean_pr_true: stats::mean(&truthful),
                std_pr_true: stats::std_dev(&truthful),
            }
        })
        .collect())
}

/// Serial consistency experiment; one row per sample size.
pub fn consistency_experiment(scenario: &AsymptoticScenario) -> Result<Vec<ConsistencyRow>> {
    scenario.validate()?;
    let cells = (0..scenario.n_grid.len())
        .map(|i| (0..scenario.replications).map(|r| consistency_cell(scenario, i, r)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    summarize_consistency(scenario, &cells)
}

/// Builds `n` gaussian observations with sample mean exactly `mean`
/// (symmetric ±spread deviations around it).
pub fn gaussian_data_with_mean(mean: f64, n: usize, spread: f64) -> DataSet {
    let mut obs: Vec<f64> = (0..n / 2).flat_map(|i| {
        let d = spread * (1.0 + i as f64 / n as f64);
        [mean + d, mean - d]
    }).collect();
    if n % 2 == 1 {
        obs.push(mean);
    }
    DataSet::new(obs).expect("finite")
}
