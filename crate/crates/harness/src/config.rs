//! TOML experiment configurations.

use std::path::Path;

use modelchoice_core::asymptotics::AsymptoticScenario;
use modelchoice_core::joint::ModelPairConfig;
use modelchoice_core::{DataSet, Distribution, Family, ModelSpec, PriorSpec};
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Poisson,
    Binomial,
    Gaussian,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PriorConfig {
    Gamma { shape: f64, rate: f64 },
    Beta { a: f64, b: f64 },
    Gaussian { mean: f64, variance: f64 },
    PointMass { value: f64 },
    ImproperPower { exponent: f64 },
}

impl From<PriorConfig> for PriorSpec {
    fn from(p: PriorConfig) -> Self {
        match p {
            PriorConfig::Gamma { shape, rate } => PriorSpec::Gamma { shape, rate },
            PriorConfig::Beta { a, b } => PriorSpec::Beta { a, b },
            PriorConfig::Gaussian { mean, variance } => PriorSpec::Gaussian { mean, variance },
            PriorConfig::PointMass { value } => PriorSpec::PointMass { value },
            PriorConfig::ImproperPower { exponent } => PriorSpec::ImproperPower { exponent },
        }
    }
}

fn family_of(kind: FamilyKind, trials: Option<u32>, variance: Option<f64>) -> Result<Family> {
    match (kind, trials, variance) {
        (FamilyKind::Poisson, None, None) => Ok(Family::Poisson),
        (FamilyKind::Binomial, Some(trials), None) => Ok(Family::Binomial { trials }),
        (FamilyKind::Gaussian, None, Some(variance)) => Ok(Family::Gaussian { variance }),
        (FamilyKind::Binomial, None, _) => Err(HarnessError::Usage("binomial family needs `trials`".into())),
        (FamilyKind::Gaussian, _, None) => Err(HarnessError::Usage("gaussian family needs `variance`".into())),
        _ => Err(HarnessError::Usage(format!("unexpected family parameters for {kind:?}"))),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub family: FamilyKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variance: Option<f64>,
    pub prior: PriorConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pseudo_prior: Option<PriorConfig>,
}

impl ModelConfig {
    pub fn family(&self) -> Result<Family> {
        family_of(self.family, self.trials, self.variance)
    }

    pub fn spec(&self) -> Result<ModelSpec> {
        Ok(ModelSpec::new(self.family()?, self.prior.into())?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairConfig {
    #[serde(default = "half")]
    pub prior_prob: f64,
    pub model1: ModelConfig,
    pub model2: ModelConfig,
}

fn half() -> f64 {
    0.5
}

impl PairConfig {
    pub fn build(&self) -> Result<ModelPairConfig> {
        Ok(ModelPairConfig::with_options(
            self.model1.spec()?,
            self.model2.spec()?,
            self.prior_prob,
            self.model1.pseudo_prior.map(Into::into),
            self.model2.pseudo_prior.map(Into::into),
        )?)
    }
}

/// Two-model comparison on observed data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub data: Vec<f64>,
    #[serde(flatten)]
    pub pair: PairConfig,
}

impl ComparisonConfig {
    pub fn dataset(&self) -> Result<DataSet> {
        Ok(DataSet::new(self.data.clone())?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddedCase {
    pub name: String,
    pub null_value: f64,
    pub data: Vec<f64>,
    #[serde(flatten)]
    pub model: ModelConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddedConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub draws: Option<usize>,
    #[serde(rename = "case")]
    pub cases: Vec<EmbeddedCase>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruthConfig {
    pub family: FamilyKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variance: Option<f64>,
    /// Poisson rate, binomial success probability or gaussian mean.
    pub parameter: f64,
}

impl TruthConfig {
    pub fn distribution(&self) -> Result<Distribution> {
        Ok(family_of(self.family, self.trials, self.variance)?.distribution(self.parameter)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub name: String,
    pub n_grid: Vec<usize>,
    pub replications: usize,
    /// Required final-n mean probability that the true model beats the false one.
    pub min_final: f64,
    pub truth: TruthConfig,
    #[serde(flatten)]
    pub pair: PairConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConsistencyConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Joint posterior draws per cell.
    pub draws: usize,
    #[serde(rename = "scenario")]
    pub scenarios: Vec<ScenarioConfig>,
}

impl ConsistencyConfig {
    pub fn scenario(&self, index: usize, seed: u64, draws: usize) -> Result<AsymptoticScenario> {
        let s = &self.scenarios[index];
        let scenario = AsymptoticScenario {
            truth: s.truth.distribution()?,
            pair: s.pair.build()?,
            n_grid: s.n_grid.clone(),
            replications: s.replications,
            seed: modelchoice_core::rng::derive_seed(seed, &[index as u64]),
            draws,
        };
        scenario.validate().map_err(|e| HarnessError::Usage(format!("scenario {}: {e}", s.name)))?;
        Ok(scenario)
    }
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str, origin: &str) -> Result<T> {
    toml::from_str(text).map_err(|e| HarnessError::Config { origin: origin.to_string(), message: e.to_string() })
}

pub fn load<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::Io { path: path.to_path_buf(), source: e })?;
    parse(&text, &path.display().to_string())
}

pub fn to_toml<T: Serialize>(config: &T) -> Result<String> {
    toml::to_string(config).map_err(|e| HarnessError::Config { origin: "serializer".into(), message: e.to_string() })
}

/// The shipped configurations, embedded so the binary runs without the source tree.
pub mod shipped {
    pub const FIG2: &str = include_str!("../configs/fig2.toml");
    pub const EMBEDDED: &str = include_str!("../configs/embedded.toml");
    pub const CONSISTENCY: &str = include_str!("../configs/consistency.toml");
}

pub fn model_label(m: &ModelSpec) -> String {
    let family = match m.family {
        Family::Poisson => "poisson".to_string(),
        Family::Binomial { trials } => format!("binomial({trials})"),
        Family::Gaussian { variance } => format!("gaussian(var={variance})"),
    };
    format!("{family}+{}", m.prior)
}
