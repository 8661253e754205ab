//! One runner per subcommand. Runners compute; the CLI writes.

use modelchoice_core::aitkin::{self, DicEstimator, LrSample};
use modelchoice_core::asymptotics::{self, consistency_cell, ConsistencyRow, EmbeddedPair};
use modelchoice_core::joint::{self, DecisionOutcome};
use modelchoice_core::model::{marginal_likelihood, sample_posterior};
use modelchoice_core::quadrature::{marginal_likelihood_quadrature, QuadratureSpec};
use modelchoice_core::rng::derive_seed;
use modelchoice_core::stats;
use modelchoice_core::{DataSet, PriorSpec};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{model_label, ComparisonConfig, ConsistencyConfig, EmbeddedConfig};
use crate::error::{HarnessError, Result};
use crate::histogram::{shared_histograms, HistogramData};
use crate::output::{fmt_num, to_json, CsvTable, Format, RNG, VERSION};

pub const MIN_FIG2_DRAWS: usize = 1_000;
pub const DEFAULT_DRAWS: usize = 100_000;
/// One-sided 99% normal quantile for the direction check.
pub const Z_99: f64 = 2.326_347_874;
/// Standard errors allowed between two Monte Carlo estimates that should agree.
pub const AGREEMENT_SE: f64 = 3.0;

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Files produced by a runner, and whether its built-in check passed.
pub trait Artifact {
    fn files(&self, format: Format) -> Result<Vec<(String, String)>>;
    /// `None` when the run carries no PASS/FAIL check.
    fn passed(&self) -> Option<bool>;
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DicSummary {
    pub d_bar: f64,
    pub d_bar_std_error: f64,
    pub d_hat: f64,
    pub p_d: f64,
    pub dic: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogLrSummary {
    pub median: f64,
    pub mean: f64,
}

impl LogLrSummary {
    fn of(sample: &LrSample) -> Self {
        Self { median: stats::quantile(&sample.log_ratios, 0.5), mean: stats::mean(&sample.log_ratios) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Decision {
    pub chosen_model: u8,
    pub prob_f1_beats_f2: f64,
    pub threshold: f64,
}

impl From<DecisionOutcome> for Decision {
    fn from(d: DecisionOutcome) -> Self {
        Self { chosen_model: d.chosen_model, prob_f1_beats_f2: d.prob_f1_beats_f2, threshold: d.threshold }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecompositionCheck {
    pub direct: f64,
    pub direct_std_error: f64,
    pub decomposed: f64,
    pub decomposed_std_error: f64,
    pub combined_std_error: f64,
    pub verdict: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub version: &'static str,
    pub rng: &'static str,
    pub seed: u64,
    pub draws: usize,
    pub model1: String,
    pub model2: String,
    pub data: Vec<f64>,
    pub marginal1: f64,
    pub marginal2: f64,
    pub bayes_factor: f64,
    pub bayes_factor_quadrature: f64,
    pub posterior_prob1: f64,
    pub posterior_prob2: f64,
    pub dic1: DicSummary,
    pub dic2: DicSummary,
    pub pr_lr_gt1_product: f64,
    pub pr_lr_gt1_product_std_error: f64,
    pub pr_lr_gt1_joint: f64,
    pub pr_lr_gt1_joint_std_error: f64,
    /// `pr_lr_gt1_joint - pr_lr_gt1_product`.
    pub direction_difference: f64,
    pub direction_z: f64,
    /// PASS when the joint exceedance probability is larger at one-sided 99% confidence.
    pub direction_verdict: &'static str,
    pub log_lr_product: LogLrSummary,
    pub log_lr_joint: LogLrSummary,
    pub decision: Decision,
    pub decomposition: DecompositionCheck,
    pub wall_time_seconds: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fig2Output {
    pub report: ComparisonReport,
    pub histograms: Vec<HistogramData>,
}

fn dic_summary(r: aitkin::DicReport) -> DicSummary {
    DicSummary { d_bar: r.d_bar, d_bar_std_error: r.d_bar_std_error, d_hat: r.d_hat, p_d: r.p_d, dic: r.dic }
}

/// Product and joint likelihood-ratio comparison for a two-model configuration.
///
/// Joint draws use stream 0 of `seed` and product draws streams 1 and 2; DIC
/// draws come from seeds derived from `seed`.
pub fn run_fig2(config: &ComparisonConfig, seed: u64, draws: usize) -> Result<Fig2Output> {
    if draws < MIN_FIG2_DRAWS {
        return Err(HarnessError::Usage(format!("--draws must be at least {MIN_FIG2_DRAWS}, got {draws}")));
    }
    let pair = config.pair.build()?;
    let data = config.dataset()?;
    let (m1, m2) = (pair.model1, pair.model2);
    let marginal1 = marginal_likelihood(&m1, &data)?;
    let marginal2 = marginal_likelihood(&m2, &data)?;
    let spec = QuadratureSpec::default();
    let bayes_factor_quadrature =
        marginal_likelihood_quadrature(&m1, &data, &spec)?.value / marginal_likelihood_quadrature(&m2, &data, &spec)?.value;
    let (posterior_prob1, posterior_prob2) = joint::posterior_model_probs(&pair, &data)?;

    let dic_for = |k: u64, m| -> Result<DicSummary> {
        let d = sample_posterior(m, &data, draws, derive_seed(seed, &[3, k]))?;
        Ok(dic_summary(aitkin::dic(m, &data, &d, DicEstimator::PosteriorMean)?))
    };
    let (dic1, dic2) = (dic_for(1, &m1)?, dic_for(2, &m2)?);

    let product = aitkin::lr_product_draws(&m1, &m2, &data, draws, seed)?;
    let joint_lr = joint::lr_joint_draws(&pair, &data, draws, seed)?;
    let (pp, pj) = (product.prob_exceeds_one(), joint_lr.prob_exceeds_one());
    let (sp, sj) = (product.prob_exceeds_one_se(), joint_lr.prob_exceeds_one_se());
    let diff = pj - pp;
    let se = (sp * sp + sj * sj).sqrt();
    let direction_z = if se > 0.0 { diff / se } else if diff > 0.0 { f64::INFINITY } else { 0.0 };

    let decomposition = joint::prob_f1_beats_f2(&pair, &data, draws, seed)?;
    let decision = joint::decide(decomposition.direct.value);

    let histograms = shared_histograms(&[
        (aitkin::Construction::Product.label(), &product.log_ratios),
        (aitkin::Construction::Joint.label(), &joint_lr.log_ratios),
    ]);

    let report = ComparisonReport {
        version: VERSION,
        rng: RNG,
        seed,
        draws,
        model1: model_label(&m1),
        model2: model_label(&m2),
        data: config.data.clone(),
        marginal1,
        marginal2,
        bayes_factor: marginal1 / marginal2,
        bayes_factor_quadrature,
        posterior_prob1,
        posterior_prob2,
        dic1,
        dic2,
        pr_lr_gt1_product: pp,
        pr_lr_gt1_product_std_error: sp,
        pr_lr_gt1_joint: pj,
        pr_lr_gt1_joint_std_error: sj,
        direction_difference: diff,
        direction_z,
        direction_verdict: verdict(direction_z > Z_99),
        log_lr_product: LogLrSummary::of(&product),
        log_lr_joint: LogLrSummary::of(&joint_lr),
        decision: decision.into(),
        decomposition: DecompositionCheck {
            direct: decomposition.direct.value,
            direct_std_error: decomposition.direct.std_error,
            decomposed: decomposition.decomposed.value,
            decomposed_std_error: decomposition.decomposed.std_error,
            combined_std_error: decomposition.combined_std_error(),
            verdict: verdict(decomposition.agree(AGREEMENT_SE)),
        },
        wall_time_seconds: None,
    };
    Ok(Fig2Output { report, histograms })
}

fn histogram_table(h: &HistogramData, seed: u64, draws: usize) -> CsvTable {
    let mut t = CsvTable::new(&["edge", "count"]);
    t.meta("construction", &h.construction).meta("seed", seed).meta("draws", draws).meta("rng", RNG);
    t.meta("total", h.total).meta("upper_edge", fmt_num(*h.edges.last().expect("edges")));
    for (e, c) in h.edges.iter().zip(&h.counts) {
        t.row(vec![fmt_num(*e), c.to_string()]);
    }
    t
}

impl Artifact for Fig2Output {
    fn files(&self, format: Format) -> Result<Vec<(String, String)>> {
        let r = &self.report;
        Ok(match format {
            Format::Json => vec![("fig2.json".into(), to_json(self))],
            Format::Csv => {
                let mut t = CsvTable::new(&["field", "value"]);
                t.meta("seed", r.seed).meta("draws", r.draws).meta("rng", RNG);
                let value = serde_json::to_value(r).expect("report serializes");
                flatten_fields("", &value, &mut t);
                let mut files = vec![("fig2_report.csv".into(), t.render()?)];
                for h in &self.histograms {
                    files.push((format!("fig2_hist_{}.csv", h.construction), histogram_table(h, r.seed, r.draws).render()?));
                }
                files
            }
        })
    }

    fn passed(&self) -> Option<bool> {
        Some(self.report.direction_verdict == "PASS")
    }
}

fn flatten_fields(prefix: &str, v: &serde_json::Value, t: &mut CsvTable) {
    use serde_json::Value;
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten_fields(&key, child, t);
            }
        }
        Value::Array(items) => {
            let cells: Vec<String> = items.iter().map(scalar).collect();
            t.row(vec![prefix.to_string(), cells.join(" ")]);
        }
        _ => t.row(vec![prefix.to_string(), scalar(v)]),
    }
}

fn scalar(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Number(n) => n.as_f64().map_or_else(|| n.to_string(), fmt_num),
        serde_json::Value::String(s) => s.clone(),
        serde_json::Value::Null => String::new(),
        other => other.to_string(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PredcheckParams {
    pub successes: u64,
    pub trials: u64,
    pub future_trials: u64,
    pub threshold: u64,
    pub prior_a: f64,
    pub prior_b: f64,
}

impl Default for PredcheckParams {
    fn default() -> Self {
        Self { successes: 1, trials: 10, future_trials: 20, threshold: 2, prior_a: 1.0, prior_b: 1.0 }
    }
}

pub const PREDCHECK_TARGET: f64 = 0.447;
pub const PREDCHECK_TOLERANCE: f64 = 0.001;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PredcheckRecord {
    pub version: &'static str,
    pub successes: u64,
    pub trials: u64,
    pub future_trials: u64,
    pub threshold: u64,
    pub prior: String,
    pub value: f64,
    pub value_6dp: String,
    /// Only present for the reference configuration.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<&'static str>,
}

/// Exact `Pr(Y ≤ threshold)` for future successes under the beta-binomial predictive.
pub fn run_predcheck(p: PredcheckParams) -> Result<PredcheckRecord> {
    let prior = PriorSpec::Beta { a: p.prior_a, b: p.prior_b };
    let value = aitkin::beta_binomial_predictive(p.successes, p.trials, p.future_trials, p.threshold, prior)?;
    let verdict = (p == PredcheckParams::default()).then(|| verdict((value - PREDCHECK_TARGET).abs() <= PREDCHECK_TOLERANCE));
    Ok(PredcheckRecord {
        version: VERSION,
        successes: p.successes,
        trials: p.trials,
        future_trials: p.future_trials,
        threshold: p.threshold,
        prior: prior.to_string(),
        value,
        value_6dp: format!("{value:.6}"),
        verdict,
    })
}

impl Artifact for PredcheckRecord {
    fn files(&self, format: Format) -> Result<Vec<(String, String)>> {
        Ok(match format {
            Format::Json => vec![("predcheck.json".into(), to_json(self))],
            Format::Csv => {
                let mut t = CsvTable::new(&["successes", "trials", "future_trials", "threshold", "prior", "value", "verdict"]);
                t.row(vec![
                    self.successes.to_string(),
                    self.trials.to_string(),
                    self.future_trials.to_string(),
                    self.threshold.to_string(),
                    self.prior.clone(),
                    self.value_6dp.clone(),
                    self.verdict.unwrap_or("").to_string(),
                ]);
                vec![("predcheck.csv".into(), t.render()?)]
            }
        })
    }

    fn passed(&self) -> Option<bool> {
        self.verdict.map(|v| v == "PASS")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LindleyRow {
    pub tau: f64,
    pub bayes_factor_01: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LindleyTable {
    pub version: &'static str,
    pub null_value: f64,
    pub variance: f64,
    pub n: usize,
    pub sample_mean: f64,
    pub rows: Vec<LindleyRow>,
    /// PASS when the Bayes factor strictly increases with τ; n/a for one row.
    pub verdict: &'static str,
}

/// Point-null Bayes factor against `N(0, τ²)` alternatives, rows sorted by τ.
pub fn run_lindley(taus: &[f64], sample_mean: f64, n: usize, variance: f64) -> Result<LindleyTable> {
    if taus.is_empty() {
        return Err(HarnessError::Usage("--tau grid is empty".into()));
    }
    if let Some(t) = taus.iter().find(|t| !(t.is_finite() && **t > 0.0)) {
        return Err(HarnessError::Usage(format!("--tau values must be positive, got {t}")));
    }
    if n == 0 {
        return Err(HarnessError::Usage("--n must be at least 1".into()));
    }
    let mut sorted = taus.to_vec();
    sorted.sort_by(f64::total_cmp);
    let data = asymptotics::gaussian_data_with_mean(sample_mean, n, 1.0);
    let rows: Vec<LindleyRow> = joint::lindley_sweep(0.0, variance, &data, &sorted)?
        .into_iter()
        .map(|(tau, bayes_factor_01)| LindleyRow { tau, bayes_factor_01 })
        .collect();
    let verdict = if rows.len() == 1 {
        "n/a"
    } else {
        verdict(rows.windows(2).all(|w| w[1].bayes_factor_01 > w[0].bayes_factor_01))
    };
    Ok(LindleyTable { version: VERSION, null_value: 0.0, variance, n, sample_mean, rows, verdict })
}

impl Artifact for LindleyTable {
    fn files(&self, format: Format) -> Result<Vec<(String, String)>> {
        Ok(match format {
            Format::Json => vec![("lindley.json".into(), to_json(self))],
            Format::Csv => {
                let mut t = CsvTable::new(&["tau", "bayes_factor_01"]);
                t.meta("null_value", fmt_num(self.null_value))
                    .meta("variance", fmt_num(self.variance))
                    .meta("n", self.n)
                    .meta("sample_mean", fmt_num(self.sample_mean))
                    .meta("verdict", self.verdict);
                for r in &self.rows {
                    t.row(vec![fmt_num(r.tau), fmt_num(r.bayes_factor_01)]);
                }
                vec![("lindley.csv".into(), t.render()?)]
            }
        })
    }

    fn passed(&self) -> Option<bool> {
        match self.verdict {
            "n/a" => None,
            v => Some(v == "PASS"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmbeddedRow {
    pub case: String,
    pub n: usize,
    pub sample_mean: f64,
    pub null_value: f64,
    pub posterior_prob: f64,
    pub posterior_prob_std_error: f64,
    pub lrt_statistic: f64,
    pub lrt_pvalue: f64,
    pub abs_difference: f64,
    pub verdict: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmbeddedTable {
    pub version: &'static str,
    pub rng: &'static str,
    pub seed: u64,
    pub draws: usize,
    pub rows: Vec<EmbeddedRow>,
}

/// Posterior `Pr(l(ψ₀) > l(ψ))` beside the likelihood ratio test p-value, per case.
pub fn run_embedded(config: &EmbeddedConfig, seed: u64, draws: usize) -> Result<EmbeddedTable> {
    if draws == 0 {
        return Err(HarnessError::Usage("--draws must be positive".into()));
    }
    let rows = config
        .cases
        .iter()
        .enumerate()
        .map(|(i, case)| {
            let model = case.model.spec()?;
            let data = DataSet::new(case.data.clone())?;
            let pair = EmbeddedPair::new(model, case.null_value)?;
            let d = sample_posterior(&model, &data, draws, derive_seed(seed, &[i as u64]))?;
            let est = asymptotics::embedded_posterior_lr_prob(&pair, &data, &d)?;
            let lrt = asymptotics::lrt_pvalue(&pair, &data)?;
            let abs_difference = (est.value - lrt.p_value).abs();
            Ok(EmbeddedRow {
                case: case.name.clone(),
                n: data.len(),
                sample_mean: data.mean(),
                null_value: case.null_value,
                posterior_prob: est.value,
                posterior_prob_std_error: est.std_error,
                lrt_statistic: lrt.statistic,
                lrt_pvalue: lrt.p_value,
                abs_difference,
                verdict: verdict(abs_difference < AGREEMENT_SE * est.std_error),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EmbeddedTable { version: VERSION, rng: RNG, seed, draws, rows })
}

impl Artifact for EmbeddedTable {
    fn files(&self, format: Format) -> Result<Vec<(String, String)>> {
        Ok(match format {
            Format::Json => vec![("embedded.json".into(), to_json(self))],
            Format::Csv => {
                let mut t = CsvTable::new(&[
                    "case", "n", "sample_mean", "null_value", "posterior_prob", "posterior_prob_std_error",
                    "lrt_statistic", "lrt_pvalue", "abs_difference", "verdict",
                ]);
                t.meta("seed", self.seed).meta("draws", self.draws).meta("rng", RNG);
                for r in &self.rows {
                    t.row(vec![
                        r.case.clone(),
                        r.n.to_string(),
                        fmt_num(r.sample_mean),
                        fmt_num(r.null_value),
                        fmt_num(r.posterior_prob),
                        fmt_num(r.posterior_prob_std_error),
                        fmt_num(r.lrt_statistic),
                        fmt_num(r.lrt_pvalue),
                        fmt_num(r.abs_difference),
                        r.verdict.to_string(),
                    ]);
                }
                vec![("embedded.csv".into(), t.render()?)]
            }
        })
    }

    fn passed(&self) -> Option<bool> {
        Some(self.rows.iter().all(|r| r.verdict == "PASS"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioResult {
    pub name: String,
    pub true_model: u8,
    pub min_final: f64,
    pub rows: Vec<ScenarioRow>,
    /// PASS when the final-n mean exceeds both `min_final` and the first-n mean.
    pub verdict: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScenarioRow {
    pub n: usize,
    pub mean_pr_model1: f64,
    pub mean_pr_true: f64,
    pub std_pr_true: f64,
}

impl From<ConsistencyRow> for ScenarioRow {
    fn from(r: ConsistencyRow) -> Self {
        Self { n: r.n, mean_pr_model1: r.mean_pr_model1, mean_pr_true: r.mean_pr_true, std_pr_true: r.std_pr_true }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConsistencyTable {
    pub version: &'static str,
    pub rng: &'static str,
    pub seed: u64,
    pub draws: usize,
    pub scenarios: Vec<ScenarioResult>,
}

/// Runs every scenario; cells run on the rayon pool when `parallel` is set.
/// Each cell seeds itself from its grid position, so the mode does not change the numbers.
pub fn run_consistency(config: &ConsistencyConfig, seed: u64, draws: usize, parallel: bool) -> Result<ConsistencyTable> {
    if draws == 0 {
        return Err(HarnessError::Usage("--draws must be positive".into()));
    }
    if config.scenarios.is_empty() {
        return Err(HarnessError::Usage("no consistency scenarios configured".into()));
    }
    let scenarios = (0..config.scenarios.len())
        .map(|i| {
            let sc = config.scenario(i, seed, draws)?;
            let rows = if parallel {
                let cells: Vec<(usize, usize)> =
                    (0..sc.n_grid.len()).flat_map(|n| (0..sc.replications).map(move |r| (n, r))).collect();
                let flat = cells
                    .par_iter()
                    .map(|&(n, r)| consistency_cell(&sc, n, r))
                    .collect::<modelchoice_core::Result<Vec<f64>>>()?;
                let grid: Vec<Vec<f64>> = flat.chunks(sc.replications).map(<[f64]>::to_vec).collect();
                asymptotics::summarize_consistency(&sc, &grid)?
            } else {
                asymptotics::consistency_experiment(&sc)?
            };
            let rows: Vec<ScenarioRow> = rows.into_iter().map(Into::into).collect();
            let (first, last) = (rows[0].mean_pr_true, rows[rows.len() - 1].mean_pr_true);
            let spec = &config.scenarios[i];
            Ok(ScenarioResult {
                name: spec.name.clone(),
                true_model: sc.true_model()?,
                min_final: spec.min_final,
                verdict: verdict(last > spec.min_final && (rows.len() == 1 || last > first)),
                rows,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConsistencyTable { version: VERSION, rng: RNG, seed, draws, scenarios })
}

impl Artifact for ConsistencyTable {
    fn files(&self, format: Format) -> Result<Vec<(String, String)>> {
        Ok(match format {
            Format::Json => vec![("consistency.json".into(), to_json(self))],
            Format::Csv => self
                .scenarios
                .iter()
                .map(|s| {
                    let mut t = CsvTable::new(&["n", "mean_pr_model1", "mean_pr_true", "std_pr_true"]);
                    t.meta("scenario", &s.name)
                        .meta("true_model", s.true_model)
                        .meta("min_final", fmt_num(s.min_final))
                        .meta("verdict", s.verdict)
                        .meta("seed", self.seed)
                        .meta("draws", self.draws)
                        .meta("rng", RNG);
                    for r in &s.rows {
                        t.row(vec![r.n.to_string(), fmt_num(r.mean_pr_model1), fmt_num(r.mean_pr_true), fmt_num(r.std_pr_true)]);
                    }
                    Ok((format!("consistency_{}.csv", s.name), t.render()?))
                })
                .collect::<Result<Vec<_>>>()?,
        })
    }

    fn passed(&self) -> Option<bool> {
        Some(self.scenarios.iter().all(|s| s.verdict == "PASS"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryEntry {
    pub subcommand: &'static str,
    pub verdict: &'static str,
    pub files: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSummary {
    pub version: &'static str,
    pub seed: u64,
    pub entries: Vec<SummaryEntry>,
}

impl RunSummary {
    pub fn push(&mut self, subcommand: &'static str, artifact: &dyn Artifact, files: Vec<String>) {
        let verdict = match artifact.passed() {
            None => "n/a",
            Some(p) => verdict(p),
        };
        self.entries.push(SummaryEntry { subcommand, verdict, files });
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.verdict != "FAIL")
    }
}

impl Artifact for RunSummary {
    fn files(&self, format: Format) -> Result<Vec<(String, String)>> {
        Ok(match format {
            Format::Json => vec![("report.json".into(), to_json(self))],
            Format::Csv => {
                let mut t = CsvTable::new(&["subcommand", "verdict", "files"]);
                t.meta("seed", self.seed);
                for e in &self.entries {
                    t.row(vec![e.subcommand.to_string(), e.verdict.to_string(), e.files.join(" ")]);
                }
                vec![("report.csv".into(), t.render()?)]
            }
        })
    }

    fn passed(&self) -> Option<bool> {
        Some(RunSummary::passed(self))
    }
}
