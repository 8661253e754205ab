//! Command-line interface.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::config::{self, shipped, ComparisonConfig, ConsistencyConfig, EmbeddedConfig};
use crate::error::{HarnessError, Result};
use crate::experiments::{self as exp, Artifact, PredcheckParams, RunSummary, DEFAULT_DRAWS};
use crate::output::{write_atomic, Format, VERSION};

#[derive(Debug, Parser)]
#[command(name = "modelchoice", version, about = "Seeded Bayesian model-choice experiments")]
pub struct Cli {
    /// Seed for every random stream (default 42, or the config's `seed`).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Monte Carlo draws (default 100000; consistency uses its config value).
    #[arg(long, global = true)]
    pub draws: Option<usize>,
    /// Output directory, created if missing.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Record wall-clock time in comparison reports (makes output nondeterministic).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Product against joint likelihood-ratio draws for a two-model comparison.
    Fig2(ConfigArg),
    /// Exact beta-binomial predictive probability.
    Predcheck(PredcheckArgs),
    /// Point-null Bayes factor across prior scales.
    Lindley(LindleyArgs),
    /// Posterior Pr(LR > 1) against the likelihood ratio test for nested models.
    Embedded(ConfigArg),
    /// Decision-rule consistency as the sample size grows.
    Consistency(ConsistencyArgs),
    /// Every experiment with its default configuration, plus a summary.
    Report(SerialArg),
}

#[derive(Debug, Args)]
pub struct ConfigArg {
    /// TOML configuration; the shipped one when omitted.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SerialArg {
    /// Run consistency cells on one thread.
    #[arg(long)]
    pub serial: bool,
}

#[derive(Debug, Args)]
pub struct ConsistencyArgs {
    #[command(flatten)]
    pub config: ConfigArg,
    #[command(flatten)]
    pub serial: SerialArg,
}

#[derive(Debug, Args)]
pub struct PredcheckArgs {
    #[arg(long, default_value_t = 1)]
    pub successes: u64,
    #[arg(long, default_value_t = 10)]
    pub trials: u64,
    #[arg(long, default_value_t = 20)]
    pub future: u64,
    /// Largest number of future successes counted.
    #[arg(long, default_value_t = 2)]
    pub threshold: u64,
    #[arg(long, default_value_t = 1.0)]
    pub prior_a: f64,
    #[arg(long, default_value_t = 1.0)]
    pub prior_b: f64,
}

#[derive(Debug, Args)]
pub struct LindleyArgs {
    /// Comma-separated prior standard deviations.
    #[arg(long, value_delimiter = ',', default_value = "1,10,100,1000")]
    pub tau: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub xbar: f64,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long, default_value_t = 1.0)]
    pub variance: f64,
}

fn load_or<T: for<'de> serde::Deserialize<'de>>(path: &Option<PathBuf>, fallback: &str, name: &str) -> Result<T> {
    match path {
        Some(p) => config::load(p),
        None => config::parse(fallback, name),
    }
}

fn emit(out: &Path, format: Format, artifact: &dyn Artifact) -> Result<Vec<String>> {
    std::fs::create_dir_all(out).map_err(|e| HarnessError::Io { path: out.to_path_buf(), source: e })?;
    let files = artifact.files(format)?;
    let mut names = Vec::with_capacity(files.len());
    for (name, contents) in files {
        write_atomic(&out.join(&name), &contents)?;
        names.push(name);
    }
    Ok(names)
}

fn status(name: &str, artifact: &dyn Artifact, files: &[String], detail: String) {
    let verdict = match artifact.passed() {
        None => String::new(),
        Some(true) => " PASS".into(),
        Some(false) => " FAIL".into(),
    };
    println!("{name}:{verdict} {detail} [{}]", files.join(", "));
}

struct Runner<'a> {
    cli: &'a Cli,
}

impl Runner<'_> {
    fn seed(&self, config_seed: Option<u64>) -> u64 {
        self.cli.seed.or(config_seed).unwrap_or(42)
    }

    fn fig2(&self, arg: &ConfigArg) -> Result<(exp::Fig2Output, Vec<String>)> {
        let cfg: ComparisonConfig = load_or(&arg.config, shipped::FIG2, "fig2")?;
        let start = Instant::now();
        let mut out = exp::run_fig2(&cfg, self.seed(cfg.seed), self.cli.draws.unwrap_or(DEFAULT_DRAWS))?;
        if self.cli.timing {
            out.report.wall_time_seconds = Some(start.elapsed().as_secs_f64());
        }
        let files = emit(&self.cli.out, self.cli.format, &out)?;
        let r = &out.report;
        status(
            "fig2",
            &out,
            &files,
            format!(
                "BF {:.4}, Pr(LR>1) product {:.4} joint {:.4}, difference {:+.4} (z = {:.2})",
                r.bayes_factor, r.pr_lr_gt1_product, r.pr_lr_gt1_joint, r.direction_difference, r.direction_z
            ),
        );
        Ok((out, files))
    }

    fn predcheck(&self, a: &PredcheckArgs) -> Result<(exp::PredcheckRecord, Vec<String>)> {
        let rec = exp::run_predcheck(PredcheckParams {
            successes: a.successes,
            trials: a.trials,
            future_trials: a.future,
            threshold: a.threshold,
            prior_a: a.prior_a,
            prior_b: a.prior_b,
        })?;
        let files = emit(&self.cli.out, self.cli.format, &rec)?;
        status("predcheck", &rec, &files, rec.value_6dp.clone());
        Ok((rec, files))
    }

    fn lindley(&self, a: &LindleyArgs) -> Result<(exp::LindleyTable, Vec<String>)> {
        let t = exp::run_lindley(&a.tau, a.xbar, a.n, a.variance)?;
        let files = emit(&self.cli.out, self.cli.format, &t)?;
        let rows: Vec<String> = t.rows.iter().map(|r| format!("{}:{:.4}", r.tau, r.bayes_factor_01)).collect();
        status("lindley", &t, &files, format!("BF01 {} ({})", rows.join(" "), t.verdict));
        Ok((t, files))
    }

    fn embedded(&self, arg: &ConfigArg) -> Result<(exp::EmbeddedTable, Vec<String>)> {
        let cfg: EmbeddedConfig = load_or(&arg.config, shipped::EMBEDDED, "embedded")?;
        let draws = self.cli.draws.or(cfg.draws).unwrap_or(DEFAULT_DRAWS);
        let t = exp::run_embedded(&cfg, self.seed(cfg.seed), draws)?;
        let files = emit(&self.cli.out, self.cli.format, &t)?;
        let rows: Vec<String> =
            t.rows.iter().map(|r| format!("{} {:.4}/{:.4}", r.case, r.posterior_prob, r.lrt_pvalue)).collect();
        status("embedded", &t, &files, rows.join("; "));
        Ok((t, files))
    }

    fn consistency(&self, arg: &ConfigArg, serial: bool) -> Result<(exp::ConsistencyTable, Vec<String>)> {
        let cfg: ConsistencyConfig = load_or(&arg.config, shipped::CONSISTENCY, "consistency")?;
        let draws = self.cli.draws.unwrap_or(cfg.draws);
        let t = exp::run_consistency(&cfg, self.seed(cfg.seed), draws, !serial)?;
        let files = emit(&self.cli.out, self.cli.format, &t)?;
        let finals: Vec<String> = t
            .scenarios
            .iter()
            .map(|s| {
                let last = s.rows.last().expect("nonempty grid");
                format!("{} n={} {:.4}", s.name, last.n, last.mean_pr_true)
            })
            .collect();
        status("consistency", &t, &files, finals.join("; "));
        Ok((t, files))
    }

    fn report(&self, serial: bool) -> Result<RunSummary> {
        let mut summary = RunSummary { version: VERSION, seed: self.seed(None), entries: Vec::new() };
        let none = ConfigArg { config: None };
        let (a, f) = self.fig2(&none)?;
        summary.push("fig2", &a, f);
        let (a, f) = self.predcheck(&PredcheckArgs {
            successes: 1,
            trials: 10,
            future: 20,
            threshold: 2,
            prior_a: 1.0,
            prior_b: 1.0,
        })?;
        summary.push("predcheck", &a, f);
        let (a, f) = self.lindley(&LindleyArgs { tau: vec![1.0, 10.0, 100.0, 1000.0], xbar: 1.0, n: 1, variance: 1.0 })?;
        summary.push("lindley", &a, f);
        let (a, f) = self.embedded(&none)?;
        summary.push("embedded", &a, f);
        let (a, f) = self.consistency(&none, serial)?;
        summary.push("consistency", &a, f);
        let files = emit(&self.cli.out, self.cli.format, &summary)?;
        status("report", &summary, &files, String::new());
        Ok(summary)
    }
}

/// Runs the parsed command; the returned code is the process exit status.
pub fn run(cli: &Cli) -> i32 {
    let runner = Runner { cli };
    let outcome: Result<Option<bool>> = match &cli.command {
        Command::Fig2(a) => runner.fig2(a).map(|(x, _)| x.passed()),
        Command::Predcheck(a) => runner.predcheck(a).map(|(x, _)| x.passed()),
        Command::Lindley(a) => runner.lindley(a).map(|(x, _)| x.passed()),
        Command::Embedded(a) => runner.embedded(a).map(|(x, _)| x.passed()),
        Command::Consistency(a) => runner.consistency(&a.config, a.serial.serial).map(|(x, _)| x.passed()),
        Command::Report(a) => runner.report(a.serial).map(|s| Some(s.passed())),
    };
    match outcome {
        Ok(Some(false)) => {
            eprintln!("assertion failed; outputs were written for inspection");
            1
        }
        Ok(_) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
