//! Argument parsing and command execution for `betaens`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use beta_ensembles::distances::{
    clt_harness, kl_estimate, tv_estimate, CltMode, CltRegime, CltReport, Estimate, ShardPlan,
};
use beta_ensembles::ensembles::{sample_spectrum, EnsembleParams, SpectrumKind};
use beta_ensembles::moments::{
    aux_sequences, jacobi_moment_estimates, laguerre_exact_stats, AuxSequences, JacobiMomentEstimates, LaguerreStats,
};
use beta_ensembles::numerics::SummaryStats;
use beta_ensembles::regimes::{make_schedule, scan, RegimeKind, ScanMetric, ScanOutcome};
use beta_ensembles::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "betaens",
    version,
    about = "Sample beta-Jacobi / beta-Laguerre ensembles and estimate distances between them"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Draw spectra from one ensemble
    Sample(SampleArgs),
    /// Closed-form moment formulas, optionally checked by simulation
    Moments(MomentsArgs),
    /// Monte Carlo TV or KL distance between L(2aλ) and L(μ)
    Distance(DistanceArgs),
    /// CLT check for the U_m, log L'_m or quadratic statistic
    Clt(CltArgs),
    /// Distance or CLT estimates along a regime schedule
    Scan(ScanArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output format (CSV for `sample`, JSON elsewhere, unless set)
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of independent random streams
    #[arg(long, default_value_t = 1)]
    pub shards: usize,
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    #[arg(long)]
    pub beta: f64,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub a1: f64,
    #[arg(long)]
    pub a2: Option<f64>,
}

impl ParamArgs {
    fn params(&self) -> Result<EnsembleParams, Error> {
        EnsembleParams::new(self.beta, self.m, self.a1, self.a2)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum EnsembleArg {
    Laguerre,
    Jacobi,
    JacobiScaled,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long, value_enum)]
    pub ensemble: EnsembleArg,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Number of spectra
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[command(flatten)]
    pub run: RunArgs,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct MomentsArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Monte Carlo replicates for a simulation check of the Laguerre formulas
    #[arg(long)]
    pub n: Option<usize>,
    #[command(flatten)]
    pub run: RunArgs,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum MetricArg {
    Tv,
    Kl,
}

#[derive(Debug, Args)]
pub struct DistanceArgs {
    #[arg(long, value_enum)]
    pub metric: MetricArg,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 10_000)]
    pub n: usize,
    #[command(flatten)]
    pub run: RunArgs,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum CltRegimeArg {
    A2,
    A3,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum CltModeArg {
    CenteredU,
    LogLmPrime,
    Quadratic,
}

impl From<CltModeArg> for CltMode {
    fn from(m: CltModeArg) -> Self {
        match m {
            CltModeArg::CenteredU => CltMode::CenteredU,
            CltModeArg::LogLmPrime => CltMode::LogLmPrime,
            CltModeArg::Quadratic => CltMode::Quadratic,
        }
    }
}

#[derive(Debug, Args)]
pub struct CltArgs {
    #[arg(long, value_enum)]
    pub regime: CltRegimeArg,
    #[arg(long, value_enum, default_value_t = CltModeArg::CenteredU)]
    pub mode: CltModeArg,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 2000)]
    pub replicates: usize,
    #[command(flatten)]
    pub run: RunArgs,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum RegimeArg {
    A1,
    A2,
    A3,
    Vanishing,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum ScanMetricArg {
    Tv,
    Kl,
    Clt,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, value_enum)]
    pub regime: RegimeArg,
    #[arg(long, value_enum)]
    pub metric: ScanMetricArg,
    #[arg(long, value_enum, default_value_t = CltModeArg::CenteredU)]
    pub mode: CltModeArg,
    #[arg(long)]
    pub beta: f64,
    /// A1: limit of a1/a2
    #[arg(long)]
    pub rho: Option<f64>,
    /// A2: limit of a1·m/a2
    #[arg(long)]
    pub sigma: Option<f64>,
    /// A3: limit of a1/√a2
    #[arg(long)]
    pub x: Option<f64>,
    /// A3: limit of m/√a2
    #[arg(long)]
    pub y: Option<f64>,
    /// Vanishing: fixed a1
    #[arg(long)]
    pub a1: Option<f64>,
    /// Vanishing: fixed m
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 3)]
    pub steps: usize,
    #[arg(long)]
    pub a2_min: f64,
    #[arg(long)]
    pub a2_max: f64,
    /// Replicates per schedule point
    #[arg(long, default_value_t = 10_000)]
    pub n: usize,
    #[command(flatten)]
    pub run: RunArgs,
    #[command(flatten)]
    pub output: Output,
}

/// Failure of a command, mapped to the process exit code.
#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_validation() => 2,
            _ => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

/// Parses `argv`, runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

pub fn execute(command: &Command) -> Result<(), CliError> {
    match command {
        Command::Sample(a) => cmd_sample(a),
        Command::Moments(a) => cmd_moments(a),
        Command::Distance(a) => cmd_distance(a),
        Command::Clt(a) => cmd_clt(a),
        Command::Scan(a) => cmd_scan(a),
    }
}

impl Output {
    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

fn emit(output: &Output, body: Vec<u8>) -> Result<(), CliError> {
    match &output.out {
        Some(path) => std::fs::write(path, body)?,
        None => std::io::stdout().lock().write_all(&body)?,
    }
    Ok(())
}

fn json_body<T: Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    let mut body = serde_json::to_vec_pretty(value)?;
    body.push(b'\n');
    Ok(body)
}

fn csv_body(header: &[String], rows: &[Vec<String>]) -> Result<Vec<u8>, CliError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.into_inner().map_err(|e| CliError::Io(e.to_string()))
}

fn plan(run: &RunArgs) -> ShardPlan {
    ShardPlan::new(run.seed, run.shards)
}

fn check_shards(run: &RunArgs) -> Result<(), CliError> {
    if run.shards == 0 {
        return Err(Error::InvalidParams("shards must be at least 1".into()).into());
    }
    Ok(())
}

#[derive(Serialize)]
struct SampleOutput<'a> {
    ensemble: &'static str,
    params: &'a EnsembleParams,
    seed: u64,
    shards: usize,
    draws: Vec<Vec<f64>>,
}

fn cmd_sample(a: &SampleArgs) -> Result<(), CliError> {
    check_shards(&a.run)?;
    let params = a.params.params()?;
    let (kind, name) = match a.ensemble {
        EnsembleArg::Laguerre => (SpectrumKind::Laguerre, "laguerre"),
        EnsembleArg::Jacobi => (SpectrumKind::JacobiUnit, "jacobi"),
        EnsembleArg::JacobiScaled => (SpectrumKind::JacobiScaled, "jacobi_scaled"),
    };
    let parts = plan(&a.run).run(a.n, |rng, count| {
        (0..count).map(|_| Ok(sample_spectrum(kind, &params, rng)?.into_values())).collect::<Result<Vec<_>, Error>>()
    })?;
    let draws: Vec<Vec<f64>> = parts.concat();
    let body = match a.output.format_or(Format::Csv) {
        Format::Json => {
            json_body(&SampleOutput { ensemble: name, params: &params, seed: a.run.seed, shards: a.run.shards, draws })?
        }
        Format::Csv => {
            let header: Vec<String> =
                std::iter::once("draw".to_string()).chain((1..=params.m()).map(|k| format!("eig{k}"))).collect();
            let rows: Vec<Vec<String>> = draws
                .iter()
                .enumerate()
                .map(|(i, d)| std::iter::once(i.to_string()).chain(d.iter().map(|v| v.to_string())).collect())
                .collect();
            csv_body(&header, &rows)?
        }
    };
    emit(&a.output, body)
}

#[derive(Serialize)]
struct McValue {
    value: f64,
    std_error: f64,
}

#[derive(Serialize)]
struct MomentsMonteCarlo {
    n: u64,
    seed: u64,
    shards: usize,
    var_sum: McValue,
    e_sq: McValue,
    var_sq: McValue,
    cov_lin_sq: McValue,
    e_cube: McValue,
}

#[derive(Serialize)]
struct MomentsOutput<'a> {
    params: &'a EnsembleParams,
    #[serde(flatten)]
    laguerre_stats: LaguerreStats,
    aux: AuxSequences,
    jacobi_estimates: Option<JacobiMomentEstimates>,
    monte_carlo: Option<MomentsMonteCarlo>,
}

/// Per-draw sums `(Σc, Σc², Σc³)` with `c = μ − 2a₁`.
fn laguerre_sums(params: &EnsembleParams, n: usize, plan: &ShardPlan) -> Result<Vec<[f64; 3]>, Error> {
    let shift = 2.0 * params.a1();
    let parts = plan.run(n, |rng, count| {
        (0..count)
            .map(|_| {
                let mu = sample_spectrum(SpectrumKind::Laguerre, params, rng)?;
                let mut s = [0.0; 3];
                for v in mu.values() {
                    let c = v - shift;
                    s[0] += c;
                    s[1] += c * c;
                    s[2] += c * c * c;
                }
                Ok(s)
            })
            .collect::<Result<Vec<_>, Error>>()
    })?;
    Ok(parts.concat())
}

fn moments_monte_carlo(params: &EnsembleParams, n: usize, plan: &ShardPlan) -> Result<MomentsMonteCarlo, Error> {
    if n < 100 {
        return Err(Error::Domain(format!("moment simulation needs n ≥ 100, got {n}")));
    }
    let sums = laguerre_sums(params, n, plan)?;
    let lin: SummaryStats = sums.iter().map(|s| s[0]).collect();
    let sq: SummaryStats = sums.iter().map(|s| s[1]).collect();
    let cube: SummaryStats = sums.iter().map(|s| s[2]).collect();
    let cross: SummaryStats = sums.iter().map(|s| (s[0] - lin.mean()) * (s[1] - sq.mean())).collect();
    let nf = n as f64;
    Ok(MomentsMonteCarlo {
        n: n as u64,
        seed: plan.seed,
        shards: plan.shards,
        var_sum: McValue { value: lin.variance(), std_error: lin.variance_std_error() },
        e_sq: McValue { value: sq.mean(), std_error: sq.std_error() },
        var_sq: McValue { value: sq.variance(), std_error: sq.variance_std_error() },
        cov_lin_sq: McValue { value: cross.mean() * nf / (nf - 1.0), std_error: cross.std_error() },
        e_cube: McValue { value: cube.mean(), std_error: cube.std_error() },
    })
}

fn cmd_moments(a: &MomentsArgs) -> Result<(), CliError> {
    check_shards(&a.run)?;
    let params = a.params.params()?;
    let out = MomentsOutput {
        params: &params,
        laguerre_stats: laguerre_exact_stats(&params),
        aux: aux_sequences(&params),
        jacobi_estimates: params.a2_opt().map(|_| jacobi_moment_estimates(&params)).transpose()?,
        monte_carlo: a.n.map(|n| moments_monte_carlo(&params, n, &plan(&a.run))).transpose()?,
    };
    let body = match a.output.format_or(Format::Json) {
        Format::Json => json_body(&out)?,
        Format::Csv => {
            let s = &out.laguerre_stats;
            let mut rows = vec![
                vec!["var_sum".into(), s.var_sum.to_string()],
                vec!["e_sq".into(), s.e_sq.to_string()],
                vec!["var_sq".into(), s.var_sq.to_string()],
                vec!["cov_lin_sq".into(), s.cov_lin_sq.to_string()],
                vec!["e_cube".into(), s.e_cube.to_string()],
            ];
            let mut header = vec!["quantity".to_string(), "value".to_string()];
            if let Some(mc) = &out.monte_carlo {
                header.extend(["mc_value".to_string(), "mc_std_error".to_string()]);
                for (row, v) in rows.iter_mut().zip([&mc.var_sum, &mc.e_sq, &mc.var_sq, &mc.cov_lin_sq, &mc.e_cube]) {
                    row.extend([v.value.to_string(), v.std_error.to_string()]);
                }
            }
            if let Some(j) = &out.jacobi_estimates {
                let pad = header.len() - 2;
                for (name, v) in [("jacobi_s1", j.s1), ("jacobi_s2", j.s2), ("jacobi_s3", j.s3)] {
                    let mut row = vec![name.to_string(), v.to_string()];
                    row.extend(std::iter::repeat_n(String::new(), pad));
                    rows.push(row);
                }
            }
            csv_body(&header, &rows)?
        }
    };
    emit(&a.output, body)
}

#[derive(Serialize)]
struct EstimateOutput<'a> {
    metric: String,
    value: f64,
    std_error: f64,
    n: u64,
    seed: u64,
    shards: usize,
    params: &'a EnsembleParams,
    flagged: u64,
}

impl<'a> EstimateOutput<'a> {
    fn new(e: &Estimate, params: &'a EnsembleParams) -> Self {
        Self {
            metric: e.metric.to_string(),
            value: e.value,
            std_error: e.std_error,
            n: e.n_samples,
            seed: e.seed,
            shards: e.shards,
            params,
            flagged: e.flagged,
        }
    }

    const CSV_HEADER: [&'static str; 11] =
        ["metric", "value", "std_error", "n", "seed", "shards", "beta", "m", "a1", "a2", "flagged"];

    fn csv_row(&self) -> Vec<String> {
        vec![
            self.metric.clone(),
            self.value.to_string(),
            self.std_error.to_string(),
            self.n.to_string(),
            self.seed.to_string(),
            self.shards.to_string(),
            self.params.beta().to_string(),
            self.params.m().to_string(),
            self.params.a1().to_string(),
            self.params.a2_opt().map(|v| v.to_string()).unwrap_or_default(),
            self.flagged.to_string(),
        ]
    }
}

fn header(cols: &[&str]) -> Vec<String> {
    cols.iter().map(|s| s.to_string()).collect()
}

fn cmd_distance(a: &DistanceArgs) -> Result<(), CliError> {
    check_shards(&a.run)?;
    let params = a.params.params()?;
    params.a2()?;
    let plan = plan(&a.run);
    let est = match a.metric {
        MetricArg::Tv => tv_estimate(&params, a.n, &plan)?,
        MetricArg::Kl => kl_estimate(&params, a.n, &plan)?,
    };
    let out = EstimateOutput::new(&est, &params);
    let body = match a.output.format_or(Format::Json) {
        Format::Json => json_body(&out)?,
        Format::Csv => csv_body(&header(&EstimateOutput::CSV_HEADER), &[out.csv_row()])?,
    };
    emit(&a.output, body)
}

#[derive(Serialize)]
struct CltOutput<'a> {
    metric: &'static str,
    regime: CltRegime,
    mode: CltMode,
    value: f64,
    std_error: f64,
    variance: f64,
    target_mean: f64,
    target_variance: f64,
    ks_statistic: f64,
    p_value: f64,
    n: usize,
    seed: u64,
    shards: usize,
    params: &'a EnsembleParams,
}

impl<'a> CltOutput<'a> {
    fn new(r: &CltReport, params: &'a EnsembleParams) -> Self {
        Self {
            metric: "clt",
            regime: r.regime,
            mode: r.mode,
            value: r.statistic_samples.mean(),
            std_error: r.statistic_samples.std_error(),
            variance: r.statistic_samples.variance(),
            target_mean: r.target_mean,
            target_variance: r.target_variance,
            ks_statistic: r.ks.statistic_d,
            p_value: r.ks.p_value,
            n: r.replicates,
            seed: r.seed,
            shards: r.shards,
            params,
        }
    }

    const CSV_HEADER: [&'static str; 15] = [
        "metric",
        "regime",
        "mode",
        "value",
        "std_error",
        "variance",
        "target_mean",
        "target_variance",
        "ks_statistic",
        "p_value",
        "n",
        "seed",
        "shards",
        "m",
        "a1",
    ];

    fn csv_row(&self) -> Vec<String> {
        vec![
            self.metric.to_string(),
            format!("{:?}", self.regime),
            serde_json::to_value(self.mode).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
            self.value.to_string(),
            self.std_error.to_string(),
            self.variance.to_string(),
            self.target_mean.to_string(),
            self.target_variance.to_string(),
            self.ks_statistic.to_string(),
            self.p_value.to_string(),
            self.n.to_string(),
            self.seed.to_string(),
            self.shards.to_string(),
            self.params.m().to_string(),
            self.params.a1().to_string(),
        ]
    }
}

fn cmd_clt(a: &CltArgs) -> Result<(), CliError> {
    check_shards(&a.run)?;
    let params = a.params.params()?;
    let regime = match a.regime {
        CltRegimeArg::A2 => CltRegime::A2,
        CltRegimeArg::A3 => CltRegime::A3,
    };
    let report = clt_harness(&params, regime, a.mode.into(), a.replicates, &plan(&a.run))?;
    let out = CltOutput::new(&report, &params);
    let body = match a.output.format_or(Format::Json) {
        Format::Json => json_body(&out)?,
        Format::Csv => csv_body(&header(&CltOutput::CSV_HEADER), &[out.csv_row()])?,
    };
    emit(&a.output, body)
}

fn require(v: Option<f64>, flag: &str, regime: &str) -> Result<f64, Error> {
    v.ok_or_else(|| Error::InvalidParams(format!("--{flag} is required for the {regime} regime")))
}

fn regime_kind(a: &ScanArgs) -> Result<RegimeKind, Error> {
    Ok(match a.regime {
        RegimeArg::A1 => RegimeKind::A1 { rho: require(a.rho, "rho", "A1")? },
        RegimeArg::A2 => RegimeKind::A2 { sigma: require(a.sigma, "sigma", "A2")? },
        RegimeArg::A3 => RegimeKind::A3 { x: require(a.x, "x", "A3")?, y: require(a.y, "y", "A3")? },
        RegimeArg::Vanishing => RegimeKind::Vanishing {
            a1: require(a.a1, "a1", "vanishing")?,
            m: a.m.ok_or_else(|| Error::InvalidParams("--m is required for the vanishing regime".into()))?,
        },
    })
}

#[derive(Serialize)]
struct ScanRow<'a> {
    index: usize,
    sigma_proxy: f64,
    x_proxy: f64,
    y_proxy: f64,
    gamma_proxy: f64,
    metric: String,
    value: Option<f64>,
    std_error: Option<f64>,
    p_value: Option<f64>,
    n: usize,
    seed: u64,
    shards: usize,
    params: &'a EnsembleParams,
    error: Option<String>,
}

fn cmd_scan(a: &ScanArgs) -> Result<(), CliError> {
    check_shards(&a.run)?;
    let schedule = make_schedule(regime_kind(a)?, a.beta, a.steps, (a.a2_min, a.a2_max))?;
    let metric = match a.metric {
        ScanMetricArg::Tv => ScanMetric::Tv,
        ScanMetricArg::Kl => ScanMetric::Kl,
        ScanMetricArg::Clt => ScanMetric::Clt(a.mode.into()),
    };
    let entries = scan(&schedule, metric, a.n, &plan(&a.run));
    let rows: Vec<ScanRow> = entries
        .iter()
        .map(|e| {
            let (metric, value, std_error, p_value, error) = match &e.outcome {
                ScanOutcome::Estimate(est) => {
                    (est.metric.to_string(), Some(est.value), Some(est.std_error), None, None)
                }
                ScanOutcome::Clt(r) => (
                    "clt".to_string(),
                    Some(r.statistic_samples.mean()),
                    Some(r.statistic_samples.std_error()),
                    Some(r.ks.p_value),
                    None,
                ),
                ScanOutcome::Failed(msg) => ("failed".to_string(), None, None, None, Some(msg.clone())),
            };
            ScanRow {
                index: e.index,
                sigma_proxy: e.point.sigma_proxy,
                x_proxy: e.point.x_proxy,
                y_proxy: e.point.y_proxy,
                gamma_proxy: e.point.gamma_proxy,
                metric,
                value,
                std_error,
                p_value,
                n: a.n,
                seed: a.run.seed,
                shards: a.run.shards,
                params: &e.point.params,
                error,
            }
        })
        .collect();
    let body = match a.output.format_or(Format::Json) {
        Format::Json => json_body(&rows)?,
        Format::Csv => {
            let head = header(&[
                "index",
                "beta",
                "m",
                "a1",
                "a2",
                "sigma_proxy",
                "x_proxy",
                "y_proxy",
                "gamma_proxy",
                "metric",
                "value",
                "std_error",
                "p_value",
                "n",
                "seed",
                "shards",
                "error",
            ]);
            let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.index.to_string(),
                        r.params.beta().to_string(),
                        r.params.m().to_string(),
                        r.params.a1().to_string(),
                        r.params.a2_opt().map(|v| v.to_string()).unwrap_or_default(),
                        r.sigma_proxy.to_string(),
                        r.x_proxy.to_string(),
                        r.y_proxy.to_string(),
                        r.gamma_proxy.to_string(),
                        r.metric.clone(),
                        opt(r.value),
                        opt(r.std_error),
                        opt(r.p_value),
                        r.n.to_string(),
                        r.seed.to_string(),
                        r.shards.to_string(),
                        r.error.clone().unwrap_or_default(),
                    ]
                })
                .collect();
            csv_body(&head, &body)?
        }
    };
    emit(&a.output, body)
}
