use std::path::PathBuf;

use chrono::NaiveDate;
use clap::{Args, Parser, Subcommand, ValueEnum};
use lppls::model::FilterConfig;
use lppls::optimizer::{CmaesConfig, FitConfig};
use lppls::timeseries::Bound;
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "lppls",
    version,
    about = "Fit the LPPLS bubble model to price series, scan window ensembles and check residuals",
    args_override_self = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Calibrate one window and report the critical time and filter verdict.
    Fit(FitArgs),
    /// Fit an expanding or shrinking window ensemble and forecast tc.
    Scan(ScanArgs),
    /// Lomb periodograms and unit-root tests on the fits of a scan.
    Diagnose(DiagnoseArgs),
    /// Write a synthetic LPPLS price series.
    Synth(SynthArgs),
    /// Cost-function cross-sections around a fitted optimum.
    Landscape(LandscapeArgs),
}

/// Flags shared by every command.
#[derive(Debug, Clone, Args, Serialize)]
pub struct Common {
    /// Seed for every random draw; required so runs are reproducible.
    #[arg(long)]
    pub seed: u64,

    /// Directory artifacts are written to.
    #[arg(long, default_value = ".")]
    #[serde(skip)]
    pub out_dir: PathBuf,

    /// Worker threads for window fits [default: available processors].
    #[arg(long)]
    #[serde(skip)]
    pub jobs: Option<usize>,

    /// key=value file of default flags; command-line flags take precedence.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

impl Common {
    pub fn jobs(&self) -> usize {
        self.jobs
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
            .max(1)
    }
}

/// Price CSV to read.
#[derive(Debug, Clone, Args, Serialize)]
pub struct InputArgs {
    /// CSV of daily closes.
    #[arg(long)]
    pub input: PathBuf,

    #[arg(long, default_value = "date")]
    pub date_column: String,

    #[arg(long, default_value = "close")]
    pub price_column: String,
}

/// Optimizer and qualification settings.
#[derive(Debug, Clone, Args, Serialize)]
pub struct FitSettings {
    /// Registered minimizer to use.
    #[arg(long, default_value = "cmaes")]
    pub minimizer: String,

    /// CMA-ES offspring per generation.
    #[arg(long, default_value_t = CmaesConfig::default().population_size)]
    pub population: usize,

    /// Initial CMA-ES step size as a fraction of the search box.
    #[arg(long, default_value_t = 0.3)]
    pub sigma0: f64,

    #[arg(long, default_value_t = 500)]
    pub max_iter: usize,

    #[arg(long, default_value_t = 1e-12)]
    pub tol_fun: f64,

    /// Independent optimizer runs per window.
    #[arg(long, default_value_t = 3)]
    pub restarts: usize,

    #[arg(long, default_value_t = 0.1)]
    pub m_min: f64,
    #[arg(long, default_value_t = 0.9)]
    pub m_max: f64,
    #[arg(long, default_value_t = 6.0)]
    pub omega_min: f64,
    #[arg(long, default_value_t = 13.0)]
    pub omega_max: f64,

    /// Latest admissible tc past t2, as a fraction of t2 - t1.
    #[arg(long, default_value_t = 1.0 / 3.0)]
    pub tc_horizon: f64,

    #[arg(long, default_value_t = 1.0)]
    pub min_damping: f64,

    #[arg(long, default_value_t = 2.5)]
    pub min_oscillations: f64,

    /// Require B < 0 (otherwise only B < 1).
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub strict_b: bool,
}

impl FitSettings {
    pub fn fit_config(&self, seed: u64) -> FitConfig {
        FitConfig {
            minimizer: self.minimizer.clone(),
            cmaes: CmaesConfig {
                population_size: self.population,
                sigma0: self.sigma0,
                max_iterations: self.max_iter,
                tol_fun: self.tol_fun,
                restarts: self.restarts,
                seed,
            },
            filters: FilterConfig {
                m_range: (self.m_min, self.m_max),
                omega_range: (self.omega_min, self.omega_max),
                tc_horizon: self.tc_horizon,
                min_damping: self.min_damping,
                min_oscillations: self.min_oscillations,
                strict_b: self.strict_b,
            },
        }
    }
}

/// A window endpoint: `YYYY-MM-DD` or a trading-day ordinal.
#[derive(Debug, Clone, Copy, Serialize)]
#[serde(untagged)]
pub enum Endpoint {
    Date(NaiveDate),
    Ordinal(usize),
}

impl std::str::FromStr for Endpoint {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if let Ok(d) = NaiveDate::parse_from_str(s, "%Y-%m-%d") {
            return Ok(Endpoint::Date(d));
        }
        s.parse::<usize>()
            .map(Endpoint::Ordinal)
            .map_err(|_| format!("`{s}` is neither a YYYY-MM-DD date nor an ordinal"))
    }
}

impl From<Endpoint> for Bound {
    fn from(e: Endpoint) -> Self {
        match e {
            Endpoint::Date(d) => Bound::Date(d),
            Endpoint::Ordinal(i) => Bound::Ordinal(i),
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct FitArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub input: InputArgs,

    /// First day of the window (snapped forward to a trading day).
    #[arg(long)]
    pub t1: Endpoint,

    /// Last day of the window (snapped backward to a trading day).
    #[arg(long)]
    pub t2: Endpoint,

    #[command(flatten)]
    pub fit: FitSettings,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Expanding,
    Shrinking,
}

#[derive(Debug, Args, Serialize)]
pub struct ScanArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub input: InputArgs,

    #[arg(long, value_enum)]
    pub mode: Mode,

    /// t1 of an expanding scan, t2 of a shrinking one.
    #[arg(long)]
    pub fixed: NaiveDate,

    /// First position of the moving endpoint.
    #[arg(long)]
    pub from: NaiveDate,

    /// Last position of the moving endpoint.
    #[arg(long)]
    pub to: NaiveDate,

    /// Trading days between moving endpoints.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub step: u64,

    /// Bootstrap resamples for the tc quantiles.
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub reps: u64,

    #[command(flatten)]
    pub fit: FitSettings,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Lomb,
    Unitroot,
    All,
}

#[derive(Debug, Args, Serialize)]
pub struct DiagnoseArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub input: InputArgs,

    /// scan.json written by `lppls scan` on the same input.
    #[arg(long)]
    pub scan: PathBuf,

    #[arg(long, value_enum, default_value = "all")]
    pub check: Check,

    /// Lowest angular log-frequency of the periodogram grid.
    #[arg(long, default_value_t = 1.0)]
    pub freq_min: f64,

    #[arg(long, default_value_t = 25.0)]
    pub freq_max: f64,

    #[arg(long, default_value_t = 512)]
    pub freq_count: usize,

    /// Unit-root tests to run, by name.
    #[arg(long, value_delimiter = ',', default_value = "pp,adf")]
    pub tests: Vec<String>,

    /// Lagged differences in the Dickey-Fuller regression.
    #[arg(long, default_value_t = 0)]
    pub adf_lags: usize,

    /// Bartlett bandwidth for Phillips-Perron [default: floor(4 (T/100)^(2/9))].
    #[arg(long)]
    pub pp_bandwidth: Option<usize>,

    /// Series label in unitroot.csv [default: input file stem].
    #[arg(long)]
    pub label: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NoiseKind {
    None,
    Gaussian,
    Ou,
}

#[derive(Debug, Args, Serialize)]
pub struct SynthArgs {
    #[command(flatten)]
    pub common: Common,

    /// Number of trading days; ordinals run 0..length-1.
    #[arg(long, default_value_t = 250)]
    pub length: usize,

    /// Calendar date of ordinal 0; later days follow on weekdays.
    #[arg(long, default_value = "2014-01-02")]
    pub start: NaiveDate,

    /// Critical time as an ordinal; must lie past the last day.
    #[arg(long)]
    pub tc: f64,
    #[arg(long, default_value_t = 0.5)]
    pub m: f64,
    #[arg(long, default_value_t = 9.0)]
    pub omega: f64,
    #[arg(long, default_value_t = 8.0)]
    pub a: f64,
    #[arg(long, default_value_t = -0.5, allow_negative_numbers = true)]
    pub b: f64,
    #[arg(long, default_value_t = 0.01, allow_negative_numbers = true)]
    pub c1: f64,
    #[arg(long, default_value_t = 0.01, allow_negative_numbers = true)]
    pub c2: f64,

    #[arg(long, value_enum, default_value = "none")]
    pub noise: NoiseKind,

    /// Innovation standard deviation of the log-price noise.
    #[arg(long, default_value_t = 0.01)]
    pub sigma: f64,

    /// AR(1) coefficient of `ou` noise.
    #[arg(long, default_value_t = 0.5)]
    pub phi: f64,

    /// File name inside --out-dir.
    #[arg(long, default_value = "synthetic.csv")]
    pub output: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Pair {
    #[value(name = "tc-m")]
    #[serde(rename = "tc-m")]
    TcM,
    #[value(name = "tc-omega")]
    #[serde(rename = "tc-omega")]
    TcOmega,
    #[value(name = "m-omega")]
    #[serde(rename = "m-omega")]
    MOmega,
}

#[derive(Debug, Args, Serialize)]
pub struct LandscapeArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub input: InputArgs,

    #[arg(long)]
    pub t1: Endpoint,

    #[arg(long)]
    pub t2: Endpoint,

    /// Parameter pairs to grid; repeat or comma-separate [default: all three].
    #[arg(long, value_enum, value_delimiter = ',')]
    pub pair: Vec<Pair>,

    /// Grid points per axis (at least 8).
    #[arg(long, default_value_t = 50)]
    pub resolution: usize,

    #[command(flatten)]
    pub fit: FitSettings,
}
