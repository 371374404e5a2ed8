use std::path::PathBuf;

use agreeloss::estimators::MinimizerConfig;
use agreeloss::hydro::DateSpan;
use agreeloss::losses::{Metric, TrainingLoss};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "agreeloss",
    version,
    about = "Agreement losses, extremum estimators, seeded experiments and bucket-model calibration"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, env = "AGREELOSS_FORMAT", default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Table => "table",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Scores predictions against observations from a `z,y` CSV file.
    Metrics(MetricsArgs),
    /// Best constant prediction under L_W or L_NR2 for a `y` CSV file.
    FitConstant(FitConstantArgs),
    /// Linear fit `z = a·x + b` to an `x,y` CSV file.
    FitLinear(FitLinearArgs),
    /// Tabulates a constant-prediction loss profile over a θ grid.
    Profile(ProfileArgs),
    /// Runs a seeded simulation experiment.
    Experiment(ExperimentArgs),
    /// Calibrates the bucket model on a daily catchment record.
    Calibrate(CalibrateArgs),
}

fn parse_metric(s: &str) -> Result<Metric, String> {
    s.parse().map_err(|e: agreeloss::Error| e.to_string())
}

fn parse_loss(s: &str) -> Result<TrainingLoss, String> {
    s.parse().map_err(|e: agreeloss::Error| e.to_string())
}

fn parse_span(s: &str) -> Result<DateSpan, String> {
    s.parse().map_err(|e: agreeloss::Error| e.to_string())
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    #[arg(long)]
    pub input: PathBuf,

    /// Comma-separated, e.g. `mse,lw,lnr2,kbb:p=1,nrp:p=inf,lmc:f=median`.
    #[arg(long, value_delimiter = ',', required = true, value_parser = parse_metric)]
    pub metrics: Vec<Metric>,

    /// Report agreement losses L as indices 1 − L (so `lw` becomes Willmott's d).
    #[arg(long)]
    pub as_index: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstantLoss {
    Lw,
    Lnr2,
}

impl ConstantLoss {
    pub fn name(self) -> &'static str {
        match self {
            ConstantLoss::Lw => "lw",
            ConstantLoss::Lnr2 => "lnr2",
        }
    }
}

#[derive(Debug, Args)]
pub struct FitConstantArgs {
    #[arg(long, value_enum)]
    pub loss: ConstantLoss,

    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct FitLinearArgs {
    #[arg(long, value_parser = parse_loss)]
    pub loss: TrainingLoss,

    #[arg(long)]
    pub train: PathBuf,

    /// Optional hold-out `x,y` file scored with the fitted line.
    #[arg(long)]
    pub test: Option<PathBuf>,

    #[command(flatten)]
    pub minimizer: MinimizerArgs,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    #[arg(long, value_enum)]
    pub loss: ConstantLoss,

    #[arg(long)]
    pub input: PathBuf,

    #[arg(long, allow_negative_numbers = true)]
    pub min: f64,

    #[arg(long, allow_negative_numbers = true)]
    pub max: f64,

    /// Number of grid points, endpoints included.
    #[arg(long)]
    pub steps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExperimentKind {
    Climatology,
    Linear,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[arg(value_enum)]
    pub kind: ExperimentKind,

    #[arg(long)]
    pub seed: u64,

    /// Independent random stream for the same seed.
    #[arg(long, default_value_t = 0)]
    pub stream: u64,

    /// Sample size [default: 1000 climatology, 4000 linear].
    #[arg(long)]
    pub n: Option<usize>,

    /// Training-set size [default: n / 2].
    #[arg(long)]
    pub split: Option<usize>,

    /// Climatology: mean of the Gaussian variable.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub mean: f64,

    /// Climatology: standard deviation of the Gaussian variable.
    #[arg(long, default_value_t = 1.0)]
    pub std: f64,

    /// Linear: comma-separated true slopes.
    #[arg(long, value_delimiter = ',', default_values_t = [0.6, 6.0, 20.0], allow_negative_numbers = true)]
    pub a1: Vec<f64>,

    #[command(flatten)]
    pub minimizer: MinimizerArgs,
}

#[derive(Debug, Args)]
pub struct CalibrateArgs {
    /// CSV with columns date,precip_mm,pet_mm,flow_mm.
    #[arg(long)]
    pub data: PathBuf,

    #[arg(long)]
    pub warmup_days: usize,

    /// Calibration span `YYYY-MM-DD:YYYY-MM-DD`.
    #[arg(long, value_parser = parse_span)]
    pub cal: DateSpan,

    /// Validation span `YYYY-MM-DD:YYYY-MM-DD`.
    #[arg(long, value_parser = parse_span)]
    pub val: DateSpan,

    #[arg(long, value_delimiter = ',', default_values_t = TrainingLoss::ALL, value_parser = parse_loss)]
    pub loss: Vec<TrainingLoss>,

    #[command(flatten)]
    pub minimizer: MinimizerArgs,
}

/// Nelder–Mead settings shared by the commands that optimize numerically.
#[derive(Debug, Clone, Args)]
pub struct MinimizerArgs {
    #[arg(long, default_value_t = MinimizerConfig::default().max_iterations)]
    pub max_iterations: usize,

    #[arg(long, default_value_t = MinimizerConfig::default().x_tolerance)]
    pub x_tol: f64,

    #[arg(long, default_value_t = MinimizerConfig::default().f_tolerance)]
    pub f_tol: f64,

    #[arg(long, default_value_t = MinimizerConfig::default().initial_simplex_scale)]
    pub simplex_scale: f64,

    #[arg(long, default_value_t = MinimizerConfig::default().restarts)]
    pub restarts: usize,
}

impl MinimizerArgs {
    pub fn config(&self) -> MinimizerConfig {
        MinimizerConfig {
            max_iterations: self.max_iterations,
            x_tolerance: self.x_tol,
            f_tolerance: self.f_tol,
            initial_simplex_scale: self.simplex_scale,
            restarts: self.restarts,
        }
    }
}
