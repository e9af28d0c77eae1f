//! Command-line front end: dataset ingestion, kNN prediction, forward
//! variable selection, synthetic data generation, replication experiments,
//! and the running-time benchmark.
//!
//! Exit codes: 0 on success, 1 on data or validation errors (message on
//! stderr), 2 on usage errors.

mod benchmark;
mod common;
mod cv_k;
mod experiment;
mod predict;
mod select;
mod simulate;

use std::process;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand};

use common::TaskArg;
use knn_select::DistanceMetric;

#[derive(Parser, Debug)]
#[command(
    name = "knn-select",
    version,
    about = "k-nearest neighbors with forward variable selection"
)]
struct Cli {
    /// Seed for all randomness; reruns with identical flags are
    /// byte-identical.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Distance metric: euclidean, manhattan, minkowski:<p>, or jaccard.
    #[arg(long, global = true, default_value = "euclidean")]
    metric: DistanceMetric,

    /// Neighbor count.
    #[arg(long, global = true)]
    k: Option<usize>,

    /// Prediction task.
    #[arg(long, global = true, value_enum)]
    task: Option<TaskArg>,

    #[command(subcommand)]
    command: Command,
}

/// Global flags shared by every subcommand.
#[derive(Debug, Clone, Copy)]
pub struct Globals {
    pub seed: u64,
    pub metric: DistanceMetric,
    pub k: Option<usize>,
    pub task: Option<TaskArg>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fit kNN on a training CSV and predict every row of a test CSV.
    Predict(predict::PredictArgs),
    /// Run forward variable selection; writes a JSON report and predictions.
    Select(select::SelectArgs),
    /// Generate a synthetic dataset plus a JSON metadata sidecar.
    Simulate(simulate::SimulateArgs),
    /// Replicated split/select runs with per-variable selection frequencies.
    Experiment(experiment::ExperimentArgs),
    /// Time forward selection across a grid of predictor counts.
    Benchmark(benchmark::BenchmarkArgs),
    /// Choose k by k-fold cross-validation.
    CvK(cv_k::CvKArgs),
}

/// Unwrap a flag this subcommand requires, or exit with a usage error.
pub fn require_flag<T>(value: Option<T>, flag: &str) -> T {
    match value {
        Some(v) => v,
        None => Cli::command()
            .error(
                ErrorKind::MissingRequiredArgument,
                format!("the following required argument was not provided: {flag}"),
            )
            .exit(),
    }
}

/// Exit with a usage error.
pub fn usage_error(message: String) -> ! {
    Cli::command().error(ErrorKind::InvalidValue, message).exit()
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let globals = Globals {
        seed: cli.seed,
        metric: cli.metric,
        k: cli.k,
        task: cli.task,
    };
    match cli.command {
        Command::Predict(args) => predict::run(&globals, &args),
        Command::Select(args) => select::run(&globals, &args),
        Command::Simulate(args) => simulate::run(&globals, &args),
        Command::Experiment(args) => experiment::run(&globals, &args),
        Command::Benchmark(args) => benchmark::run(&globals, &args),
        Command::CvK(args) => cv_k::run(&globals, &args),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        process::exit(1);
    }
}
