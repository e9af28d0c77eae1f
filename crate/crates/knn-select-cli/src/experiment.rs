//! `experiment`: replicated split/select runs over a dataset.
//!
//! Per replicate `r` the data is split with seed `base_seed + r`, forward
//! selection scores on the test side, and the winning subset is recorded.
//! The long CSV has one row per (replicate, variable); the summary CSV holds
//! per-variable selection frequencies (the column means of the long file's
//! indicator column).

use std::path::PathBuf;

use anyhow::Result;
use clap::Args;

use crate::simulate::SimKind;
use crate::{require_flag, usage_error, Globals};
use knn_select::io::read_dataset;
use knn_select::{
    cross_validate_k, forward_select, replicate_stats, split, ClassifSimConfig, Dataset,
    KnnConfig, RegressSimConfig, SelectionConfig, SelectionMode, Task,
};

#[derive(Args, Debug)]
pub struct ExperimentArgs {
    /// Input dataset CSV; alternative to --generator.
    #[arg(long, conflicts_with = "generator")]
    pub input: Option<PathBuf>,

    /// Response column name of --input.
    #[arg(long)]
    pub response: Option<String>,

    /// Generate the data instead of reading it.
    #[arg(long, value_enum)]
    pub generator: Option<SimKind>,

    /// Observation count (--generator).
    #[arg(long)]
    pub n: Option<usize>,

    /// Predictor count (--generator class).
    #[arg(long)]
    pub p: Option<usize>,

    /// Signal predictor count (--generator class).
    #[arg(long)]
    pub signal: Option<usize>,

    /// Logistic coefficients, comma-separated (--generator class).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub beta: Option<Vec<f64>>,

    /// Equicorrelation of generated features.
    #[arg(long, default_value_t = 0.0)]
    pub rho: f64,

    /// Noise standard deviation (--generator reg).
    #[arg(long = "noise-sd", default_value_t = 1.0)]
    pub noise_sd: f64,

    /// Shuffle generated columns.
    #[arg(long = "shuffle-columns")]
    pub shuffle_columns: bool,

    /// Number of replications.
    #[arg(long, default_value_t = 20)]
    pub replications: usize,

    /// Train fraction of each replicate's split.
    #[arg(long = "train-fraction", default_value_t = 0.7)]
    pub train_fraction: f64,

    /// Candidate k values tuned by cross-validation per replicate.
    #[arg(long = "cv-k", value_delimiter = ',')]
    pub cv_k: Option<Vec<usize>>,

    /// Fold count for --cv-k.
    #[arg(long, default_value_t = 5)]
    pub folds: usize,

    /// Long-format output CSV (one row per replicate and variable).
    #[arg(long)]
    pub out: PathBuf,

    /// Per-variable selection-frequency summary CSV.
    #[arg(long = "out-summary")]
    pub out_summary: PathBuf,

    /// Optional replication-statistics CSV over the loss columns.
    #[arg(long = "out-stats")]
    pub out_stats: Option<PathBuf>,
}

fn load_or_generate(globals: &Globals, args: &ExperimentArgs, task: Task) -> Result<Dataset> {
    match (&args.input, args.generator) {
        (Some(path), None) => {
            let response = require_flag(args.response.clone(), "--response");
            Ok(read_dataset(path, &response, task)?)
        }
        (None, Some(SimKind::Class)) => {
            if task != Task::Classification {
                usage_error("--generator class requires --task class".to_string());
            }
            let n = require_flag(args.n, "--n");
            let p = require_flag(args.p, "--p");
            let signal = require_flag(args.signal, "--signal");
            let mut cfg = ClassifSimConfig::new(n, p, signal, globals.seed);
            if let Some(beta) = &args.beta {
                cfg.beta = beta.clone();
            }
            cfg.correlation = args.rho;
            cfg.shuffle_columns = args.shuffle_columns;
            let (dataset, _) = knn_select::gen_classification(&cfg)?;
            Ok(dataset)
        }
        (None, Some(SimKind::Reg)) => {
            if task != Task::Regression {
                usage_error("--generator reg requires --task reg".to_string());
            }
            let n = require_flag(args.n, "--n");
            let mut cfg = RegressSimConfig::new(n, globals.seed);
            cfg.noise_sd = args.noise_sd;
            cfg.correlation = args.rho;
            let (dataset, _) = knn_select::gen_regression(&cfg)?;
            Ok(dataset)
        }
        _ => usage_error("exactly one of --input or --generator is required".to_string()),
    }
}

const LONG_HEADER: [&str; 10] = [
    "replicate",
    "seed",
    "k",
    "best_level",
    "best_loss",
    "full_loss",
    "variable",
    "variable_name",
    "selected",
    "status",
];

pub fn run(globals: &Globals, args: &ExperimentArgs) -> Result<()> {
    let task = require_flag(globals.task, "--task").to_task();
    if args.replications == 0 {
        usage_error("--replications must be at least 1".to_string());
    }
    let data = load_or_generate(globals, args, task)?;
    let p = data.p();

    let mut long_writer = csv::Writer::from_path(&args.out)?;
    long_writer.write_record(LONG_HEADER)?;

    let mut selected_counts = vec![0usize; p];
    let mut best_losses = Vec::with_capacity(args.replications);
    let mut full_losses = Vec::with_capacity(args.replications);

    for replicate in 1..=args.replications {
        let seed = globals.seed.wrapping_add(replicate as u64);
        let outcome = run_replicate(globals, args, task, &data, seed);
        let (k, result) = match outcome {
            Ok(pair) => pair,
            Err(err) => {
                // Failure marker row, then propagate.
                long_writer.write_record([
                    replicate.to_string(),
                    seed.to_string(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    format!("error: {err}"),
                ])?;
                long_writer.flush()?;
                return Err(err);
            }
        };
        let full_loss = result.trace.levels[p - 1].chosen_loss;
        best_losses.push(result.best_loss);
        full_losses.push(full_loss);
        for (variable, count) in selected_counts.iter_mut().enumerate() {
            let selected = result.selected_variables.contains(&variable);
            if selected {
                *count += 1;
            }
            long_writer.write_record([
                replicate.to_string(),
                seed.to_string(),
                k.to_string(),
                result.best_level.to_string(),
                result.best_loss.to_string(),
                full_loss.to_string(),
                variable.to_string(),
                data.column_names()[variable].clone(),
                u8::from(selected).to_string(),
                "ok".to_string(),
            ])?;
        }
    }
    long_writer.flush()?;

    let mut summary_writer = csv::Writer::from_path(&args.out_summary)?;
    summary_writer.write_record(["variable", "variable_name", "frequency"])?;
    for (variable, &count) in selected_counts.iter().enumerate() {
        summary_writer.write_record([
            variable.to_string(),
            data.column_names()[variable].clone(),
            (count as f64 / args.replications as f64).to_string(),
        ])?;
    }
    summary_writer.flush()?;

    if let Some(stats_path) = &args.out_stats {
        let mut stats_writer = csv::Writer::from_path(stats_path)?;
        stats_writer.write_record(["loss", "mean", "median", "sd", "min", "max", "q1", "q3"])?;
        for (name, losses) in [("best", &best_losses), ("full", &full_losses)] {
            let s = replicate_stats(losses)?;
            stats_writer.write_record([
                name.to_string(),
                s.mean.to_string(),
                s.median.to_string(),
                s.sd.to_string(),
                s.min.to_string(),
                s.max.to_string(),
                s.q1.to_string(),
                s.q3.to_string(),
            ])?;
        }
        stats_writer.flush()?;
    }
    Ok(())
}

fn run_replicate(
    globals: &Globals,
    args: &ExperimentArgs,
    task: Task,
    data: &Dataset,
    seed: u64,
) -> Result<(usize, knn_select::SelectionResult)> {
    let plan = split(data.n(), args.train_fraction, seed)?;
    let train = data.select_rows(&plan.train_indices)?;
    let eval_features = data.features().select_rows(&plan.test_indices)?;
    let eval_response = data.response().select(&plan.test_indices)?;
    let k = match &args.cv_k {
        None => require_flag(globals.k, "--k (or --cv-k)"),
        Some(candidates) => {
            let base = KnnConfig::new(1, globals.metric, task);
            cross_validate_k(&train, candidates, args.folds, &base, seed)?
        }
    };
    let cfg = SelectionConfig {
        knn: KnnConfig::new(k, globals.metric, task),
        mode: SelectionMode::ExternalTest,
        rng_seed: seed,
    };
    let result = forward_select(&train, &eval_features, Some(&eval_response), &cfg)?;
    Ok((k, result))
}
