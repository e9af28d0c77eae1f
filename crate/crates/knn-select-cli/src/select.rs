//! `select`: forward variable selection with a JSON report.
//!
//! When the test CSV carries the response column, candidates are scored on
//! it directly. Without test labels (or with `--internal-split`), a seeded
//! split of the training data provides the holdout, and the reported loss is
//! that internal holdout loss.

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use serde::Serialize;

use crate::common::{load_train_test, standardize, write_predictions};
use crate::{require_flag, Globals};
use knn_select::{
    cross_validate_k, forward_select, KnnConfig, SelectionConfig, SelectionMode, SelectionTrace,
    Task,
};

#[derive(Args, Debug)]
pub struct SelectArgs {
    /// Training CSV with the response column.
    #[arg(long)]
    pub train: PathBuf,

    /// Test CSV; selection scores on its labels when present.
    #[arg(long)]
    pub test: PathBuf,

    /// Response column name.
    #[arg(long)]
    pub response: String,

    /// Candidate k values; the best by cross-validation replaces --k.
    #[arg(long = "cv-k", value_delimiter = ',')]
    pub cv_k: Option<Vec<usize>>,

    /// Fold count for --cv-k.
    #[arg(long, default_value_t = 5)]
    pub folds: usize,

    /// Force an internal split with this train fraction even if the test
    /// CSV has labels.
    #[arg(long = "internal-split")]
    pub internal_split: Option<f64>,

    /// Output path for the JSON selection report.
    #[arg(long = "out-json")]
    pub out_json: PathBuf,

    /// Output CSV of predictions on the test rows.
    #[arg(long = "out-predictions")]
    pub out_predictions: PathBuf,

    /// Z-score features with training-set statistics before fitting.
    #[arg(long)]
    pub standardize: bool,
}

/// Stable-keyed JSON report.
#[derive(Serialize)]
struct SelectReport<'a> {
    selected_variables: &'a [usize],
    selected_variable_names: Vec<&'a str>,
    best_level: usize,
    best_loss: f64,
    evaluations: u64,
    k: usize,
    metric: String,
    task: &'a str,
    mode: String,
    seed: u64,
    trace: &'a SelectionTrace,
}

pub fn run(globals: &Globals, args: &SelectArgs) -> Result<()> {
    let task = require_flag(globals.task, "--task").to_task();
    let (mut train, test_table) = load_train_test(&args.train, &args.test, &args.response, task)?;
    let mut eval_features = test_table.features;
    if args.standardize {
        (train, eval_features) = standardize(train, eval_features)?;
    }

    let k = match &args.cv_k {
        None => require_flag(globals.k, "--k (or --cv-k)"),
        Some(candidates) => {
            let base = KnnConfig::new(1, globals.metric, task);
            cross_validate_k(&train, candidates, args.folds, &base, globals.seed)?
        }
    };

    let mode = match (args.internal_split, &test_table.response) {
        (Some(fraction), _) => SelectionMode::InternalSplit { train_fraction: fraction },
        (None, Some(_)) => SelectionMode::ExternalTest,
        (None, None) => SelectionMode::internal_split_default(),
    };
    let cfg = SelectionConfig {
        knn: KnnConfig::new(k, globals.metric, task),
        mode,
        rng_seed: globals.seed,
    };
    let result = forward_select(&train, &eval_features, test_table.response.as_ref(), &cfg)?;

    let report = SelectReport {
        selected_variables: &result.selected_variables,
        selected_variable_names: result
            .selected_variables
            .iter()
            .map(|&j| train.column_names()[j].as_str())
            .collect(),
        best_level: result.best_level,
        best_loss: result.best_loss,
        evaluations: result.trace.evaluations,
        k,
        metric: globals.metric.to_string(),
        task: match task {
            Task::Classification => "classification",
            Task::Regression => "regression",
        },
        mode: match cfg.mode {
            SelectionMode::ExternalTest => "external_test".to_string(),
            SelectionMode::InternalSplit { train_fraction } => {
                format!("internal_split:{train_fraction}")
            }
        },
        seed: globals.seed,
        trace: &result.trace,
    };
    let file = File::create(&args.out_json)?;
    serde_json::to_writer_pretty(BufWriter::new(file), &report)?;
    write_predictions(&args.out_predictions, &result.predictions)?;
    Ok(())
}
