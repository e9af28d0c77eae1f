//! `predict`: fit on a training CSV, write predictions for a test CSV.

use std::path::PathBuf;

use anyhow::Result;
use clap::Args;

use crate::common::{load_train_test, standardize, write_predictions};
use crate::{require_flag, Globals};
use knn_select::{predict_batch, KnnConfig};

#[derive(Args, Debug)]
pub struct PredictArgs {
    /// Training CSV with the response column.
    #[arg(long)]
    pub train: PathBuf,

    /// Test CSV; a response column, if present, is ignored.
    #[arg(long)]
    pub test: PathBuf,

    /// Response column name.
    #[arg(long)]
    pub response: String,

    /// Output CSV of predictions.
    #[arg(long)]
    pub out: PathBuf,

    /// Z-score features with training-set statistics before fitting.
    #[arg(long)]
    pub standardize: bool,
}

pub fn run(globals: &Globals, args: &PredictArgs) -> Result<()> {
    let task = require_flag(globals.task, "--task").to_task();
    let k = require_flag(globals.k, "--k");
    let (mut train, test_table) = load_train_test(&args.train, &args.test, &args.response, task)?;
    let mut queries = test_table.features;
    if args.standardize {
        (train, queries) = standardize(train, queries)?;
    }
    let cfg = KnnConfig::new(k, globals.metric, task);
    let predictions = predict_batch(&train, &queries, &cfg)?;
    write_predictions(&args.out, &predictions)?;
    Ok(())
}
