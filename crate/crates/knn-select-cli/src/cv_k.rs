//! `cv-k`: choose the neighbor count by k-fold cross-validation.
//!
//! Prints the winning k on stdout; `--out` additionally writes the
//! per-candidate mean fold losses.

use std::path::PathBuf;

use anyhow::Result;
use clap::Args;

use crate::{require_flag, usage_error, Globals};
use knn_select::io::read_dataset;
use knn_select::{cross_validate_losses, KnnConfig, Task};

#[derive(Args, Debug)]
pub struct CvKArgs {
    /// Training CSV with the response column.
    #[arg(long)]
    pub train: PathBuf,

    /// Response column name.
    #[arg(long)]
    pub response: String,

    /// Candidate k values, comma-separated.
    #[arg(long = "k-candidates", value_delimiter = ',')]
    pub k_candidates: Vec<usize>,

    /// Fold count.
    #[arg(long, default_value_t = 5)]
    pub folds: usize,

    /// Optional CSV of per-candidate mean fold losses.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(globals: &Globals, args: &CvKArgs) -> Result<()> {
    let task = require_flag(globals.task, "--task").to_task();
    if args.k_candidates.is_empty() {
        usage_error("--k-candidates needs at least one value".to_string());
    }
    let train = read_dataset(&args.train, &args.response, task)?;
    let base = KnnConfig::new(1, globals.metric, task);
    let losses = cross_validate_losses(&train, &args.k_candidates, args.folds, &base, globals.seed)?;

    let mut best = losses[0];
    for &(k, loss) in &losses[1..] {
        let better = match task {
            Task::Classification => loss > best.1,
            Task::Regression => loss < best.1,
        };
        if better || (loss == best.1 && k < best.0) {
            best = (k, loss);
        }
    }

    if let Some(path) = &args.out {
        let mut writer = csv::Writer::from_path(path)?;
        writer.write_record(["k", "mean_loss"])?;
        for (k, loss) in &losses {
            writer.write_record([k.to_string(), loss.to_string()])?;
        }
        writer.flush()?;
    }
    println!("{}", best.0);
    Ok(())
}
