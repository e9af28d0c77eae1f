//! `benchmark`: wall-clock scaling of forward selection in the predictor
//! count. Wall time is hardware-specific; the deterministic evaluation count
//! is reported alongside it.

use std::path::PathBuf;
use std::time::Instant;

use anyhow::Result;
use clap::Args;

use crate::{require_flag, usage_error, Globals};
use knn_select::{
    forward_select, sample_mvn_equicorrelated, split, ClassifSimConfig, Dataset, KnnConfig,
    Response, SelectionConfig, SelectionMode, Task, REGRESSION_P,
};

#[derive(Args, Debug)]
pub struct BenchmarkArgs {
    /// Observation count of each generated dataset.
    #[arg(long, default_value_t = 500)]
    pub n: usize,

    /// Predictor counts to sweep, comma-separated.
    #[arg(long = "p-list", value_delimiter = ',')]
    pub p_list: Vec<usize>,

    /// Train fraction of the timed split.
    #[arg(long = "train-fraction", default_value_t = 0.7)]
    pub train_fraction: f64,

    /// Output CSV with columns n,p,evaluations,seconds.
    #[arg(long)]
    pub out: PathBuf,
}

/// Regression data for arbitrary p: the nine-predictor interaction response
/// over the first nine columns, remaining columns pure noise.
fn regression_grid_data(n: usize, p: usize, seed: u64) -> Result<Dataset> {
    let features = sample_mvn_equicorrelated(n, p, 0.0, seed)?;
    let mut noise = knn_select::rng::SplitMix64::new(seed.wrapping_add(1));
    let targets: Vec<f64> = (0..n)
        .map(|i| knn_select::simgen::regression_mean(features.row(i)) + noise.next_normal())
        .collect();
    let names = (1..=p).map(|j| format!("x{j}")).collect();
    Ok(Dataset::new(features, names, Response::Targets(targets))?)
}

pub fn run(globals: &Globals, args: &BenchmarkArgs) -> Result<()> {
    let task = require_flag(globals.task, "--task").to_task();
    let k = require_flag(globals.k, "--k");
    if args.p_list.is_empty() {
        usage_error("--p-list needs at least one predictor count".to_string());
    }

    let mut writer = csv::Writer::from_path(&args.out)?;
    writer.write_record(["n", "p", "evaluations", "seconds"])?;
    for &p in &args.p_list {
        let data = match task {
            Task::Classification => {
                let signal = p.min(5);
                let cfg = ClassifSimConfig::new(args.n, p, signal, globals.seed.wrapping_add(p as u64));
                knn_select::gen_classification(&cfg)?.0
            }
            Task::Regression => {
                if p < REGRESSION_P {
                    usage_error(format!(
                        "regression benchmarks need p >= {REGRESSION_P}, got {p}"
                    ));
                }
                regression_grid_data(args.n, p, globals.seed.wrapping_add(p as u64))?
            }
        };
        let plan = split(data.n(), args.train_fraction, globals.seed)?;
        let train = data.select_rows(&plan.train_indices)?;
        let eval_features = data.features().select_rows(&plan.test_indices)?;
        let eval_response = data.response().select(&plan.test_indices)?;
        let cfg = SelectionConfig {
            knn: KnnConfig::new(k, globals.metric, task),
            mode: SelectionMode::ExternalTest,
            rng_seed: globals.seed,
        };
        let started = Instant::now();
        let result = forward_select(&train, &eval_features, Some(&eval_response), &cfg)?;
        let seconds = started.elapsed().as_secs_f64();
        writer.write_record([
            args.n.to_string(),
            p.to_string(),
            result.trace.evaluations.to_string(),
            seconds.to_string(),
        ])?;
    }
    writer.flush()?;
    Ok(())
}
