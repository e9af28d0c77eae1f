//! `simulate`: write a synthetic dataset CSV plus a metadata sidecar.

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, ValueEnum};
use serde::Serialize;

use crate::{require_flag, usage_error, Globals};
use knn_select::io::write_dataset_path;
use knn_select::{
    gen_classification, gen_regression, ClassifSimConfig, RegressSimConfig, SimMetadata,
    REGRESSION_P,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SimKind {
    /// Logistic-Bernoulli classification design.
    Class,
    /// Nine-predictor interaction regression design.
    Reg,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    /// Design to generate.
    #[arg(long, value_enum)]
    pub kind: SimKind,

    /// Observation count.
    #[arg(long)]
    pub n: usize,

    /// Predictor count (classification design).
    #[arg(long)]
    pub p: Option<usize>,

    /// Signal predictor count (classification design).
    #[arg(long)]
    pub signal: Option<usize>,

    /// Logistic coefficients over the signal columns, comma-separated;
    /// defaults to all ones.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub beta: Option<Vec<f64>>,

    /// Equicorrelation of the Gaussian features, in [0, 1).
    #[arg(long, default_value_t = 0.0)]
    pub rho: f64,

    /// Noise standard deviation (regression design).
    #[arg(long = "noise-sd", default_value_t = 1.0)]
    pub noise_sd: f64,

    /// Shuffle columns and record where the signal columns landed.
    #[arg(long = "shuffle-columns")]
    pub shuffle_columns: bool,

    /// Output CSV (features plus response column `y`).
    #[arg(long)]
    pub out: PathBuf,

    /// Metadata sidecar path; defaults to `<out>.meta.json`.
    #[arg(long = "out-meta")]
    pub out_meta: Option<PathBuf>,
}

#[derive(Serialize)]
struct Sidecar<'a, C: Serialize> {
    kind: &'static str,
    seed: u64,
    signal_indices: &'a [usize],
    permutation: Option<&'a [usize]>,
    config: &'a C,
}

fn write_sidecar<C: Serialize>(
    path: &PathBuf,
    kind: &'static str,
    metadata: &SimMetadata,
    config: &C,
) -> Result<()> {
    let sidecar = Sidecar {
        kind,
        seed: metadata.seed,
        signal_indices: &metadata.signal_indices,
        permutation: metadata.permutation.as_deref(),
        config,
    };
    let file = File::create(path)?;
    serde_json::to_writer_pretty(BufWriter::new(file), &sidecar)?;
    Ok(())
}

pub fn run(globals: &Globals, args: &SimulateArgs) -> Result<()> {
    let meta_path = args.out_meta.clone().unwrap_or_else(|| {
        let mut os = args.out.clone().into_os_string();
        os.push(".meta.json");
        PathBuf::from(os)
    });
    match args.kind {
        SimKind::Class => {
            let p = require_flag(args.p, "--p");
            let signal = require_flag(args.signal, "--signal");
            let mut cfg = ClassifSimConfig::new(args.n, p, signal, globals.seed);
            if let Some(beta) = &args.beta {
                cfg.beta = beta.clone();
            }
            cfg.correlation = args.rho;
            cfg.shuffle_columns = args.shuffle_columns;
            let (dataset, metadata) = gen_classification(&cfg)?;
            write_dataset_path(&args.out, &dataset, "y")?;
            write_sidecar(&meta_path, "class", &metadata, &cfg)?;
        }
        SimKind::Reg => {
            if let Some(p) = args.p {
                if p != REGRESSION_P {
                    usage_error(format!(
                        "the regression design always has {REGRESSION_P} predictors; drop --p or pass {REGRESSION_P}"
                    ));
                }
            }
            if args.signal.is_some() || args.beta.is_some() {
                usage_error("--signal and --beta apply only to --kind class".to_string());
            }
            let mut cfg = RegressSimConfig::new(args.n, globals.seed);
            cfg.noise_sd = args.noise_sd;
            cfg.correlation = args.rho;
            let (dataset, metadata) = gen_regression(&cfg)?;
            write_dataset_path(&args.out, &dataset, "y")?;
            write_sidecar(&meta_path, "reg", &metadata, &cfg)?;
        }
    }
    Ok(())
}
