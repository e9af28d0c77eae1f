//! Synthetic dataset generators for the simulation studies.
//!
//! Two designs are provided:
//! - a logistic-Bernoulli classification design: equicorrelated Gaussian
//!   features, of which the first `signal` columns drive
//!   `P(y = 1 | x) = sigmoid(x' beta)`;
//! - an interaction regression design over nine predictors with response
//!   `y = 0.13 x1 - 0.5 x3 - 0.17 x7 x9 + eps` (1-based column names; the
//!   signal columns are 0, 2, 6, 8 in 0-based indices).
//!
//! Both are pure functions of (config, seed). Draw order is fixed: features
//! first (row by row, column by column), then the response noise, then the
//! optional column permutation, so the same seed always yields the same
//! dataset bit for bit.

use serde::{Deserialize, Serialize};

use crate::dataset::{Dataset, Response};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rng::SplitMix64;

/// Predictor count of the regression design.
pub const REGRESSION_P: usize = 9;

/// Configuration of the classification design.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifSimConfig {
    pub n: usize,
    pub p: usize,
    /// Number of signal predictors; these are the first `signal` columns
    /// before any shuffle.
    pub signal: usize,
    /// Logistic coefficients over the signal columns; length must equal
    /// `signal`. The all-ones default is a convention of this crate, not a
    /// reported value.
    pub beta: Vec<f64>,
    /// Equicorrelation of the Gaussian features, in `[0, 1)`.
    pub correlation: f64,
    /// Permute the columns after generation and record where the signal
    /// columns ended up.
    pub shuffle_columns: bool,
    pub seed: u64,
}

impl ClassifSimConfig {
    /// Defaults: all-ones beta, independent features, no shuffle.
    pub fn new(n: usize, p: usize, signal: usize, seed: u64) -> ClassifSimConfig {
        ClassifSimConfig {
            n,
            p,
            signal,
            beta: vec![1.0; signal],
            correlation: 0.0,
            shuffle_columns: false,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 || self.p == 0 {
            return Err(Error::EmptyData);
        }
        if self.signal > self.p {
            return Err(Error::InvalidConfig(format!(
                "signal count {} exceeds predictor count {}",
                self.signal, self.p
            )));
        }
        if self.beta.len() != self.signal {
            return Err(Error::InvalidConfig(format!(
                "beta has length {}, expected {} (one per signal column)",
                self.beta.len(),
                self.signal
            )));
        }
        check_correlation(self.correlation)
    }
}

/// Configuration of the regression design (always nine predictors).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegressSimConfig {
    pub n: usize,
    /// Standard deviation of the additive Gaussian noise; zero gives the
    /// noiseless response surface.
    pub noise_sd: f64,
    pub correlation: f64,
    pub seed: u64,
}

impl RegressSimConfig {
    /// Defaults: unit noise, independent features.
    pub fn new(n: usize, seed: u64) -> RegressSimConfig {
        RegressSimConfig {
            n,
            noise_sd: 1.0,
            correlation: 0.0,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidConfig(format!(
                "regression design needs at least 2 observations, got {}",
                self.n
            )));
        }
        if !self.noise_sd.is_finite() || self.noise_sd < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "noise standard deviation must be a finite nonnegative real, got {}",
                self.noise_sd
            )));
        }
        check_correlation(self.correlation)
    }
}

/// Generator bookkeeping stored next to the data: which output columns carry
/// signal, and the permutation applied when columns were shuffled
/// (`permutation[j]` is the pre-shuffle index of output column `j`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimMetadata {
    pub seed: u64,
    pub signal_indices: Vec<usize>,
    pub permutation: Option<Vec<usize>>,
}

fn check_correlation(rho: f64) -> Result<()> {
    if !rho.is_finite() || !(0.0..1.0).contains(&rho) {
        return Err(Error::InvalidCorrelation(rho));
    }
    Ok(())
}

/// Lower-triangular Cholesky factor of a symmetric positive-definite matrix.
fn cholesky_lower(a: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let n = a.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let dot: f64 = l[i][..j].iter().zip(&l[j][..j]).map(|(x, y)| x * y).sum();
            let sum = a[i][j] - dot;
            if i == j {
                if sum <= 0.0 {
                    return Err(Error::InvalidConfig(
                        "covariance matrix is not positive definite".to_string(),
                    ));
                }
                l[i][j] = sum.sqrt();
            } else {
                l[i][j] = sum / l[j][j];
            }
        }
    }
    Ok(l)
}

fn sample_mvn_with(rng: &mut SplitMix64, n: usize, p: usize, rho: f64) -> Result<Matrix> {
    let mut cov = vec![vec![rho; p]; p];
    for (i, row) in cov.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let factor = cholesky_lower(&cov)?;
    let mut out = Matrix::zeros(n, p);
    let mut z = vec![0.0; p];
    for i in 0..n {
        for slot in z.iter_mut() {
            *slot = rng.next_normal();
        }
        for (j, factor_row) in factor.iter().enumerate() {
            let value: f64 = factor_row[..=j].iter().zip(&z).map(|(f, zl)| f * zl).sum();
            out.set(i, j, value);
        }
    }
    Ok(out)
}

/// `n` draws from the p-variate normal with unit variances and constant
/// pairwise correlation `rho`, via the Cholesky factor of the
/// equicorrelation matrix applied to seeded standard normals.
pub fn sample_mvn_equicorrelated(n: usize, p: usize, rho: f64, seed: u64) -> Result<Matrix> {
    if n == 0 || p == 0 {
        return Err(Error::EmptyData);
    }
    check_correlation(rho)?;
    sample_mvn_with(&mut SplitMix64::new(seed), n, p, rho)
}

fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

fn default_column_names(p: usize) -> Vec<String> {
    (1..=p).map(|j| format!("x{j}")).collect()
}

/// Generates the logistic-Bernoulli classification dataset. Labels are the
/// strings "0" and "1".
pub fn gen_classification(cfg: &ClassifSimConfig) -> Result<(Dataset, SimMetadata)> {
    cfg.validate()?;
    let mut rng = SplitMix64::new(cfg.seed);
    let features = sample_mvn_with(&mut rng, cfg.n, cfg.p, cfg.correlation)?;
    let mut labels = Vec::with_capacity(cfg.n);
    for i in 0..cfg.n {
        let logit: f64 = features.row(i)[..cfg.signal]
            .iter()
            .zip(&cfg.beta)
            .map(|(x, b)| x * b)
            .sum();
        let y = rng.next_f64() < sigmoid(logit);
        labels.push(if y { "1" } else { "0" });
    }

    let names = default_column_names(cfg.p);
    let (features, names, metadata) = if cfg.shuffle_columns {
        let permutation = rng.permutation(cfg.p);
        let features = features.select_columns(&permutation)?;
        let names = permutation.iter().map(|&j| names[j].clone()).collect();
        let signal_indices = (0..cfg.p)
            .filter(|&j| permutation[j] < cfg.signal)
            .collect();
        let metadata = SimMetadata {
            seed: cfg.seed,
            signal_indices,
            permutation: Some(permutation),
        };
        (features, names, metadata)
    } else {
        let metadata = SimMetadata {
            seed: cfg.seed,
            signal_indices: (0..cfg.signal).collect(),
            permutation: None,
        };
        (features, names, metadata)
    };
    let dataset = Dataset::new(features, names, Response::labels(&labels))?;
    Ok((dataset, metadata))
}

/// Noiseless regression response surface over a row of at least nine
/// features: `0.13 x1 - 0.5 x3 - 0.17 x7 x9` in 1-based column terms.
pub fn regression_mean(x: &[f64]) -> f64 {
    assert!(x.len() >= REGRESSION_P, "need {} predictors", REGRESSION_P);
    0.13 * x[0] - 0.5 * x[2] - 0.17 * x[6] * x[8]
}

/// Generates the interaction regression dataset with nine predictors.
pub fn gen_regression(cfg: &RegressSimConfig) -> Result<(Dataset, SimMetadata)> {
    cfg.validate()?;
    let mut rng = SplitMix64::new(cfg.seed);
    let features = sample_mvn_with(&mut rng, cfg.n, REGRESSION_P, cfg.correlation)?;
    let mut targets = Vec::with_capacity(cfg.n);
    for i in 0..cfg.n {
        targets.push(regression_mean(features.row(i)) + cfg.noise_sd * rng.next_normal());
    }
    let dataset = Dataset::new(
        features,
        default_column_names(REGRESSION_P),
        Response::targets(targets),
    )?;
    let metadata = SimMetadata {
        seed: cfg.seed,
        signal_indices: vec![0, 2, 6, 8],
        permutation: None,
    };
    Ok((dataset, metadata))
}
