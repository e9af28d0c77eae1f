//! k-nearest-neighbor prediction over a training [`Dataset`].
//!
//! Neighbor search is an exhaustive scan: every training row's distance to
//! the query is computed and the k smallest are kept. That keeps prediction
//! exact and deterministic; with the row-index tie rule below, two runs (or
//! any parallel schedule) always produce identical output.
//!
//! Tie rules, fixed once so selection traces are reproducible:
//! - equal distances at the k-th rank keep the smaller training-row index;
//! - equal class votes keep the smaller class code;
//! - class codes follow first appearance in the training response.

use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::distance::DistanceMetric;
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Prediction task kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    Classification,
    Regression,
}

/// Deterministic tie-break policy. Only one policy is defined: the smaller
/// index (training row, class code, variable, level, or k) always wins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TieBreak {
    #[default]
    SmallestIndex,
}

/// Prediction configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KnnConfig {
    /// Neighbor count, `1 <= k <= n_train`.
    pub k: usize,
    pub metric: DistanceMetric,
    pub task: Task,
    pub tie_break: TieBreak,
}

impl KnnConfig {
    pub fn new(k: usize, metric: DistanceMetric, task: Task) -> KnnConfig {
        KnnConfig {
            k,
            metric,
            task,
            tie_break: TieBreak::default(),
        }
    }
}

/// The k training rows nearest to a query, sorted by ascending distance
/// (row index breaks exact distance ties).
#[derive(Debug, Clone, PartialEq)]
pub struct NeighborSet {
    indices: Vec<usize>,
    distances: Vec<f64>,
}

impl NeighborSet {
    /// Training-row indices, one per neighbor.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// Distances aligned with `indices`, nondecreasing.
    pub fn distances(&self) -> &[f64] {
        &self.distances
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

fn check_query(train: &Dataset, query: &[f64]) -> Result<()> {
    if query.len() != train.p() {
        return Err(Error::LengthMismatch {
            left: query.len(),
            right: train.p(),
        });
    }
    if let Some(col) = query.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFiniteValue { row: 0, col });
    }
    Ok(())
}

/// The `k` training rows with smallest distance to `query`.
pub fn find_neighbors(
    train: &Dataset,
    query: &[f64],
    k: usize,
    metric: DistanceMetric,
) -> Result<NeighborSet> {
    if k == 0 || k > train.n() {
        return Err(Error::KTooLarge {
            k,
            n_train: train.n(),
        });
    }
    check_query(train, query)?;
    metric.validate()?;
    let mut ranked: Vec<(f64, usize)> = Vec::with_capacity(train.n());
    for (idx, row) in train.features().iter_rows().enumerate() {
        ranked.push((metric.distance(row, query)?, idx));
    }
    ranked.sort_unstable_by(|a, b| {
        a.0.partial_cmp(&b.0)
            .expect("distances are finite")
            .then_with(|| a.1.cmp(&b.1))
    });
    ranked.truncate(k);
    Ok(NeighborSet {
        indices: ranked.iter().map(|&(_, idx)| idx).collect(),
        distances: ranked.iter().map(|&(d, _)| d).collect(),
    })
}

fn require_task(cfg: &KnnConfig, train: &Dataset, expected: Task) -> Result<()> {
    if cfg.task != expected {
        return Err(Error::TaskMismatch {
            expected,
            actual: cfg.task,
        });
    }
    if train.response().task() != expected {
        return Err(Error::TaskMismatch {
            expected,
            actual: train.response().task(),
        });
    }
    Ok(())
}

/// Neighbor vote counts by class code.
fn vote_counts(train: &Dataset, query: &[f64], cfg: &KnnConfig) -> Result<Vec<usize>> {
    require_task(cfg, train, Task::Classification)?;
    let labels = train.response().as_labels().expect("checked above");
    let neighbors = find_neighbors(train, query, cfg.k, cfg.metric)?;
    let mut counts = vec![0usize; labels.n_classes()];
    for &idx in neighbors.indices() {
        counts[labels.code(idx)] += 1;
    }
    Ok(counts)
}

/// Majority-vote class code; ties go to the smaller code.
pub(crate) fn classify_code(train: &Dataset, query: &[f64], cfg: &KnnConfig) -> Result<usize> {
    let counts = vote_counts(train, query, cfg)?;
    let mut best = 0;
    for (code, &count) in counts.iter().enumerate() {
        if count > counts[best] {
            best = code;
        }
    }
    Ok(best)
}

/// Majority-vote class label for `query`.
pub fn classify(train: &Dataset, query: &[f64], cfg: &KnnConfig) -> Result<String> {
    let code = classify_code(train, query, cfg)?;
    let labels = train.response().as_labels().expect("classification data");
    Ok(labels.class_name(code).to_string())
}

/// Vote fractions per class: entry `g` is (neighbors in class g) / k.
pub fn class_probabilities(train: &Dataset, query: &[f64], cfg: &KnnConfig) -> Result<Vec<f64>> {
    let counts = vote_counts(train, query, cfg)?;
    Ok(counts
        .iter()
        .map(|&c| c as f64 / cfg.k as f64)
        .collect())
}

/// Mean of the k nearest targets.
pub fn predict_regression(train: &Dataset, query: &[f64], cfg: &KnnConfig) -> Result<f64> {
    require_task(cfg, train, Task::Regression)?;
    let targets = train.response().as_targets().expect("checked above");
    let neighbors = find_neighbors(train, query, cfg.k, cfg.metric)?;
    let sum: f64 = neighbors.indices().iter().map(|&idx| targets[idx]).sum();
    Ok(sum / cfg.k as f64)
}

/// Batch prediction output, aligned with the query rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Predictions {
    Labels(Vec<String>),
    Values(Vec<f64>),
}

impl Predictions {
    pub fn len(&self) -> usize {
        match self {
            Predictions::Labels(l) => l.len(),
            Predictions::Values(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Predicts every row of `queries`; output order matches query order.
pub fn predict_batch(train: &Dataset, queries: &Matrix, cfg: &KnnConfig) -> Result<Predictions> {
    if queries.cols() != train.p() {
        return Err(Error::LengthMismatch {
            left: queries.cols(),
            right: train.p(),
        });
    }
    if let Some((row, col)) = queries.first_non_finite() {
        return Err(Error::NonFiniteValue { row, col });
    }
    match cfg.task {
        Task::Classification => {
            let mut out = Vec::with_capacity(queries.rows());
            for row in queries.iter_rows() {
                out.push(classify(train, row, cfg)?);
            }
            Ok(Predictions::Labels(out))
        }
        Task::Regression => {
            let mut out = Vec::with_capacity(queries.rows());
            for row in queries.iter_rows() {
                out.push(predict_regression(train, row, cfg)?);
            }
            Ok(Predictions::Values(out))
        }
    }
}
