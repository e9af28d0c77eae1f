//! Greedy forward variable selection for kNN.
//!
//! Selection builds one level per predictor. Level `i` tries every variable
//! not yet chosen alongside the `i - 1` already-selected ones, scores each
//! candidate subset with a fresh kNN fit on held-out loss (accuracy for
//! classification, MSE for regression), keeps the best, and moves on. The
//! full sweep therefore costs `p + (p-1) + ... + 1 = p(p+1)/2` model
//! evaluations instead of the `2^p - 1` an all-subsets grid would need.
//!
//! Two evaluation modes mirror how labeled data may arrive:
//! - [`SelectionMode::ExternalTest`]: the caller supplies an evaluation set
//!   with its response; every candidate is fit on the full training data and
//!   scored on that set.
//! - [`SelectionMode::InternalSplit`]: no evaluation labels exist, so the
//!   training data is split by a seeded shuffle (70/30 by default); selection
//!   is scored on the internal holdout and the reported loss is that holdout
//!   loss. Final predictions refit on the full training data restricted to
//!   the winning subset.
//!
//! Everything is deterministic: identical inputs, seed, and config produce
//! bit-identical traces. Ties always resolve to the smallest index (variable,
//! level, class, or k), and candidate evaluation order cannot change the
//! outcome.

use serde::{Deserialize, Serialize};

use crate::dataset::{Dataset, Response};
use crate::error::{Error, Result};
use crate::eval::{accuracy, mse, split};
use crate::knn::{classify_code, predict_batch, predict_regression, KnnConfig, Predictions, Task};
use crate::matrix::Matrix;
use crate::rng::SplitMix64;

/// Where held-out loss comes from during selection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SelectionMode {
    /// Score candidates on a caller-supplied evaluation set with labels.
    ExternalTest,
    /// Carve a seeded internal holdout out of the training data.
    InternalSplit { train_fraction: f64 },
}

impl SelectionMode {
    /// Internal split at the conventional 70/30 ratio.
    pub fn internal_split_default() -> SelectionMode {
        SelectionMode::InternalSplit { train_fraction: 0.7 }
    }
}

/// Configuration for a selection run.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionConfig {
    pub knn: KnnConfig,
    pub mode: SelectionMode,
    /// Seeds the internal split; ignored in external-test mode.
    pub rng_seed: u64,
}

/// One level of the forward sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelRecord {
    /// 1-based level number; the cumulative set has this many variables.
    pub level: usize,
    /// `(variable index, loss)` for every candidate tried at this level,
    /// listed in ascending variable order regardless of evaluation order.
    pub candidates: Vec<(usize, f64)>,
    pub chosen_variable: usize,
    pub chosen_loss: f64,
    /// Selected variables after this level, in selection order.
    pub cumulative_set: Vec<usize>,
}

/// Complete record of a forward-selection sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionTrace {
    pub levels: Vec<LevelRecord>,
    /// Number of kNN model evaluations performed; always `p(p+1)/2`.
    pub evaluations: u64,
}

/// Outcome of forward selection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionResult {
    /// Winning subset in selection order; equals the cumulative set of the
    /// best level.
    pub selected_variables: Vec<usize>,
    /// 1-based level whose loss was optimal (ties prefer fewer variables).
    pub best_level: usize,
    /// Loss of the best level (held-out accuracy or MSE, per task).
    pub best_loss: f64,
    /// Predictions on the evaluation rows using the winning subset.
    pub predictions: Predictions,
    pub trace: SelectionTrace,
}

/// Number of kNN evaluations a forward sweep over `p` variables performs.
pub fn evaluation_count(p: usize) -> u64 {
    let p = p as u64;
    p * (p + 1) / 2
}

/// Candidate evaluation order inside a level. Exists so tests can prove the
/// outcome is schedule-independent; results are identical either way.
#[doc(hidden)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateOrder {
    Ascending,
    Descending,
}

/// True when `loss` improves on `best` for the task.
fn improves(task: Task, loss: f64, best: f64) -> bool {
    match task {
        Task::Classification => loss > best,
        Task::Regression => loss < best,
    }
}

/// Held-out loss of a kNN fit: accuracy for classification, MSE for
/// regression. Score labels unseen in the fit data count as misses.
fn score_knn(
    fit: &Dataset,
    score_features: &Matrix,
    score_response: &Response,
    cfg: &KnnConfig,
) -> Result<f64> {
    if score_features.rows() != score_response.len() {
        return Err(Error::DimensionMismatch {
            expected: score_features.rows(),
            actual: score_response.len(),
        });
    }
    match cfg.task {
        Task::Classification => {
            let fit_labels = fit.response().as_labels().ok_or(Error::TaskMismatch {
                expected: Task::Classification,
                actual: fit.response().task(),
            })?;
            let actual_labels = score_response.as_labels().ok_or(Error::TaskMismatch {
                expected: Task::Classification,
                actual: score_response.task(),
            })?;
            let actual: Vec<Option<usize>> = actual_labels
                .codes()
                .iter()
                .map(|&code| fit_labels.code_of(actual_labels.class_name(code)))
                .collect();
            let mut predicted = Vec::with_capacity(score_features.rows());
            for row in score_features.iter_rows() {
                predicted.push(Some(classify_code(fit, row, cfg)?));
            }
            accuracy(&predicted, &actual)
        }
        Task::Regression => {
            let targets = score_response.as_targets().ok_or(Error::TaskMismatch {
                expected: Task::Regression,
                actual: score_response.task(),
            })?;
            let mut predicted = Vec::with_capacity(score_features.rows());
            for row in score_features.iter_rows() {
                predicted.push(predict_regression(fit, row, cfg)?);
            }
            mse(&predicted, targets)
        }
    }
}

/// Greedy forward selection (ascending candidate order).
///
/// `eval_features` must have the same columns (count and order) as `train`.
/// `eval_response` is required in external-test mode and ignored otherwise.
pub fn forward_select(
    train: &Dataset,
    eval_features: &Matrix,
    eval_response: Option<&Response>,
    cfg: &SelectionConfig,
) -> Result<SelectionResult> {
    forward_select_with_order(train, eval_features, eval_response, cfg, CandidateOrder::Ascending)
}

#[doc(hidden)]
pub fn forward_select_with_order(
    train: &Dataset,
    eval_features: &Matrix,
    eval_response: Option<&Response>,
    cfg: &SelectionConfig,
    order: CandidateOrder,
) -> Result<SelectionResult> {
    let task = cfg.knn.task;
    if train.response().task() != task {
        return Err(Error::TaskMismatch {
            expected: task,
            actual: train.response().task(),
        });
    }
    if eval_features.cols() != train.p() {
        return Err(Error::SchemaMismatch(format!(
            "evaluation features have {} columns, training data has {}",
            eval_features.cols(),
            train.p()
        )));
    }
    if let Some((row, col)) = eval_features.first_non_finite() {
        return Err(Error::NonFiniteValue { row, col });
    }
    cfg.knn.metric.validate()?;

    // Fit and score partitions for candidate evaluation.
    let (fit, score_features, score_response) = match cfg.mode {
        SelectionMode::ExternalTest => {
            let response = eval_response.ok_or(Error::ResponseMissing)?;
            if response.len() != eval_features.rows() {
                return Err(Error::DimensionMismatch {
                    expected: eval_features.rows(),
                    actual: response.len(),
                });
            }
            if response.task() != task {
                return Err(Error::TaskMismatch {
                    expected: task,
                    actual: response.task(),
                });
            }
            if eval_features.rows() == 0 {
                return Err(Error::EmptyData);
            }
            (train.clone(), eval_features.clone(), response.clone())
        }
        SelectionMode::InternalSplit { train_fraction } => {
            let plan = split(train.n(), train_fraction, cfg.rng_seed)?;
            let fit = train.select_rows(&plan.train_indices)?;
            let score_features = train.features().select_rows(&plan.test_indices)?;
            let score_response = train.response().select(&plan.test_indices)?;
            (fit, score_features, score_response)
        }
    };
    if cfg.knn.k == 0 || cfg.knn.k > fit.n() {
        return Err(Error::KTooLarge {
            k: cfg.knn.k,
            n_train: fit.n(),
        });
    }

    let p = train.p();
    let mut bag: Vec<usize> = (0..p).collect();
    let mut cumulative: Vec<usize> = Vec::with_capacity(p);
    let mut levels: Vec<LevelRecord> = Vec::with_capacity(p);
    let mut evaluations: u64 = 0;
    let mut subset: Vec<usize> = Vec::with_capacity(p);

    for level in 1..=p {
        let mut candidates: Vec<(usize, f64)> = Vec::with_capacity(bag.len());
        let slots: Vec<usize> = match order {
            CandidateOrder::Ascending => bag.clone(),
            CandidateOrder::Descending => bag.iter().rev().copied().collect(),
        };
        for j in slots {
            subset.clear();
            subset.extend_from_slice(&cumulative);
            subset.push(j);
            let fit_sub = fit.select_columns(&subset)?;
            let score_sub = score_features.select_columns(&subset)?;
            let loss = score_knn(&fit_sub, &score_sub, &score_response, &cfg.knn)?;
            evaluations += 1;
            candidates.push((j, loss));
        }
        // Canonical trace order, independent of evaluation schedule.
        candidates.sort_unstable_by_key(|&(j, _)| j);
        let (mut chosen_variable, mut chosen_loss) = candidates[0];
        for &(j, loss) in &candidates[1..] {
            if improves(task, loss, chosen_loss) {
                chosen_variable = j;
                chosen_loss = loss;
            }
        }
        cumulative.push(chosen_variable);
        bag.retain(|&j| j != chosen_variable);
        levels.push(LevelRecord {
            level,
            candidates,
            chosen_variable,
            chosen_loss,
            cumulative_set: cumulative.clone(),
        });
    }
    debug_assert_eq!(evaluations, evaluation_count(p));

    let mut best_level = 1;
    for record in &levels[1..] {
        if improves(task, record.chosen_loss, levels[best_level - 1].chosen_loss) {
            best_level = record.level;
        }
    }
    let selected_variables = levels[best_level - 1].cumulative_set.clone();
    let best_loss = levels[best_level - 1].chosen_loss;

    // Final predictions always come from the full training data restricted
    // to the winning subset. In external-test mode that is exactly the model
    // that was scored; in internal-split mode it is the refit on all rows.
    let final_fit = train.select_columns(&selected_variables)?;
    let final_queries = eval_features.select_columns(&selected_variables)?;
    let predictions = predict_batch(&final_fit, &final_queries, &cfg.knn)?;

    Ok(SelectionResult {
        selected_variables,
        best_level,
        best_loss,
        predictions,
        trace: SelectionTrace { levels, evaluations },
    })
}

/// Seeded k-fold layout: a shuffled `0..n` cut into `folds` contiguous
/// chunks whose sizes differ by at most one.
fn fold_chunks(n: usize, folds: usize, rng_seed: u64) -> Result<Vec<Vec<usize>>> {
    if folds < 2 {
        return Err(Error::TooFewFolds(folds));
    }
    if n < folds {
        return Err(Error::TooFewRows { n, folds });
    }
    let order = SplitMix64::new(rng_seed).permutation(n);
    let base = n / folds;
    let remainder = n % folds;
    let mut chunks = Vec::with_capacity(folds);
    let mut start = 0;
    for fold in 0..folds {
        let size = base + usize::from(fold < remainder);
        chunks.push(order[start..start + size].to_vec());
        start += size;
    }
    Ok(chunks)
}

/// Mean fold loss for every candidate `k`, in candidate order. Folds come
/// from a seeded shuffle followed by a contiguous partition.
pub fn cross_validate_losses(
    train: &Dataset,
    k_candidates: &[usize],
    folds: usize,
    base: &KnnConfig,
    rng_seed: u64,
) -> Result<Vec<(usize, f64)>> {
    if k_candidates.is_empty() {
        return Err(Error::EmptyInput);
    }
    if train.response().task() != base.task {
        return Err(Error::TaskMismatch {
            expected: base.task,
            actual: train.response().task(),
        });
    }
    let chunks = fold_chunks(train.n(), folds, rng_seed)?;
    let max_chunk = chunks.iter().map(Vec::len).max().unwrap_or(0);
    let min_fit_size = train.n() - max_chunk;
    for &k in k_candidates {
        if k == 0 || k > min_fit_size {
            return Err(Error::KTooLarge {
                k,
                n_train: min_fit_size,
            });
        }
    }

    let mut losses = Vec::with_capacity(k_candidates.len());
    for &k in k_candidates {
        let cfg = KnnConfig { k, ..*base };
        let mut total = 0.0;
        for chunk in &chunks {
            let fit_indices: Vec<usize> = (0..train.n())
                .filter(|idx| !chunk.contains(idx))
                .collect();
            let fit = train.select_rows(&fit_indices)?;
            let score_features = train.features().select_rows(chunk)?;
            let score_response = train.response().select(chunk)?;
            total += score_knn(&fit, &score_features, &score_response, &cfg)?;
        }
        losses.push((k, total / chunks.len() as f64));
    }
    Ok(losses)
}

/// Picks the candidate `k` with the best mean fold loss (ties take the
/// smallest k).
pub fn cross_validate_k(
    train: &Dataset,
    k_candidates: &[usize],
    folds: usize,
    base: &KnnConfig,
    rng_seed: u64,
) -> Result<usize> {
    let losses = cross_validate_losses(train, k_candidates, folds, base, rng_seed)?;
    let mut best = losses[0];
    for &(k, loss) in &losses[1..] {
        if improves(base.task, loss, best.1) || (loss == best.1 && k < best.0) {
            best = (k, loss);
        }
    }
    Ok(best.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::Response;
    use crate::distance::DistanceMetric;

    fn external_cfg(k: usize, task: Task) -> SelectionConfig {
        SelectionConfig {
            knn: KnnConfig::new(k, DistanceMetric::Euclidean, task),
            mode: SelectionMode::ExternalTest,
            rng_seed: 0,
        }
    }

    /// Two-class data where column 0 equals the class code exactly and the
    /// other columns are deterministic pseudo-noise.
    fn separator_dataset(n: usize, p: usize) -> (Dataset, Matrix, Response) {
        let mut rng = SplitMix64::new(424242);
        let mut rows = Vec::with_capacity(n);
        let mut labels = Vec::with_capacity(n);
        for i in 0..n {
            let class = i % 2;
            let mut row = vec![class as f64];
            for _ in 1..p {
                row.push(rng.next_f64() * 10.0);
            }
            rows.push(row);
            labels.push(class.to_string());
        }
        let names = (0..p).map(|j| format!("x{j}")).collect();
        let train = Dataset::new(
            Matrix::from_rows(rows).unwrap(),
            names,
            Response::labels(&labels),
        )
        .unwrap();
        let mut eval_rows = Vec::new();
        let mut eval_labels = Vec::new();
        for i in 0..6 {
            let class = i % 2;
            let mut row = vec![class as f64];
            for _ in 1..p {
                row.push(rng.next_f64() * 10.0);
            }
            eval_rows.push(row);
            eval_labels.push(class.to_string());
        }
        (
            train,
            Matrix::from_rows(eval_rows).unwrap(),
            Response::labels(&eval_labels),
        )
    }

    #[test]
    fn single_variable_dataset_is_degenerate() {
        let (train, eval, resp) = separator_dataset(8, 1);
        let result = forward_select(&train, &eval, Some(&resp), &external_cfg(1, Task::Classification))
            .unwrap();
        assert_eq!(result.trace.levels.len(), 1);
        assert_eq!(result.selected_variables, vec![0]);
        assert_eq!(result.trace.evaluations, 1);
    }

    #[test]
    fn perfect_separator_is_chosen_first() {
        let (train, eval, resp) = separator_dataset(12, 2);
        let result = forward_select(&train, &eval, Some(&resp), &external_cfg(1, Task::Classification))
            .unwrap();
        assert_eq!(result.trace.levels[0].chosen_variable, 0);
        assert_eq!(result.trace.levels[0].chosen_loss, 1.0);
        assert_eq!(result.best_level, 1);
        assert_eq!(result.best_loss, 1.0);
        assert_eq!(result.selected_variables, vec![0]);
    }

    #[test]
    fn level_one_matches_exhaustive_single_variable_scan() {
        // Independent oracle: score each single variable directly.
        let (train, eval, resp) = separator_dataset(20, 4);
        let cfg = external_cfg(3, Task::Classification);
        let result = forward_select(&train, &eval, Some(&resp), &cfg).unwrap();
        let mut oracle_best: Option<(usize, f64)> = None;
        for j in 0..train.p() {
            let fit = train.select_columns(&[j]).unwrap();
            let feats = eval.select_columns(&[j]).unwrap();
            let loss = score_knn(&fit, &feats, &resp, &cfg.knn).unwrap();
            let better = match oracle_best {
                None => true,
                Some((_, best)) => loss > best,
            };
            if better {
                oracle_best = Some((j, loss));
            }
        }
        assert_eq!(result.trace.levels[0].chosen_variable, oracle_best.unwrap().0);
    }

    #[test]
    fn trace_structure_and_model_count() {
        let (train, eval, resp) = separator_dataset(20, 6);
        let result = forward_select(&train, &eval, Some(&resp), &external_cfg(3, Task::Classification))
            .unwrap();
        let p = train.p();
        assert_eq!(result.trace.evaluations, evaluation_count(p));
        for (i, record) in result.trace.levels.iter().enumerate() {
            let level = i + 1;
            assert_eq!(record.level, level);
            assert_eq!(record.candidates.len(), p - level + 1);
            assert_eq!(record.cumulative_set.len(), level);
            if i > 0 {
                let prev = &result.trace.levels[i - 1].cumulative_set;
                assert_eq!(&record.cumulative_set[..i], prev.as_slice());
            }
            let best = record
                .candidates
                .iter()
                .cloned()
                .reduce(|acc, cand| if cand.1 > acc.1 { cand } else { acc })
                .unwrap();
            assert_eq!(record.chosen_loss, best.1);
        }
        assert_eq!(result.selected_variables.len(), result.best_level);
        assert_eq!(
            result.selected_variables,
            result.trace.levels[result.best_level - 1].cumulative_set
        );
        let optimal = result
            .trace
            .levels
            .iter()
            .map(|r| r.chosen_loss)
            .fold(f64::MIN, f64::max);
        assert_eq!(result.best_loss, optimal);
    }

    #[test]
    fn evaluation_count_closed_form() {
        assert_eq!(evaluation_count(1), 1);
        assert_eq!(evaluation_count(10), 55);
        assert_eq!(evaluation_count(30), 465);
    }

    #[test]
    fn runs_are_deterministic() {
        let (train, eval, resp) = separator_dataset(20, 5);
        let cfg = external_cfg(3, Task::Classification);
        let a = forward_select(&train, &eval, Some(&resp), &cfg).unwrap();
        let b = forward_select(&train, &eval, Some(&resp), &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn candidate_order_does_not_change_the_trace() {
        let (train, eval, resp) = separator_dataset(20, 5);
        let cfg = external_cfg(3, Task::Classification);
        let asc = forward_select_with_order(&train, &eval, Some(&resp), &cfg, CandidateOrder::Ascending)
            .unwrap();
        let desc =
            forward_select_with_order(&train, &eval, Some(&resp), &cfg, CandidateOrder::Descending)
                .unwrap();
        assert_eq!(asc, desc);
    }

    #[test]
    fn internal_split_scores_on_holdout_and_refits_for_predictions() {
        let (train, eval, _) = separator_dataset(30, 3);
        let cfg = SelectionConfig {
            knn: KnnConfig::new(1, DistanceMetric::Euclidean, Task::Classification),
            mode: SelectionMode::internal_split_default(),
            rng_seed: 7,
        };
        let result = forward_select(&train, &eval, None, &cfg).unwrap();
        assert_eq!(result.predictions.len(), eval.rows());
        // Column 0 separates classes perfectly, so the internal holdout
        // must score it 1.0 at level 1.
        assert_eq!(result.trace.levels[0].chosen_variable, 0);
        assert_eq!(result.best_loss, 1.0);
        // Same seed, same outcome.
        let again = forward_select(&train, &eval, None, &cfg).unwrap();
        assert_eq!(result, again);
    }

    #[test]
    fn external_mode_requires_response() {
        let (train, eval, _) = separator_dataset(10, 2);
        let err = forward_select(&train, &eval, None, &external_cfg(1, Task::Classification))
            .unwrap_err();
        assert!(matches!(err, Error::ResponseMissing));
    }

    #[test]
    fn schema_mismatch_on_column_count() {
        let (train, _, resp) = separator_dataset(10, 3);
        let narrow = Matrix::zeros(4, 2);
        let err = forward_select(&train, &narrow, Some(&resp), &external_cfg(1, Task::Classification))
            .unwrap_err();
        assert!(matches!(err, Error::SchemaMismatch(_)));
    }

    #[test]
    fn k_is_checked_against_fit_partition() {
        let (train, eval, resp) = separator_dataset(10, 2);
        let err = forward_select(&train, &eval, Some(&resp), &external_cfg(11, Task::Classification))
            .unwrap_err();
        assert!(matches!(err, Error::KTooLarge { k: 11, n_train: 10 }));
        // Internal split checks against the 70% partition, not all rows.
        let cfg = SelectionConfig {
            knn: KnnConfig::new(8, DistanceMetric::Euclidean, Task::Classification),
            mode: SelectionMode::internal_split_default(),
            rng_seed: 0,
        };
        let err = forward_select(&train, &eval, None, &cfg).unwrap_err();
        assert!(matches!(err, Error::KTooLarge { k: 8, n_train: 7 }));
    }

    fn two_blob_dataset(per_class: usize) -> Dataset {
        let mut rng = SplitMix64::new(31);
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for i in 0..2 * per_class {
            let class = i % 2;
            let center = if class == 0 { 0.0 } else { 100.0 };
            rows.push(vec![center + rng.next_f64(), center + rng.next_f64()]);
            labels.push(class.to_string());
        }
        Dataset::new(
            Matrix::from_rows(rows).unwrap(),
            vec!["x0".to_string(), "x1".to_string()],
            Response::labels(&labels),
        )
        .unwrap()
    }

    #[test]
    fn cv_single_candidate_is_returned() {
        let train = two_blob_dataset(6);
        let cfg = KnnConfig::new(1, DistanceMetric::Euclidean, Task::Classification);
        assert_eq!(cross_validate_k(&train, &[5], 3, &cfg, 11).unwrap(), 5);
    }

    #[test]
    fn cv_tie_on_separable_blobs_prefers_smaller_k() {
        let train = two_blob_dataset(6);
        let cfg = KnnConfig::new(1, DistanceMetric::Euclidean, Task::Classification);
        let seed = 13;
        // Direct evaluation: both candidates classify every fold perfectly.
        let chunks = fold_chunks(train.n(), 3, seed).unwrap();
        for k in [1usize, 3] {
            let cfg_k = KnnConfig { k, ..cfg };
            for chunk in &chunks {
                let fit_indices: Vec<usize> =
                    (0..train.n()).filter(|i| !chunk.contains(i)).collect();
                let fit = train.select_rows(&fit_indices).unwrap();
                let feats = train.features().select_rows(chunk).unwrap();
                let resp = train.response().select(chunk).unwrap();
                assert_eq!(score_knn(&fit, &feats, &resp, &cfg_k).unwrap(), 1.0);
            }
        }
        assert_eq!(cross_validate_k(&train, &[1, 3], 3, &cfg, seed).unwrap(), 1);
        assert_eq!(cross_validate_k(&train, &[3, 1], 3, &cfg, seed).unwrap(), 1);
    }

    #[test]
    fn cv_rejects_oversized_k_and_bad_folds() {
        let train = two_blob_dataset(5); // n = 10
        let cfg = KnnConfig::new(1, DistanceMetric::Euclidean, Task::Classification);
        // folds = 2 -> each training part has 5 rows; k = 10 cannot fit.
        assert!(matches!(
            cross_validate_k(&train, &[1, 10], 2, &cfg, 0),
            Err(Error::KTooLarge { k: 10, .. })
        ));
        assert!(matches!(
            cross_validate_k(&train, &[1], 1, &cfg, 0),
            Err(Error::TooFewFolds(1))
        ));
        assert!(matches!(
            cross_validate_k(&train, &[1], 11, &cfg, 0),
            Err(Error::TooFewRows { n: 10, folds: 11 })
        ));
    }

    #[test]
    fn result_json_uses_stable_field_names() {
        let (train, eval, resp) = separator_dataset(10, 2);
        let result = forward_select(&train, &eval, Some(&resp), &external_cfg(1, Task::Classification))
            .unwrap();
        let json = serde_json::to_value(&result).unwrap();
        for key in ["selected_variables", "best_level", "best_loss", "predictions", "trace"] {
            assert!(json.get(key).is_some(), "missing key {key}");
        }
        assert!(json["trace"].get("evaluations").is_some());
        let level = &json["trace"]["levels"][0];
        for key in ["level", "candidates", "chosen_variable", "chosen_loss", "cumulative_set"] {
            assert!(level.get(key).is_some(), "missing level key {key}");
        }
        // Classification predictions serialize as a plain label array.
        assert!(json["predictions"].as_array().unwrap()[0].is_string());
        // Round trip.
        let back: SelectionResult = serde_json::from_value(json).unwrap();
        assert_eq!(back, result);
    }

    #[test]
    fn regression_selection_minimizes_mse() {
        // y depends on column 1 only; column 0 is noise.
        let mut rng = SplitMix64::new(5150);
        let mut rows = Vec::new();
        let mut targets = Vec::new();
        for _ in 0..40 {
            let noise = rng.next_f64() * 10.0;
            let signal = rng.next_f64() * 10.0;
            rows.push(vec![noise, signal]);
            targets.push(3.0 * signal);
        }
        let train = Dataset::new(
            Matrix::from_rows(rows.clone()).unwrap(),
            vec!["a".to_string(), "b".to_string()],
            Response::targets(targets.clone()),
        )
        .unwrap();
        let eval = Matrix::from_rows(rows[..10].to_vec()).unwrap();
        let resp = Response::targets(targets[..10].to_vec());
        let cfg = SelectionConfig {
            knn: KnnConfig::new(2, DistanceMetric::Euclidean, Task::Regression),
            mode: SelectionMode::ExternalTest,
            rng_seed: 0,
        };
        let result = forward_select(&train, &eval, Some(&resp), &cfg).unwrap();
        assert_eq!(result.trace.levels[0].chosen_variable, 1);
        let level1 = &result.trace.levels[0];
        let loss_of = |j: usize| level1.candidates.iter().find(|c| c.0 == j).unwrap().1;
        assert!(loss_of(1) < loss_of(0));
    }
}
