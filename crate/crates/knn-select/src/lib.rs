//! k-nearest-neighbor prediction with greedy forward variable selection.
//!
//! The library covers the full workflow: validated datasets ([`Dataset`]),
//! four distance metrics ([`DistanceMetric`]), exact kNN classification and
//! regression ([`knn`]), forward variable selection driven by held-out loss
//! ([`selection`]), loss functions and seeded splits ([`eval`]), and the
//! synthetic generators used to benchmark selection quality ([`simgen`]).
//!
//! Determinism is a design requirement, not an accident: all randomness is
//! seeded through one portable generator ([`rng::SplitMix64`]), every tie
//! breaks toward the smallest index, and identical inputs always produce
//! bit-identical results.

pub mod dataset;
pub mod distance;
pub mod error;
pub mod eval;
pub mod io;
pub mod knn;
pub mod matrix;
pub mod rng;
pub mod selection;
pub mod simgen;

pub use dataset::{Dataset, Labels, Response};
pub use distance::DistanceMetric;
pub use error::{Error, Result};
pub use eval::{accuracy, mse, replicate_stats, split, ReplicateStats, SplitPlan};
pub use knn::{
    class_probabilities, classify, find_neighbors, predict_batch, predict_regression, KnnConfig,
    NeighborSet, Predictions, Task, TieBreak,
};
pub use matrix::Matrix;
pub use selection::{
    cross_validate_k, cross_validate_losses, evaluation_count, forward_select, LevelRecord,
    SelectionConfig, SelectionMode, SelectionResult, SelectionTrace,
};
pub use simgen::{
    gen_classification, gen_regression, sample_mvn_equicorrelated, ClassifSimConfig,
    RegressSimConfig, SimMetadata, REGRESSION_P,
};
