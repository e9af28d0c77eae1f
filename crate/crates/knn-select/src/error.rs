//! Error type shared by every module in the crate.

use std::fmt;

use crate::knn::Task;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes of the library.
#[derive(Debug)]
pub enum Error {
    /// A matrix or response with zero rows or zero columns.
    EmptyData,
    /// Two lengths that must agree do not (e.g. response length vs. row count).
    DimensionMismatch { expected: usize, actual: usize },
    /// A feature value is NaN or infinite. Coordinates are 0-based.
    NonFiniteValue { row: usize, col: usize },
    /// The same column name appears twice in a header.
    DuplicateColumnName(String),
    /// A column or row index outside `0..len`.
    IndexOutOfRange { index: usize, len: usize },
    /// The same index was requested twice in a projection.
    DuplicateIndex(usize),
    /// Two vectors passed to a pairwise operation differ in length.
    LengthMismatch { left: usize, right: usize },
    /// Jaccard distance requires every coordinate to be exactly 0 or 1.
    NonBinaryInput { index: usize, value: f64 },
    /// Minkowski order must be a finite real >= 1.
    InvalidOrder(f64),
    /// Neighbor count outside `1..=n_train`.
    KTooLarge { k: usize, n_train: usize },
    /// Configured task does not match the response kind (or the operation).
    TaskMismatch { expected: Task, actual: Task },
    /// External-test selection was requested without evaluation labels.
    ResponseMissing,
    /// Evaluation columns do not line up with the training columns.
    SchemaMismatch(String),
    /// Fewer rows than cross-validation folds.
    TooFewRows { n: usize, folds: usize },
    /// Cross-validation needs at least two folds.
    TooFewFolds(usize),
    /// An operation over lists received an empty list.
    EmptyInput,
    /// A train/test split that would leave one side empty.
    DegenerateSplit { n: usize, train_fraction: f64 },
    /// Equicorrelation outside `[0, 1)`.
    InvalidCorrelation(f64),
    /// A simulation config that violates its own invariants.
    InvalidConfig(String),
    /// A CSV cell that failed to parse. `row` is the 1-based data row
    /// (the header is not counted); `column` is the column name.
    CsvParse {
        row: usize,
        column: String,
        message: String,
    },
    /// A structural CSV problem (missing response column, bad header).
    CsvSchema(String),
    /// Underlying I/O failure.
    Io(std::io::Error),
    /// Underlying CSV reader/writer failure (ragged rows, encoding).
    Csv(csv::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyData => write!(f, "data must have at least one row and one column"),
            Error::DimensionMismatch { expected, actual } => {
                write!(f, "dimension mismatch: expected {expected}, got {actual}")
            }
            Error::NonFiniteValue { row, col } => {
                write!(f, "non-finite value at row {row}, column {col}")
            }
            Error::DuplicateColumnName(name) => write!(f, "duplicate column name: {name:?}"),
            Error::IndexOutOfRange { index, len } => {
                write!(f, "index {index} out of range for length {len}")
            }
            Error::DuplicateIndex(index) => write!(f, "duplicate index: {index}"),
            Error::LengthMismatch { left, right } => {
                write!(f, "length mismatch: {left} vs {right}")
            }
            Error::NonBinaryInput { index, value } => {
                write!(
                    f,
                    "Jaccard distance requires binary vectors; coordinate {index} is {value}"
                )
            }
            Error::InvalidOrder(p) => {
                write!(f, "Minkowski order must be a finite real >= 1, got {p}")
            }
            Error::KTooLarge { k, n_train } => {
                write!(f, "k must satisfy 1 <= k <= {n_train} (training rows), got {k}")
            }
            Error::TaskMismatch { expected, actual } => {
                write!(f, "task mismatch: expected {expected:?}, got {actual:?}")
            }
            Error::ResponseMissing => {
                write!(f, "external-test selection requires an evaluation response")
            }
            Error::SchemaMismatch(msg) => write!(f, "schema mismatch: {msg}"),
            Error::TooFewRows { n, folds } => {
                write!(f, "{n} rows cannot be partitioned into {folds} folds")
            }
            Error::TooFewFolds(folds) => {
                write!(f, "cross-validation needs at least 2 folds, got {folds}")
            }
            Error::EmptyInput => write!(f, "input must be nonempty"),
            Error::DegenerateSplit { n, train_fraction } => {
                write!(
                    f,
                    "splitting {n} rows with train fraction {train_fraction} leaves a partition empty"
                )
            }
            Error::InvalidCorrelation(rho) => {
                write!(f, "equicorrelation must lie in [0, 1), got {rho}")
            }
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
            Error::CsvParse { row, column, message } => {
                write!(f, "CSV parse error at data row {row}, column {column:?}: {message}")
            }
            Error::CsvSchema(msg) => write!(f, "CSV schema error: {msg}"),
            Error::Io(e) => write!(f, "I/O error: {e}"),
            Error::Csv(e) => write!(f, "CSV error: {e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            Error::Csv(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Csv(e)
    }
}
