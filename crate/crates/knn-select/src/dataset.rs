//! Validated dataset container: a finite feature matrix with named columns
//! and a categorical or continuous response.

use crate::error::{Error, Result};
use crate::knn::Task;
use crate::matrix::Matrix;

/// Categorical labels, stored as integer codes into a class table.
///
/// Classes are coded `0..G-1` in order of first appearance, so the coding is
/// a pure function of the label sequence. Predictions are reported as the
/// original strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labels {
    classes: Vec<String>,
    codes: Vec<usize>,
}

impl Labels {
    pub fn from_values<S: AsRef<str>>(values: &[S]) -> Labels {
        let mut classes: Vec<String> = Vec::new();
        let mut codes = Vec::with_capacity(values.len());
        for value in values {
            let value = value.as_ref();
            let code = match classes.iter().position(|c| c == value) {
                Some(code) => code,
                None => {
                    classes.push(value.to_string());
                    classes.len() - 1
                }
            };
            codes.push(code);
        }
        Labels { classes, codes }
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    /// Number of distinct classes (G).
    pub fn n_classes(&self) -> usize {
        self.classes.len()
    }

    /// Class code of row `i`.
    pub fn code(&self, i: usize) -> usize {
        self.codes[i]
    }

    pub fn codes(&self) -> &[usize] {
        &self.codes
    }

    /// Class name for a code.
    pub fn class_name(&self, code: usize) -> &str {
        &self.classes[code]
    }

    pub fn class_names(&self) -> &[String] {
        &self.classes
    }

    /// Code of a label string under this table, if the class is known.
    pub fn code_of(&self, value: &str) -> Option<usize> {
        self.classes.iter().position(|c| c == value)
    }

    /// The original label strings, row by row.
    pub fn values(&self) -> Vec<String> {
        self.codes
            .iter()
            .map(|&c| self.classes[c].clone())
            .collect()
    }

    fn select(&self, indices: &[usize]) -> Result<Labels> {
        let mut values = Vec::with_capacity(indices.len());
        for &idx in indices {
            if idx >= self.codes.len() {
                return Err(Error::IndexOutOfRange {
                    index: idx,
                    len: self.codes.len(),
                });
            }
            values.push(self.classes[self.codes[idx]].as_str());
        }
        Ok(Labels::from_values(&values))
    }
}

/// Response attached to a dataset: class labels or real-valued targets.
#[derive(Debug, Clone, PartialEq)]
pub enum Response {
    Labels(Labels),
    Targets(Vec<f64>),
}

impl Response {
    /// Builds a categorical response from raw label strings.
    pub fn labels<S: AsRef<str>>(values: &[S]) -> Response {
        Response::Labels(Labels::from_values(values))
    }

    pub fn targets(values: Vec<f64>) -> Response {
        Response::Targets(values)
    }

    pub fn len(&self) -> usize {
        match self {
            Response::Labels(l) => l.len(),
            Response::Targets(t) => t.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The prediction task this response supports.
    pub fn task(&self) -> Task {
        match self {
            Response::Labels(_) => Task::Classification,
            Response::Targets(_) => Task::Regression,
        }
    }

    pub fn as_labels(&self) -> Option<&Labels> {
        match self {
            Response::Labels(l) => Some(l),
            Response::Targets(_) => None,
        }
    }

    pub fn as_targets(&self) -> Option<&[f64]> {
        match self {
            Response::Labels(_) => None,
            Response::Targets(t) => Some(t),
        }
    }

    pub fn select(&self, indices: &[usize]) -> Result<Response> {
        match self {
            Response::Labels(l) => Ok(Response::Labels(l.select(indices)?)),
            Response::Targets(t) => {
                let mut out = Vec::with_capacity(indices.len());
                for &idx in indices {
                    if idx >= t.len() {
                        return Err(Error::IndexOutOfRange {
                            index: idx,
                            len: t.len(),
                        });
                    }
                    out.push(t[idx]);
                }
                Ok(Response::Targets(out))
            }
        }
    }
}

/// An immutable n x p feature matrix with unique column names and a response
/// of matching length. Construction validates everything; a `Dataset` in hand
/// always satisfies its invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    features: Matrix,
    column_names: Vec<String>,
    response: Response,
}

impl Dataset {
    /// Validating constructor. Checks shape, finiteness, name uniqueness,
    /// and response length.
    pub fn new(features: Matrix, column_names: Vec<String>, response: Response) -> Result<Dataset> {
        if features.rows() == 0 || features.cols() == 0 {
            return Err(Error::EmptyData);
        }
        if column_names.len() != features.cols() {
            return Err(Error::DimensionMismatch {
                expected: features.cols(),
                actual: column_names.len(),
            });
        }
        for (i, name) in column_names.iter().enumerate() {
            if column_names[..i].contains(name) {
                return Err(Error::DuplicateColumnName(name.clone()));
            }
        }
        if response.len() != features.rows() {
            return Err(Error::DimensionMismatch {
                expected: features.rows(),
                actual: response.len(),
            });
        }
        if let Some((row, col)) = features.first_non_finite() {
            return Err(Error::NonFiniteValue { row, col });
        }
        if let Response::Targets(targets) = &response {
            if let Some(row) = targets.iter().position(|t| !t.is_finite()) {
                return Err(Error::NonFiniteValue { row, col: 0 });
            }
        }
        Ok(Dataset {
            features,
            column_names,
            response,
        })
    }

    /// Row count (n).
    pub fn n(&self) -> usize {
        self.features.rows()
    }

    /// Column count (p).
    pub fn p(&self) -> usize {
        self.features.cols()
    }

    pub fn features(&self) -> &Matrix {
        &self.features
    }

    pub fn column_names(&self) -> &[String] {
        &self.column_names
    }

    pub fn response(&self) -> &Response {
        &self.response
    }

    pub fn row(&self, i: usize) -> &[f64] {
        self.features.row(i)
    }

    /// Projection onto the given columns, in the given order. The response
    /// is unchanged.
    pub fn select_columns(&self, indices: &[usize]) -> Result<Dataset> {
        let features = self.features.select_columns(indices)?;
        let column_names = indices
            .iter()
            .map(|&idx| self.column_names[idx].clone())
            .collect();
        Ok(Dataset {
            features,
            column_names,
            response: self.response.clone(),
        })
    }

    /// Restriction to the given rows, in the given order. The response is
    /// restricted alongside; label codes are re-derived from the surviving
    /// rows' first-appearance order.
    pub fn select_rows(&self, indices: &[usize]) -> Result<Dataset> {
        if indices.is_empty() {
            return Err(Error::EmptyData);
        }
        let features = self.features.select_rows(indices)?;
        let response = self.response.select(indices)?;
        Ok(Dataset {
            features,
            column_names: self.column_names.clone(),
            response,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix_3x2() -> Matrix {
        Matrix::from_rows(vec![vec![1.0, 2.0], vec![3.0, 4.0], vec![5.0, 6.0]]).unwrap()
    }

    fn names(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn valid_dataset_with_two_classes() {
        let d = Dataset::new(
            matrix_3x2(),
            names(&["a", "b"]),
            Response::labels(&["a", "b", "a"]),
        )
        .unwrap();
        assert_eq!((d.n(), d.p()), (3, 2));
        assert_eq!(d.response().as_labels().unwrap().n_classes(), 2);
    }

    #[test]
    fn response_length_mismatch() {
        let err = Dataset::new(
            matrix_3x2(),
            names(&["a", "b"]),
            Response::labels(&["a", "b"]),
        )
        .unwrap_err();
        assert!(matches!(
            err,
            Error::DimensionMismatch {
                expected: 3,
                actual: 2
            }
        ));
    }

    #[test]
    fn nan_reported_with_coordinates() {
        let mut m = matrix_3x2();
        m.set(1, 0, f64::NAN);
        let err = Dataset::new(m, names(&["a", "b"]), Response::labels(&["a", "b", "a"]))
            .unwrap_err();
        assert!(matches!(err, Error::NonFiniteValue { row: 1, col: 0 }));
    }

    #[test]
    fn duplicate_column_names_rejected() {
        let err = Dataset::new(
            matrix_3x2(),
            names(&["a", "a"]),
            Response::labels(&["a", "b", "a"]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::DuplicateColumnName(_)));
    }

    #[test]
    fn empty_data_rejected() {
        let err = Dataset::new(Matrix::zeros(0, 2), names(&["a", "b"]), Response::targets(vec![]))
            .unwrap_err();
        assert!(matches!(err, Error::EmptyData));
    }

    #[test]
    fn non_finite_target_rejected() {
        let err = Dataset::new(
            matrix_3x2(),
            names(&["a", "b"]),
            Response::targets(vec![1.0, f64::NAN, 2.0]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::NonFiniteValue { row: 1, col: 0 }));
    }

    #[test]
    fn column_projection_keeps_order_and_response() {
        let d = Dataset::new(
            Matrix::from_rows(vec![vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0]]).unwrap(),
            names(&["a", "b", "c"]),
            Response::labels(&["x", "y"]),
        )
        .unwrap();
        let s = d.select_columns(&[2, 0]).unwrap();
        assert_eq!(s.column_names(), &["c".to_string(), "a".to_string()]);
        assert_eq!(s.row(0), &[3.0, 1.0]);
        assert_eq!(s.response(), d.response());
        assert!(matches!(
            d.select_columns(&[0, 0]),
            Err(Error::DuplicateIndex(0))
        ));
        assert!(matches!(
            d.select_columns(&[5]),
            Err(Error::IndexOutOfRange { index: 5, len: 3 })
        ));
    }

    #[test]
    fn label_codes_follow_first_appearance() {
        let labels = Labels::from_values(&["b", "a", "b", "c"]);
        assert_eq!(labels.n_classes(), 3);
        assert_eq!(labels.codes(), &[0, 1, 0, 2]);
        assert_eq!(labels.class_name(0), "b");
        assert_eq!(labels.code_of("c"), Some(2));
        assert_eq!(labels.code_of("zzz"), None);
        assert_eq!(labels.values(), vec!["b", "a", "b", "c"]);
    }

    #[test]
    fn row_selection_rebuilds_label_codes() {
        let d = Dataset::new(
            matrix_3x2(),
            names(&["a", "b"]),
            Response::labels(&["x", "y", "y"]),
        )
        .unwrap();
        let s = d.select_rows(&[2, 0]).unwrap();
        assert_eq!(s.n(), 2);
        assert_eq!(s.row(0), &[5.0, 6.0]);
        let labels = s.response().as_labels().unwrap();
        // "y" now appears first, so it takes code 0.
        assert_eq!(labels.codes(), &[0, 1]);
        assert_eq!(labels.class_name(0), "y");
    }
}
