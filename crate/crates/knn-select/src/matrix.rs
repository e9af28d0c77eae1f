//! Dense row-major matrix of `f64`.

use crate::error::{Error, Result};

/// Row-major storage; rows are contiguous slices.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    data: Vec<f64>,
    rows: usize,
    cols: usize,
}

impl Matrix {
    /// Builds a matrix from a flat row-major buffer.
    pub fn from_vec(data: Vec<f64>, rows: usize, cols: usize) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                actual: data.len(),
            });
        }
        Ok(Matrix { data, rows, cols })
    }

    /// Builds a matrix from row vectors, which must all have equal length.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Matrix> {
        let n = rows.len();
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(n * cols);
        for row in &rows {
            if row.len() != cols {
                return Err(Error::LengthMismatch {
                    left: cols,
                    right: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Matrix { data, rows: n, cols })
    }

    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            data: vec![0.0; rows * cols],
            rows,
            cols,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: f64) {
        self.data[row * self.cols + col] = value;
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.cols.max(1)).take(self.rows)
    }

    /// Coordinates of the first non-finite entry, if any.
    pub fn first_non_finite(&self) -> Option<(usize, usize)> {
        for (i, row) in self.iter_rows().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// New matrix holding the given columns in the given order.
    /// Indices must be in range and pairwise distinct.
    pub fn select_columns(&self, indices: &[usize]) -> Result<Matrix> {
        let mut seen = vec![false; self.cols];
        for &idx in indices {
            if idx >= self.cols {
                return Err(Error::IndexOutOfRange {
                    index: idx,
                    len: self.cols,
                });
            }
            if seen[idx] {
                return Err(Error::DuplicateIndex(idx));
            }
            seen[idx] = true;
        }
        let mut data = Vec::with_capacity(self.rows * indices.len());
        for row in self.iter_rows() {
            data.extend(indices.iter().map(|&idx| row[idx]));
        }
        Ok(Matrix {
            data,
            rows: self.rows,
            cols: indices.len(),
        })
    }

    /// New matrix holding the given rows in the given order. Repeats are
    /// allowed; indices must be in range.
    pub fn select_rows(&self, indices: &[usize]) -> Result<Matrix> {
        let mut data = Vec::with_capacity(indices.len() * self.cols);
        for &idx in indices {
            if idx >= self.rows {
                return Err(Error::IndexOutOfRange {
                    index: idx,
                    len: self.rows,
                });
            }
            data.extend_from_slice(self.row(idx));
        }
        Ok(Matrix {
            data,
            rows: indices.len(),
            cols: self.cols,
        })
    }
}
