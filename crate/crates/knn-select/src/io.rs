//! CSV ingestion and emission.
//!
//! Contract: comma-separated UTF-8 with a header row and `.` as the decimal
//! point. One column is designated the response by name; every other column
//! is parsed as a decimal real. Parse failures report the 1-based data row
//! (the header is not counted) and the column name.

use std::io::{Read, Write};
use std::path::Path;

use crate::dataset::{Dataset, Response};
use crate::error::{Error, Result};
use crate::knn::Task;
use crate::matrix::Matrix;

/// Parsed CSV contents: features plus the response column when present.
#[derive(Debug, Clone)]
pub struct CsvTable {
    pub feature_names: Vec<String>,
    pub features: Matrix,
    /// `None` when the file has no column with the designated response name.
    pub response: Option<Response>,
}

impl CsvTable {
    /// Converts into a validated dataset; fails if the response is missing.
    pub fn into_dataset(self) -> Result<Dataset> {
        let response = self.response.ok_or(Error::ResponseMissing)?;
        Dataset::new(self.features, self.feature_names, response)
    }
}

fn parse_real(cell: &str, row: usize, column: &str) -> Result<f64> {
    let value: f64 = cell.trim().parse().map_err(|_| Error::CsvParse {
        row,
        column: column.to_string(),
        message: format!("cannot parse {cell:?} as a real number"),
    })?;
    if !value.is_finite() {
        return Err(Error::CsvParse {
            row,
            column: column.to_string(),
            message: format!("non-finite value {cell:?}"),
        });
    }
    Ok(value)
}

/// Reads a CSV table, splitting off `response_column` if it exists. The
/// response is parsed as labels or reals according to `task`.
pub fn read_table<R: Read>(reader: R, response_column: &str, task: Task) -> Result<CsvTable> {
    let mut csv_reader = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let headers: Vec<String> = csv_reader.headers()?.iter().map(str::to_string).collect();
    if headers.is_empty() || (headers.len() == 1 && headers[0].is_empty()) {
        return Err(Error::CsvSchema("missing header row".to_string()));
    }
    for (i, name) in headers.iter().enumerate() {
        if headers[..i].contains(name) {
            return Err(Error::DuplicateColumnName(name.clone()));
        }
    }
    let response_pos = headers.iter().position(|h| h == response_column);
    let feature_names: Vec<String> = headers
        .iter()
        .enumerate()
        .filter(|&(i, _)| Some(i) != response_pos)
        .map(|(_, h)| h.clone())
        .collect();
    if feature_names.is_empty() {
        return Err(Error::CsvSchema(
            "no feature columns besides the response".to_string(),
        ));
    }

    let mut values: Vec<f64> = Vec::new();
    let mut raw_response: Vec<String> = Vec::new();
    let mut rows = 0usize;
    for record in csv_reader.records() {
        let record = record?;
        rows += 1;
        if record.len() != headers.len() {
            return Err(Error::CsvSchema(format!(
                "data row {rows} has {} fields, header has {}",
                record.len(),
                headers.len()
            )));
        }
        for (i, cell) in record.iter().enumerate() {
            if Some(i) == response_pos {
                raw_response.push(cell.to_string());
            } else {
                values.push(parse_real(cell, rows, &headers[i])?);
            }
        }
    }
    let features = Matrix::from_vec(values, rows, feature_names.len())?;
    let response = match response_pos {
        None => None,
        Some(pos) => Some(match task {
            Task::Classification => Response::labels(&raw_response),
            Task::Regression => {
                let mut targets = Vec::with_capacity(raw_response.len());
                for (i, cell) in raw_response.iter().enumerate() {
                    targets.push(parse_real(cell, i + 1, &headers[pos])?);
                }
                Response::Targets(targets)
            }
        }),
    };
    Ok(CsvTable {
        feature_names,
        features,
        response,
    })
}

/// [`read_table`] from a file path.
pub fn read_table_path(path: &Path, response_column: &str, task: Task) -> Result<CsvTable> {
    let file = std::fs::File::open(path)?;
    read_table(std::io::BufReader::new(file), response_column, task)
}

/// Reads a CSV file that must contain the response column, and validates it
/// into a dataset.
pub fn read_dataset(path: &Path, response_column: &str, task: Task) -> Result<Dataset> {
    let table = read_table_path(path, response_column, task)?;
    if table.response.is_none() {
        return Err(Error::CsvSchema(format!(
            "response column {response_column:?} not found"
        )));
    }
    table.into_dataset()
}

/// Writes a dataset as CSV: feature columns first, response last under
/// `response_name`.
pub fn write_dataset<W: Write>(writer: W, dataset: &Dataset, response_name: &str) -> Result<()> {
    let mut csv_writer = csv::Writer::from_writer(writer);
    let mut header: Vec<String> = dataset.column_names().to_vec();
    header.push(response_name.to_string());
    csv_writer.write_record(&header)?;
    let labels = dataset.response().as_labels().map(|l| l.values());
    for i in 0..dataset.n() {
        let mut record: Vec<String> = dataset.row(i).iter().map(|v| v.to_string()).collect();
        match (&labels, dataset.response()) {
            (Some(values), _) => record.push(values[i].clone()),
            (None, Response::Targets(t)) => record.push(t[i].to_string()),
            (None, Response::Labels(_)) => unreachable!(),
        }
        csv_writer.write_record(&record)?;
    }
    csv_writer.flush()?;
    Ok(())
}

/// [`write_dataset`] to a file path.
pub fn write_dataset_path(path: &Path, dataset: &Dataset, response_name: &str) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_dataset(std::io::BufWriter::new(file), dataset, response_name)
}
