//! Helpers shared by the subcommands.

use std::path::Path;

use anyhow::{bail, Result};
use clap::ValueEnum;

use knn_select::io::{read_dataset, read_table_path, CsvTable};
use knn_select::{Dataset, Error, Matrix, Predictions, Task};

/// `--task class|reg`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TaskArg {
    Class,
    Reg,
}

impl TaskArg {
    pub fn to_task(self) -> Task {
        match self {
            TaskArg::Class => Task::Classification,
            TaskArg::Reg => Task::Regression,
        }
    }
}

/// Loads the training dataset and the test table, and checks that the test
/// feature columns match the training columns by name and order.
pub fn load_train_test(
    train: &Path,
    test: &Path,
    response: &str,
    task: Task,
) -> Result<(Dataset, CsvTable)> {
    let train_data = read_dataset(train, response, task)?;
    let test_table = read_table_path(test, response, task)?;
    if test_table.feature_names != train_data.column_names() {
        bail!(Error::SchemaMismatch(format!(
            "test columns {:?} do not match training columns {:?}",
            test_table.feature_names,
            train_data.column_names()
        )));
    }
    Ok((train_data, test_table))
}

/// Per-column mean and standard deviation of a training matrix.
pub struct ZScore {
    means: Vec<f64>,
    sds: Vec<f64>,
}

impl ZScore {
    pub fn fit(train: &Matrix) -> ZScore {
        let n = train.rows().max(1) as f64;
        let p = train.cols();
        let mut means = vec![0.0; p];
        for row in train.iter_rows() {
            for (j, v) in row.iter().enumerate() {
                means[j] += v;
            }
        }
        for m in means.iter_mut() {
            *m /= n;
        }
        let mut sds = vec![0.0; p];
        for row in train.iter_rows() {
            for (j, v) in row.iter().enumerate() {
                let d = v - means[j];
                sds[j] += d * d;
            }
        }
        for s in sds.iter_mut() {
            *s = (*s / n).sqrt();
            // Constant columns map to zero rather than NaN.
            if *s == 0.0 {
                *s = 1.0;
            }
        }
        ZScore { means, sds }
    }

    pub fn apply(&self, m: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            for (j, v) in m.row(i).iter().enumerate() {
                out.set(i, j, (v - self.means[j]) / self.sds[j]);
            }
        }
        out
    }
}

/// Standardizes a dataset and companion feature matrix with the dataset's
/// own column statistics.
pub fn standardize(train: Dataset, test_features: Matrix) -> Result<(Dataset, Matrix)> {
    let scaler = ZScore::fit(train.features());
    let scaled_train = scaler.apply(train.features());
    let scaled_test = scaler.apply(&test_features);
    let train = Dataset::new(
        scaled_train,
        train.column_names().to_vec(),
        train.response().clone(),
    )?;
    Ok((train, scaled_test))
}

/// Writes predictions as a one-column CSV.
pub fn write_predictions(path: &Path, predictions: &Predictions) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)?;
    writer.write_record(["prediction"])?;
    match predictions {
        Predictions::Labels(labels) => {
            for label in labels {
                writer.write_record([label.as_str()])?;
            }
        }
        Predictions::Values(values) => {
            for value in values {
                writer.write_record([value.to_string().as_str()])?;
            }
        }
    }
    writer.flush()?;
    Ok(())
}
